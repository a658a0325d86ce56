#ifndef CARAEQ_ERRORS_HPP
#define CARAEQ_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace caraeq {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A scenario violates one or more admissibility constraints.
class InadmissibleParameters : public Error {
 public:
  InadmissibleParameters(std::string what, std::vector<std::string> violations)
      : Error(std::move(what)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A closed-form expression was evaluated at a point where its denominator vanishes.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagree beyond tolerance.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Demand assigned a non-positive quantity to some variety.
class NonInteriorDemand : public Error {
 public:
  NonInteriorDemand(std::string what, std::size_t variety,
                    std::vector<double> quantities, int iteration = -1)
      : Error(std::move(what)),
        variety_(variety),
        quantities_(std::move(quantities)),
        iteration_(iteration) {}
  std::size_t variety() const { return variety_; }
  const std::vector<double>& quantities() const { return quantities_; }
  int iteration() const { return iteration_; }

 private:
  std::size_t variety_;
  std::vector<double> quantities_;
  int iteration_;
};

/// The best-response objective does not change sign over the search bracket.
class RootNotBracketed : public Error {
 public:
  using Error::Error;
};

/// The fixed-point iteration exhausted its budget before meeting tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(std::string what, int iterations, double last_price_step,
                double last_L_step)
      : Error(std::move(what)),
        iterations_(iterations),
        last_price_step_(last_price_step),
        last_L_step_(last_L_step) {}
  int iterations() const { return iterations_; }
  double last_price_step() const { return last_price_step_; }
  double last_L_step() const { return last_L_step_; }

 private:
  int iterations_;
  double last_price_step_;
  double last_L_step_;
};

/// A finite-difference probe could not find an admissible stencil.
class PerturbationInadmissible : public Error {
 public:
  using Error::Error;
};

/// A sweep was requested over an empty grid.
class EmptyGrid : public Error {
 public:
  using Error::Error;
};

/// The requested employment target lies below the zero-policy baseline.
class TargetBelowBaseline : public Error {
 public:
  using Error::Error;
};

/// A computed policy dose failed admissibility re-validation.
class InadmissibleDose : public Error {
 public:
  using Error::Error;
};

}  // namespace caraeq

#endif
