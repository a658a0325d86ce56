#ifndef CARAEQ_VERSION_HPP
#define CARAEQ_VERSION_HPP

namespace caraeq {

inline constexpr const char* kToolName = "caraeq";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace caraeq

#endif
