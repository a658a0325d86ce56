#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd =
      std::string(CARAEQ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    r.out.append(buf, got);
  }
  const int status = ::pclose(pipe);
  r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("caraeq_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string& default_config() {
  static const std::string path = [] {
    const RunResult r = run("--quote-defaults");
    REQUIRE(r.code == 0);
    return write_file("default.json", r.out);
  }();
  return path;
}

const std::string& lean_config() {
  static const std::string path = write_file(
      "lean.json",
      R"({"N":10,"m":1,"F":1,"alpha":0.5,"kappa":1,"k":1,"w":1,"g":0,"tau":0.2,"Lg":0})");
  return path;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("--version prints the tool version") {
  const RunResult r = run("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("default config is self-describing and solvable") {
  const json cfg = json::parse(read_file(default_config()));
  for (const char* key :
       {"N", "m", "F", "alpha", "kappa", "k", "w", "g", "tau", "Lg"}) {
    CHECK(cfg.contains(key));
  }
  CHECK(cfg.at("N") == 10.0);

  const RunResult r = run("solve " + default_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(close(out.at("equilibrium").at("L"), 46.0, 1e-12));
  CHECK(close(out.at("equilibrium").at("p"), 184.0 / 175.0, 1e-12));
  CHECK(out.at("propositions").at("all_ok") == true);
  CHECK(close(out.at("profit_threshold"), -357.5 / 46.0, 1e-12));
}

TEST_CASE("negative profit is reported, not rejected") {
  const RunResult r = run("solve " + lean_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(double(out.at("equilibrium").at("Pi")) < 0.0);
  CHECK(out.at("equilibrium").at("flags").at("profit_nonnegative") == false);
  CHECK(out.at("propositions").at("fixed_cost_within_bound") == false);
  CHECK(out.at("propositions").at("bound_implies_profit") == true);
  CHECK(out.at("propositions").at("all_ok") == true);
}

TEST_CASE("usage and input errors exit with code 1") {
  CHECK(run("solve " + (work_dir() / "no_such.json").string()).code == 1);
  CHECK(run("solve " + write_file("broken.json", "{oops")).code == 1);
  CHECK(run("solve " + write_file("extra.json",
                                  R"({"N":10,"m":1,"F":1,"alpha":0.5,"kappa":1,
                                      "k":1,"w":1,"g":0,"tau":0.2,"Lg":0,
                                      "zeta":3})"))
            .code == 1);
  CHECK(run("solve " + write_file("short.json", R"({"N":10})")).code == 1);
  CHECK(run("oracle --n 1 " + default_config()).code == 1);
  CHECK(run("verify --sample 0").code == 1);
  CHECK(run("verify").code == 1);
  CHECK(run("sweep " + default_config() +
            " --axis g --grid 1,foo --out " +
            (work_dir() / "x.csv").string())
            .code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("inadmissible scenarios exit with code 2") {
  const std::string bad = write_file(
      "bad.json",
      R"({"N":2,"m":1,"F":1,"alpha":5,"kappa":1,"k":1,"w":1,"g":0,"tau":0.2,"Lg":0})");
  CHECK(run("solve " + bad).code == 2);
  CHECK(run("partials " + bad).code == 2);
  CHECK(run("compare --target-L 1 " + default_config()).code == 2);
}

TEST_CASE("partials reports both routes and their agreement") {
  const RunResult r = run("partials --method both " + default_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(close(out.at("analytic").at("dL_dg"), 125.0 / 3.0, 1e-12));
  CHECK(out.at("analytic").at("method") == "analytic");
  CHECK(out.at("finite_difference").at("method") == "finite_difference");
  CHECK(out.at("finite_difference").at("stencils").at("g") == "central");
  CHECK(out.at("finite_difference").at("stencils").at("tau") == "central");
  CHECK(out.at("finite_difference").at("stencils").at("Lg") == "forward");
  CHECK(double(out.at("max_discrepancy")) <= 1e-6);
  CHECK(out.at("agree") == true);

  const RunResult ra = run("partials --method analytic " + default_config());
  REQUIRE(ra.code == 0);
  const json ja = json::parse(ra.out);
  CHECK(!ja.contains("finite_difference"));
  CHECK(ja.at("jacobian").at("method") == "analytic");
}

TEST_CASE("verify certifies a single scenario") {
  const RunResult r = run("verify " + default_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("report").at("all_pass") == true);
  CHECK(out.at("report").at("claims").size() == 13);
}

TEST_CASE("verify certifies a sampled batch with the flip probe") {
  const RunResult r = run("verify --sample 25 --seed 7");
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("all_pass") == true);
  CHECK(out.at("scenarios") == 25);
  CHECK(out.at("equality_checks") == 50);
  CHECK(out.at("claim_failures") == 0);
  CHECK(out.at("threshold_flip").at("pass") == true);
  CHECK(double(out.at("threshold_flip").at("Lambda_at_star")) > 0.0);
}

TEST_CASE("oracle confirms the closed form and respects its budget") {
  const RunResult r = run("oracle --n 64 --seed 5 " + default_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("match") == true);
  CHECK(out.at("oracle").at("converged") == true);
  CHECK(out.at("oracle").at("local_profit_max") == true);
  CHECK(double(out.at("oracle").at("symmetry_gap")) < 1e-8);
  CHECK(double(out.at("deltas").at("p")) <= 1e-8);
  CHECK(double(out.at("deltas").at("L")) <= 1e-8);

  CHECK(run("oracle --max-iter 2 " + default_config()).code == 5);
}

TEST_CASE("sweep writes a csv and a manifest and counts bad rows") {
  const std::string csv_path = (work_dir() / "g_sweep.csv").string();
  const RunResult r = run("sweep " + default_config() +
                          " --axis g --grid 0,0.5,1,-1 --out " + csv_path);
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("rows") == 4);
  CHECK(out.at("ok") == 3);
  CHECK(out.at("csv") == csv_path);

  const std::string csv = read_file(csv_path);
  CHECK(csv.find("g,status,p,q,L,Pi,welfare") == 0);
  CHECK(csv.find("inadmissible") != std::string::npos);

  const json manifest = json::parse(read_file(csv_path + ".manifest.json"));
  CHECK(manifest.at("tool") == "caraeq");
  CHECK(manifest.at("kind") == "sweep");
  CHECK(manifest.at("rows").size() == 4);
  CHECK(std::string(manifest.at("rows")[3].at("status"))
            .find("inadmissible") != std::string::npos);
}

TEST_CASE("compare reports doses and footprints for both instruments") {
  const RunResult r = run("compare --target-L 46 " + default_config());
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(close(out.at("baseline_L"), 13.0 / 3.0, 1e-12));
  CHECK(close(out.at("purchases").at("dose_g"), 1.0, 1e-12));
  CHECK(close(out.at("public_employment").at("dose_Lg"), 12.5, 1e-12));
  CHECK(double(out.at("price_gap")) > 0.0);
  CHECK(double(out.at("quantity_gap")) > 0.0);
}

TEST_CASE("identical invocations produce identical bytes") {
  const RunResult v1 = run("verify --sample 10 --seed 3");
  const RunResult v2 = run("verify --sample 10 --seed 3");
  CHECK(v1.code == 0);
  CHECK(v1.out == v2.out);

  const RunResult o1 = run("oracle --n 16 --seed 9 " + default_config());
  const RunResult o2 = run("oracle --n 16 --seed 9 " + default_config());
  CHECK(o1.code == 0);
  CHECK(o1.out == o2.out);

  const std::string p1 = (work_dir() / "det1.csv").string();
  const std::string p2 = (work_dir() / "det2.csv").string();
  const std::string sweep_args =
      " --axis tau --grid 0.1,0.2,0.3 --outputs L --outputs jacobian --out ";
  CHECK(run("sweep " + default_config() + sweep_args + p1).code == 0);
  CHECK(run("sweep " + default_config() + sweep_args + p2).code == 0);
  CHECK(read_file(p1) == read_file(p2));
  CHECK(read_file(p1 + ".manifest.json") == read_file(p2 + ".manifest.json"));
}

TEST_SUITE_END();
