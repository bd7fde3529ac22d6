#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ndirac/app.hpp"

using namespace ndirac;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ndirac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ndirac_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("ndirac_cfg_" + name + ".json");
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("constants subcommand") {
  const fs::path dir = scratch("constants");
  const Run r = run({"--output-dir", dir.string(), "constants", "--n", "4"});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "constants_n4.csv");
  CHECK(csv.find("schema_version") != std::string::npos);
  CHECK(csv.find("config_hash") != std::string::npos);
  // rows carry schema_version, config_hash and seed before the name
  const auto pos = csv.find(",d_n,");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(csv.substr(pos + 5)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fs::exists(dir / "checks_constants_n4.csv"));
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("bubble verification exits cleanly") {
  const fs::path dir = scratch("bubble");
  const Run r = run({"--output-dir", dir.string(), "bubble-verify", "--n", "4", "--samples", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(fs::exists(dir / "checks_bubble_n4.csv"));
}

TEST_CASE("curvature check exits cleanly") {
  const fs::path dir = scratch("curvature");
  const Run r = run({"--output-dir", dir.string(), "curvature-check", "--n", "5", "--samples", "10"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "checks_curvature_n5.csv"));
}

TEST_CASE("outputs are byte-identical across runs with the same seed") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& d : {a, b}) {
    REQUIRE(run({"--output-dir", d.string(), "--seed", "7", "bubble-verify", "--n", "5", "--samples", "20"}).code == 0);
    REQUIRE(run({"--output-dir", d.string(), "constants", "--n", "6"}).code == 0);
  }
  for (const char* f : {"checks_bubble_n5.csv", "constants_n6.csv", "checks_constants_n6.csv"})
    CHECK(slurp(a / f) == slurp(b / f));
  // a different seed changes the hash line
  const fs::path c = scratch("det_c");
  REQUIRE(run({"--output-dir", c.string(), "--seed", "8", "bubble-verify", "--n", "5", "--samples", "20"}).code == 0);
  CHECK(slurp(a / "checks_bubble_n5.csv") != slurp(c / "checks_bubble_n5.csv"));
}

TEST_CASE("configuration errors") {
  SUBCASE("spin structure must be explicit") {
    const fs::path cfg = write_config("nospin", R"({"geometry": {"n": 4, "modes_per_axis": 5}})");
    const Run r = run({"--config", cfg.string(), "constants"});
    CHECK(r.code == 2);
    CHECK(r.err.find("geometry.spin_shift") != std::string::npos);
  }
  SUBCASE("unknown keys are rejected") {
    const fs::path cfg = write_config(
        "unknown", R"({"geometry": {"n": 4, "spin_shift": [0.5, 0, 0, 0]}, "kernel": {"muu": 3}})");
    const Run r = run({"--config", cfg.string(), "constants"});
    CHECK(r.code == 2);
    CHECK(r.err.find("kernel.muu") != std::string::npos);
  }
  SUBCASE("out-of-range values") {
    CHECK(run({"constants", "--n", "3"}).code == 2);
    CHECK(run({"graft-sweep", "--n", "4", "--eps-list", "0.1,2.0"}).code == 2);
  }
  SUBCASE("command line errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"constants", "--n", "four"}).code == 2);
  }
  SUBCASE("help") { CHECK(run({"--help"}).code == 0); }
}

TEST_CASE("a valid config file round-trips") {
  const fs::path dir = scratch("cfgfile");
  const fs::path cfg = write_config("valid", R"({
    "geometry": {"n": 4, "modes_per_axis": 5, "spin_shift": [0.5, 0, 0, 0]},
    "kernel": {"kind": "periodized_riesz", "mu": 20},
    "seed": 3
  })");
  const Run r = run({"--config", cfg.string(), "--output-dir", dir.string(), "constants"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "constants_n4.csv"));
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = NDIRAC_CLI_PATH;
  const fs::path dir = scratch("binary");
  const std::string ok = bin + " --output-dir " + dir.string() + " constants --n 4 > /dev/null";
  CHECK(std::system(ok.c_str()) == 0);
  const std::string bad = bin + " constants --n 11 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
