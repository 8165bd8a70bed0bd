#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kantorovich/config.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/experiment.hpp"

using namespace kantorovich;

namespace {

const char* kBase = R"(
[kernel]
name = bspline(2)

[signal]
name = hat(0,1)

[experiment]
p = 2
w = 5, 10, 20, 40
)";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parsing") {
  const ExperimentConfig c = parse_config_text(kBase);
  CHECK(c.kernel == "bspline(2)");
  CHECK(c.p == 2.0);
  CHECK(c.w == std::vector<double>{5, 10, 20, 40});
  CHECK(c.nonlin == "identity");
  CHECK(parse_config_text("[experiment]\nw = [4, 8, 16, 32]  # bracketed\n").w.size() == 4);
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_WITH_AS(parse_config_text("[kernel]\nnmae = fejer\n"), doctest::Contains("unknown key 'kernel.nmae'"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_config_text("[kernels]\n"), doctest::Contains("unknown section"), Error);
  CHECK_THROWS_WITH_AS(parse_config_text("[kernel]\nname = fejer\nname = fejer\n"), doctest::Contains("duplicate key"),
                       Error);
  CHECK_THROWS_AS(parse_config_text("name = fejer\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[kernel]\nname =\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[experiment]\nw = 5, 10, 20\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[experiment]\nw = 5, 10, 10, 20\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[experiment]\ngrid = 100\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[experiment]\np = 0.5\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[experiment]\nw = 5, x, 20, 40\n"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/run.conf"), Error);
}

TEST_CASE("hash depends on the resolved configuration only") {
  const ExperimentConfig a = parse_config_text(kBase);
  const ExperimentConfig b = parse_config_text(
      "# same run, other layout\n[experiment]\nw = [5,10,20,40]\np = 2.0\n[signal]\nname = hat(0,1)\n");
  CHECK(canonical_config(a) == canonical_config(b));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  const ExperimentConfig c = parse_config_text("[experiment]\np = 3\n");
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = std::filesystem::temp_directory_path() / "kantorovich_atomic";
  std::filesystem::create_directories(dir);
  const auto target = dir / "out.csv";
  write_atomic(target.string(), "first\n");
  write_atomic(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  write_atomic((dir / "nested" / "x.csv").string(), "x");
  CHECK(slurp(dir / "nested" / "x.csv") == "x");
}

TEST_CASE("reports are deterministic across thread counts") {
  const ExperimentConfig c = parse_config_text(kBase);
  const ExperimentReport one = run_convergence(c, 1);
  const ExperimentReport four = run_convergence(c, 4);
  CHECK(one.to_csv() == four.to_csv());
  CHECK(one.to_json() == four.to_json());
  CHECK(one.config_hash == config_hash(c));
  CHECK(one.to_csv().rfind("w,error,bound,holds,slack,omega_small,omega_large,tail_term,third_term\n", 0) == 0);
}
