#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "rsched/errors.hpp"
#include "rsched/harness.hpp"
#include "rsched/io.hpp"

using namespace rsched;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RSCHED_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

FuzzConfig small(std::string policy, bool unit) {
  FuzzConfig c;
  c.count = 2000;
  c.n_max = 6;
  c.unit = unit;
  c.policy = std::move(policy);
  c.seed = 7;
  return c;
}

} // namespace

TEST_CASE("fuzz with single-job instances is exact") {
  FuzzConfig c = small("llw", false);
  c.n_max = 1;
  const FuzzReport rep = fuzz(c);
  CHECK(rep.max_ratio == 1.0);
  CHECK(rep.violations == 0);
  CHECK(rep.count == c.count);
}

TEST_CASE("fuzz is deterministic across thread counts") {
  FuzzConfig c = small("lw", true);
  c.keep_samples = true;
  c.threads = 1;
  const FuzzReport a = fuzz(c);
  c.threads = 4;
  const FuzzReport b = fuzz(c);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmax_index == b.argmax_index);
  CHECK(a.argmax_instance == b.argmax_instance);
  CHECK(a.violations == b.violations);
  CHECK(a.histogram == b.histogram);
  CHECK(fuzz_csv(a) == fuzz_csv(b));
  REQUIRE(a.violating.size() == b.violating.size());
  for (std::size_t i = 0; i < a.violating.size(); ++i)
    CHECK(a.violating[i].index == b.violating[i].index);

  // Replaying a stored seed reproduces the instance.
  CHECK(fuzz_instance(c, instance_seed(c.seed, a.argmax_index)) == a.argmax_instance);
}

TEST_CASE("LLW stays within R on unit instances") {
  const FuzzReport rep = fuzz(small("llw", true));
  CHECK(rep.violations == 0);
  CHECK(rep.invalid_traces == 0);
  CHECK(rep.max_ratio >= 1.0);
  CHECK(rep.max_ratio <= ratio_constant(RatioKind::R).value + 1e-9);
}

TEST_CASE("LW without interruptions exceeds R on general sizes") {
  const FuzzReport rep = fuzz(small("lw-nointr", false));
  CHECK(rep.max_ratio > ratio_constant(RatioKind::R).value);
  CHECK(rep.violations > 0);
  CHECK_FALSE(rep.violating.empty());
  CHECK(rep.invalid_traces == 0);
}

TEST_CASE("fuzz config validation") {
  FuzzConfig c = small("llw", true);
  c.count = 0;
  CHECK_THROWS_AS(fuzz(c), ConfigError);
  c = small("llw", true);
  c.n_max = 9;
  CHECK_THROWS_AS(fuzz(c), ConfigError);
  c = small("llw", true);
  c.weight_lo = 5;
  c.weight_hi = 1;
  CHECK_THROWS_AS(fuzz(c), ConfigError);
  c = small("llw", true);
  c.release_lo = -1;
  CHECK_THROWS_AS(fuzz(c), ConfigError);
  c = small("fifo", true);
  CHECK_THROWS_AS(fuzz(c), UnknownPolicy);
}

TEST_CASE("fuzz CSV layout") {
  FuzzConfig c = small("llw", true);
  c.count = 3;
  c.keep_samples = true;
  const std::string csv = fuzz_csv(fuzz(c));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "seed,n,alg_value,opt_value,ratio");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 3);
}

TEST_CASE("adversary_report") {
  const double r1 = ratio_constant(RatioKind::R1).value;
  const double r2 = ratio_constant(RatioKind::R2).value;
  const AdversaryRecord g = adversary_report("llw", "general");
  CHECK(std::abs(g.ratio - r1) <= 1e-6);
  CHECK(g.passed());
  const AdversaryRecord u = adversary_report("llw", "unit");
  CHECK(std::abs(u.ratio - r2) <= 1e-6);
  CHECK(u.passed());
  const AdversaryRecord n = adversary_report("lw-nointr", "general");
  CHECK(n.ratio >= r1 - 1e-6);
  const AdversaryRecord f = adversary_report("llw", "fig1");
  CHECK_FALSE(f.target.has_value());
  CHECK(std::abs(f.alg - 5.52) <= 1e-9);
  CHECK_THROWS_AS(adversary_report("llw", "random"), UnknownFamily);
  CHECK_THROWS_AS(adversary_report("edf", "unit"), UnknownPolicy);
}

TEST_CASE("verify_constants") {
  const ConstantsReport ok = verify_constants(1e-12);
  CHECK(ok.all_pass());
  CHECK(ok.constants.size() == 3);
  CHECK(std::abs(ok.threshold - 2.2279) < 5e-4);

  const ConstantsReport zero = verify_constants(0.0);
  for (const ConstantCheck& c : zero.constants)
    CHECK_FALSE(c.pass);
  CHECK_FALSE(zero.all_pass());
}

TEST_CASE("CLI exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "rsched_cli_test";
  std::filesystem::create_directories(dir);
  const auto inst = (dir / "inst.json").string();
  const auto trace = (dir / "trace.json").string();
  {
    std::ofstream(inst) << R"({"jobs":[{"r":0,"p":1,"w":1},{"r":0.2,"p":1,"w":1.1},)"
                        << R"({"r":0.7,"p":1,"w":1.6},{"r":1.4,"p":1,"w":2.3}]})";
    std::ofstream(dir / "bad.json") << R"({"jobs":[{"r":0}]})";
  }
  CHECK(run_cli("verify-constants --tol 1e-12") == 0);
  CHECK(run_cli("verify-constants --tol 0") == 1);
  CHECK(run_cli("simulate --alg llw --instance " + inst + " --trace " + trace) == 0);
  CHECK(std::abs(io::read_trace(trace).wc_max - 5.52) <= 1e-9);
  CHECK(run_cli("opt --instance " + inst) == 0);
  CHECK(run_cli("opt --instance " + inst + " --node-limit 5") == 0);
  CHECK(run_cli("adversary --alg llw --family general") == 0);
  CHECK(run_cli("adversary --alg lw --family unit") == 0);
  CHECK(run_cli("tightness --eps 1e-4 --weight 1e5") == 0);
  CHECK(run_cli("fuzz --alg llw --count 200 --n-max 8 --unit --seed 42 --csv " +
                (dir / "f.csv").string()) == 0);
  CHECK(std::filesystem::exists(dir / "f.csv"));
  CHECK(run_cli("fuzz --alg lw-nointr --count 500 --n-max 6 --dump-dir " +
                (dir / "dump").string()) == 1);
  CHECK(!std::filesystem::is_empty(dir / "dump"));
  CHECK(run_cli("simulate --alg llw --instance " + (dir / "bad.json").string()) == 2);
  CHECK(run_cli("simulate --alg nope --instance " + inst) == 2);
  CHECK(run_cli("fuzz --alg llw --count 10 --n-max 12") == 2);
  CHECK(run_cli("adversary --alg llw --family weird") == 2);
  CHECK(run_cli("frobnicate") == 2);
  std::filesystem::remove_all(dir);
}
