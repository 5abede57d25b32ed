#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rsched/engine.hpp"
#include "rsched/errors.hpp"
#include "rsched/offline.hpp"
#include "rsched/policies.hpp"

using namespace rsched;

namespace {

Instance general_case2() {
  const double r1 = oracle::ratio_r1();
  const double big = 1.0 / (r1 - 1.0);
  return Instance({{1, 0, 1, 1},
                   {2, 1.0 / (r1 * (r1 - 1.0)) - 1.0, 0, big},
                   {3, 1, 0, big},
                   {4, 1, big - 1.0, 1}});
}

Instance unit_case2(bool with_job4) {
  const double r2c = oracle::ratio_r2();
  std::vector<Job> jobs{{1, 0, 1, 1},
                        {2, 3.0 / r2c - 2.0, 1, 4.0 / 3.0},
                        {3, 6.0 / (r2c * r2c) - 3.0, 1, 2}};
  if (with_job4)
    jobs.push_back({4, 3, 1, 1});
  return Instance(jobs);
}

} // namespace

TEST_CASE("eval_order") {
  const std::vector<JobId> one{1};
  CHECK(eval_order(Instance({{1, 0, 1, 1}}), one) == 1.0);

  const double r1 = oracle::ratio_r1();
  const std::vector<JobId> order{1, 2, 3, 4};
  CHECK(std::abs(eval_order(general_case2(), order) - 1.0 / (r1 - 1.0)) <= 1e-9);

  const std::vector<JobId> unit_order{1, 3, 2, 4};
  CHECK(std::abs(eval_order(unit_case2(true), unit_order) - 4.0) <= 1e-12);
}

TEST_CASE("eval_order rejects non-permutations") {
  const Instance inst({{1, 0, 1, 1}, {2, 0, 1, 1}});
  CHECK_THROWS_AS(eval_order(inst, std::vector<JobId>{1}), NotAPermutation);
  CHECK_THROWS_AS(eval_order(inst, std::vector<JobId>{1, 1}), NotAPermutation);
  CHECK_THROWS_AS(eval_order(inst, std::vector<JobId>{1, 3}), NotAPermutation);
}

TEST_CASE("optimal_wc_max on the lower-bound instances") {
  const double r1 = oracle::ratio_r1();
  const OptResult g = optimal_wc_max(general_case2());
  CHECK(g.optimal);
  CHECK(std::abs(g.value - 1.0 / (r1 - 1.0)) <= 1e-9);
  CHECK(g.value == eval_order(general_case2(), g.order));

  const double r3 = 6.0 / (oracle::ratio_r2() * oracle::ratio_r2()) - 3.0;
  const OptResult u3 = optimal_wc_max(unit_case2(false));
  CHECK(std::abs(u3.value - (r3 + 3.0)) <= 1e-9);
  CHECK(std::abs(u3.value - oracle::brute_force_opt(unit_case2(false))) <= 1e-12);

  const OptResult u4 = optimal_wc_max(unit_case2(true));
  CHECK(u4.value <= 4.0 + 1e-9);
}

TEST_CASE("two unit jobs: heavy job first") {
  const Instance inst({{1, 0, 1, 1}, {2, 0.5, 1, 10}});
  const OptResult opt = optimal_wc_max(inst);
  CHECK(opt.value == 15.0);
  CHECK(opt.order == std::vector<JobId>{2, 1});
}

TEST_CASE("optimal_wc_max errors and node limit") {
  CHECK_THROWS_AS(optimal_wc_max(Instance{}), EmptyInstance);
  CHECK_THROWS_AS(optimal_wc_max(Instance({{1, 0, 1, 1}}), 0), ConfigError);

  std::vector<Job> jobs;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 5);
  for (int i = 1; i <= 9; ++i)
    jobs.push_back({i, u(gen), 1.0, 1.0 + u(gen)});
  const Instance inst(jobs);
  const OptResult cut = optimal_wc_max(inst, 3);
  CHECK_FALSE(cut.optimal);
  CHECK(cut.value == eval_order(inst, cut.order));
  const OptResult full = optimal_wc_max(inst);
  CHECK(full.optimal);
  CHECK(full.value <= cut.value);
}

TEST_CASE("branch and bound equals brute force enumeration") {
  std::mt19937_64 gen(314);
  std::uniform_int_distribution<int> n_dist(1, 7);
  std::uniform_real_distribution<double> rel(0, 6), wt(0.5, 10), pr(0, 2);
  for (int iter = 0; iter < 600; ++iter) {
    const int n = n_dist(gen);
    const bool unit = iter % 3 == 0;
    std::vector<Job> jobs;
    for (int i = 1; i <= n; ++i)
      jobs.push_back({i, rel(gen), unit ? 1.0 : pr(gen), wt(gen)});
    const Instance inst(jobs);
    const OptResult opt = optimal_wc_max(inst);
    const double brute = oracle::brute_force_opt(inst);
    CAPTURE(iter);
    CHECK(std::abs(opt.value - brute) <= 1e-12 * brute);
    CHECK(opt.value == eval_order(inst, opt.order));
  }
}

TEST_CASE("restarts and idle time cannot beat the best eager order") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> n_dist(1, 3);
  std::uniform_real_distribution<double> rel(0, 3), wt(0.5, 10), pr(0, 2);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = n_dist(gen);
    std::vector<Job> jobs;
    for (int i = 1; i <= n; ++i)
      jobs.push_back({i, rel(gen), iter % 2 ? 1.0 : pr(gen), wt(gen)});
    const Instance inst(jobs);
    const double with_restarts = oracle::RestartEnumerator(inst).solve();
    const double eager = optimal_wc_max(inst).value;
    CAPTURE(iter);
    CHECK(eager <= with_restarts + 1e-12);
    CHECK(std::abs(eager - with_restarts) <= 1e-12 * eager);
  }
}

TEST_CASE("OPT is never above any policy's objective") {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> n_dist(1, 7);
  std::uniform_real_distribution<double> rel(0, 6), wt(1, 10), pr(0, 2);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Job> jobs;
    const int n = n_dist(gen);
    for (int i = 1; i <= n; ++i)
      jobs.push_back({i, rel(gen), pr(gen), wt(gen)});
    const Instance inst(jobs);
    const double opt = optimal_wc_max(inst).value;
    for (auto name : kPolicyNames) {
      auto p = make_policy(name);
      CHECK(opt <= simulate(inst, *p).wc_max + 1e-9);
    }
  }
}
