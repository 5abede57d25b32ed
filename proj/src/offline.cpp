#include "rsched/offline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "rsched/errors.hpp"

namespace rsched {

double eval_order(const Instance& instance, std::span<const JobId> order) {
  if (order.size() != instance.size())
    throw NotAPermutation("order has " + std::to_string(order.size()) +
                          " entries for " + std::to_string(instance.size()) +
                          " jobs");
  std::set<JobId> seen;
  double clock = 0.0;
  double objective = 0.0;
  for (JobId id : order) {
    if (!instance.contains(id) || !seen.insert(id).second)
      throw NotAPermutation("order is not a permutation of the job ids");
    const Job& j = instance.job(id);
    clock = std::max(j.release, clock) + j.proc;
    objective = std::max(objective, j.weight * clock);
  }
  return objective;
}

namespace {

class BranchAndBound {
public:
  BranchAndBound(const Instance& instance, std::uint64_t node_limit)
      : jobs_(instance.jobs().begin(), instance.jobs().end()),
        limit_(node_limit) {
    // Children are tried heaviest first.
    std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
      if (a.weight != b.weight)
        return a.weight > b.weight;
      if (a.release != b.release)
        return a.release < b.release;
      return a.id < b.id;
    });
    used_.assign(jobs_.size(), false);
    prefix_.reserve(jobs_.size());

    best_order_.resize(jobs_.size());
    std::iota(best_order_.begin(), best_order_.end(), std::size_t{0});
    double clock = 0.0;
    best_ = 0.0;
    for (const Job& j : jobs_) {
      clock = std::max(j.release, clock) + j.proc;
      best_ = std::max(best_, j.weight * clock);
    }
  }

  OptResult solve() {
    descend(0.0, 0.0);
    OptResult out;
    out.value = best_;
    out.explored = explored_;
    out.optimal = !aborted_;
    for (std::size_t k : best_order_)
      out.order.push_back(jobs_[k].id);
    return out;
  }

private:
  void descend(double clock, double partial) {
    if (aborted_)
      return;
    if (++explored_ > limit_) {
      aborted_ = true;
      return;
    }
    if (prefix_.size() == jobs_.size()) {
      if (partial < best_) {
        best_ = partial;
        best_order_ = prefix_;
      }
      return;
    }
    // Every remaining job completes no earlier than max(clock, r_j) + p_j.
    double bound = partial;
    for (std::size_t k = 0; k < jobs_.size(); ++k)
      if (!used_[k])
        bound = std::max(bound, jobs_[k].weight *
                                    (std::max(jobs_[k].release, clock) +
                                     jobs_[k].proc));
    if (bound >= best_)
      return;

    for (std::size_t k = 0; k < jobs_.size(); ++k) {
      if (used_[k])
        continue;
      const Job& j = jobs_[k];
      const double finish = std::max(j.release, clock) + j.proc;
      const double value = std::max(partial, j.weight * finish);
      if (value >= best_)
        continue;
      used_[k] = true;
      prefix_.push_back(k);
      descend(finish, value);
      prefix_.pop_back();
      used_[k] = false;
    }
  }

  std::vector<Job> jobs_;
  std::uint64_t limit_;
  std::vector<bool> used_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> best_order_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t explored_ = 0;
  bool aborted_ = false;
};

} // namespace

OptResult optimal_wc_max(const Instance& instance, std::uint64_t node_limit) {
  if (instance.empty())
    throw EmptyInstance("optimal_wc_max: instance has no jobs");
  if (node_limit == 0)
    throw ConfigError("optimal_wc_max: node limit must be positive");
  return BranchAndBound(instance, node_limit).solve();
}

} // namespace rsched
