#include "rsched/policies.hpp"

#include <algorithm>
#include <string>

#include "rsched/errors.hpp"

namespace rsched {
namespace {

// Heaviest job among this round's arrivals.
std::optional<WaitingJob> heaviest_arrival(const PolicyView& view) {
  std::optional<WaitingJob> best;
  for (const WaitingJob& w : view.waiting) {
    if (std::find(view.arrivals.begin(), view.arrivals.end(), w.id) ==
        view.arrivals.end())
      continue;
    if (!best || w.weight > best->weight)
      best = w;
  }
  return best;
}

OnlineDecision start_heaviest(const PolicyView& view) {
  if (auto next = heaviest(view.waiting))
    return Start{next->id};
  return Continue{};
}

} // namespace

double phase_end(double t, double ratio) { return (t + 2.0) / ratio - 1.0; }

std::optional<WaitingJob> heaviest(std::span<const WaitingJob> waiting) {
  const auto it = std::min_element(
      waiting.begin(), waiting.end(),
      [](const WaitingJob& a, const WaitingJob& b) {
        if (a.weight != b.weight)
          return a.weight > b.weight;
        if (a.release != b.release)
          return a.release < b.release;
        return a.id < b.id;
      });
  if (it == waiting.end())
    return std::nullopt;
  return *it;
}

OnlineDecision LwPolicy::decide(const PolicyView& view) {
  if (!view.running)
    return start_heaviest(view);
  if (!interruptions_)
    return Continue{};
  const auto arrival = heaviest_arrival(view);
  if (arrival && tol_.weight_gt(arrival->weight, view.running->weight))
    return InterruptAndStart{heaviest(view.waiting)->id};
  return Continue{};
}

LlwPolicy::LlwPolicy(double ratio, Tolerance tol)
    : ratio_(ratio), threshold_(llw_threshold(ratio)), tol_(tol) {}

LlwState LlwPolicy::state(double last_start, double now) const {
  if (!tol_.time_lt(last_start, threshold_))
    return {LlwState::Mode::Locked, last_start, last_start};
  const double end = phase_end(last_start, ratio_);
  if (!tol_.time_lt(now, end))
    return {LlwState::Mode::Locked, last_start, end};
  return {LlwState::Mode::PhaseActive, last_start, end};
}

OnlineDecision LlwPolicy::decide(const PolicyView& view) {
  if (!view.running)
    return start_heaviest(view);
  const auto arrival = heaviest_arrival(view);
  if (!arrival || !tol_.weight_gt(arrival->weight, view.running->weight))
    return Continue{};
  const LlwState st = state(view.running->last_start, view.now);
  if (st.mode == LlwState::Mode::PhaseActive &&
      tol_.time_lt(view.running->last_start, view.now))
    return InterruptAndStart{heaviest(view.waiting)->id};
  return Continue{};
}

std::unique_ptr<OnlinePolicy> make_policy(std::string_view name) {
  if (name == "lw")
    return std::make_unique<LwPolicy>(true);
  if (name == "lw-nointr")
    return std::make_unique<LwPolicy>(false);
  if (name == "llw")
    return std::make_unique<LlwPolicy>();
  throw UnknownPolicy("unknown policy '" + std::string(name) +
                      "' (expected lw, lw-nointr or llw)");
}

} // namespace rsched
