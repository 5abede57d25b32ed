#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "rsched/engine.hpp"
#include "rsched/numerics.hpp"

namespace rsched {

/// End of the interruption phase of a run started at t: (t+2)/R - 1.
double phase_end(double t, double ratio);

/// Heaviest waiting job; ties broken by earlier release, then smaller id.
std::optional<WaitingJob> heaviest(std::span<const WaitingJob> waiting);

/// Largest Weight. With interruptions, an arrival strictly heavier than the
/// running job preempts it (work is lost); without, a started job always runs
/// to completion. Idle machine: start the heaviest waiting job.
class LwPolicy final : public OnlinePolicy {
public:
  explicit LwPolicy(bool interruptions, Tolerance tol = kTolerance)
      : interruptions_(interruptions), tol_(tol) {}

  OnlineDecision decide(const PolicyView& view) override;
  std::string_view name() const override {
    return interruptions_ ? "lw" : "lw-nointr";
  }

private:
  bool interruptions_;
  Tolerance tol_;
};

struct LlwState {
  enum class Mode { PhaseActive, Locked };
  Mode mode;
  double phase_start;
  double phase_end; // only meaningful in PhaseActive
};

/// Limited Largest Weight. A run started at t below the threshold
/// (2-R)/(R-1) may be preempted by a strictly heavier arrival only during the
/// open window (t, phase_end(t)); runs started at or after the threshold, or
/// that outlived their window, are never preempted.
class LlwPolicy final : public OnlinePolicy {
public:
  explicit LlwPolicy(double ratio = ratio_constant(RatioKind::R).value,
                     Tolerance tol = kTolerance);

  OnlineDecision decide(const PolicyView& view) override;
  std::string_view name() const override { return "llw"; }

  /// Phase state of a run started at `last_start`, as seen at time `now`.
  LlwState state(double last_start, double now) const;

  double ratio() const { return ratio_; }
  double threshold() const { return threshold_; }

private:
  double ratio_;
  double threshold_;
  Tolerance tol_;
};

/// Accepts "lw", "lw-nointr", "llw"; throws UnknownPolicy otherwise.
std::unique_ptr<OnlinePolicy> make_policy(std::string_view name);

inline constexpr std::string_view kPolicyNames[] = {"lw", "lw-nointr", "llw"};

} // namespace rsched
