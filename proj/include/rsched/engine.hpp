#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

struct Continue {
  friend bool operator==(const Continue&, const Continue&) = default;
};
struct Start {
  JobId job;
  friend bool operator==(const Start&, const Start&) = default;
};
struct InterruptAndStart {
  JobId job;
  friend bool operator==(const InterruptAndStart&,
                         const InterruptAndStart&) = default;
};

using OnlineDecision = std::variant<Continue, Start, InterruptAndStart>;

struct RunningJob {
  JobId id;
  double weight;
  double last_start;
};

struct WaitingJob {
  JobId id;
  double weight;
  double release;
  double proc;
};

/// Everything an online policy may know at a decision point.
struct PolicyView {
  double now = 0.0;
  std::optional<RunningJob> running;
  /// Released, not completed, not running; ordered by (release, id).
  std::vector<WaitingJob> waiting;
  /// Jobs whose release was delivered since the policy was last consulted.
  std::vector<JobId> arrivals;
};

class OnlinePolicy {
public:
  virtual ~OnlinePolicy() = default;
  virtual OnlineDecision decide(const PolicyView& view) = 0;
  virtual std::string_view name() const = 0;
};

/// Release oracle whose future jobs may depend on what the policy did so far.
class AdversaryScript {
public:
  virtual ~AdversaryScript() = default;

  /// Called once at time 0 with an empty trace, after every appended event,
  /// and at each requested wake-up time. Returned jobs must have
  /// release >= now.
  virtual std::vector<Job> observe(const Trace& trace, double now) = 0;

  /// Next time the script wants to be consulted even if no event happens.
  virtual std::optional<double> next_wakeup() const { return std::nullopt; }

  virtual double target_ratio() const = 0;
  virtual std::string_view name() const = 0;
};

/// Runs `policy` on a fixed instance. Decision points are time 0, release
/// batches and completions. Throws EmptyInstance or PolicyError.
Trace simulate(const Instance& instance, OnlinePolicy& policy);

struct AdaptiveRun {
  Instance instance; // jobs the adversary actually released
  Trace trace;
};

/// Runs `policy` against an adversary. Throws AdversaryError on a causality
/// violation (release before emission) or a duplicate job id, PolicyError as
/// for simulate.
AdaptiveRun simulate_adaptive(AdversaryScript& adversary, OnlinePolicy& policy);

} // namespace rsched
