#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsched/numerics.hpp"

namespace rsched {

using JobId = std::int64_t;

struct Job {
  JobId id = 0;
  double release = 0.0; // r_j
  double proc = 0.0;    // p_j, may be zero
  double weight = 1.0;  // w_j > 0

  friend bool operator==(const Job&, const Job&) = default;
};

/// Immutable multiset of jobs kept sorted by (release, id).
class Instance {
public:
  Instance() = default;
  /// Throws InvalidInstance on negative/non-finite release or proc, non-positive
  /// weight, or duplicate ids.
  explicit Instance(std::vector<Job> jobs);

  std::span<const Job> jobs() const { return jobs_; }
  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }

  bool contains(JobId id) const;
  /// Throws InvalidInstance for unknown ids.
  const Job& job(JobId id) const;

  friend bool operator==(const Instance&, const Instance&) = default;

private:
  std::vector<Job> jobs_;
};

enum class EventKind { Complete = 0, Release = 1, Interrupt = 2, Start = 3 };

std::string_view to_string(EventKind kind);
/// Throws ParseError.
EventKind parse_event_kind(std::string_view text);

struct TraceEvent {
  double time = 0.0;
  EventKind kind = EventKind::Start;
  JobId job = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  double wc_max = 0.0;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Time of each job's Complete event. Throws MissingCompletion if a job that
/// appears in the trace never completes.
std::map<JobId, double> completion_times(const Trace& trace);

/// max_j w_j * C_j. Throws MissingCompletion if some job of the instance has no
/// Complete event.
double wc_max(const Trace& trace, const Instance& instance);

struct Violation {
  std::size_t event_index; // events.size() for end-of-trace violations
  std::string rule;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view rule) const;
  std::string summary() const;
};

/// Checks restart semantics: starts after release, a single running job,
/// every Complete exactly proc after the most recent Start, one Complete per
/// job, nondecreasing times. Release events are optional but must match the
/// instance when present. A nonzero trace.wc_max must agree with the events.
ValidationReport validate_trace(const Instance& instance, const Trace& trace,
                                const Tolerance& tol = kTolerance);

} // namespace rsched
