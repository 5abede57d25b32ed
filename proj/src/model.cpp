#include "rsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "rsched/errors.hpp"

namespace rsched {

Instance::Instance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
  std::set<JobId> ids;
  for (const Job& j : jobs_) {
    if (!std::isfinite(j.release) || j.release < 0.0)
      throw InvalidInstance("job " + std::to_string(j.id) +
                            ": release must be finite and >= 0");
    if (!std::isfinite(j.proc) || j.proc < 0.0)
      throw InvalidInstance("job " + std::to_string(j.id) +
                            ": processing time must be finite and >= 0");
    if (!std::isfinite(j.weight) || j.weight <= 0.0)
      throw InvalidInstance("job " + std::to_string(j.id) +
                            ": weight must be finite and > 0");
    if (!ids.insert(j.id).second)
      throw InvalidInstance("duplicate job id " + std::to_string(j.id));
  }
  std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
    return a.release != b.release ? a.release < b.release : a.id < b.id;
  });
}

bool Instance::contains(JobId id) const {
  return std::any_of(jobs_.begin(), jobs_.end(),
                     [id](const Job& j) { return j.id == id; });
}

const Job& Instance::job(JobId id) const {
  for (const Job& j : jobs_)
    if (j.id == id)
      return j;
  throw InvalidInstance("unknown job id " + std::to_string(id));
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
  case EventKind::Complete:
    return "complete";
  case EventKind::Release:
    return "release";
  case EventKind::Interrupt:
    return "interrupt";
  case EventKind::Start:
    return "start";
  }
  return "?";
}

EventKind parse_event_kind(std::string_view text) {
  for (EventKind k : {EventKind::Complete, EventKind::Release,
                      EventKind::Interrupt, EventKind::Start})
    if (to_string(k) == text)
      return k;
  throw ParseError("unknown event kind '" + std::string(text) + "'");
}

std::map<JobId, double> completion_times(const Trace& trace) {
  std::map<JobId, double> done;
  std::set<JobId> seen;
  for (const TraceEvent& e : trace.events) {
    seen.insert(e.job);
    if (e.kind == EventKind::Complete)
      done.emplace(e.job, e.time);
  }
  for (JobId id : seen)
    if (!done.contains(id))
      throw MissingCompletion("job " + std::to_string(id) + " never completes");
  return done;
}

double wc_max(const Trace& trace, const Instance& instance) {
  const auto done = completion_times(trace);
  double best = 0.0;
  for (const Job& j : instance.jobs()) {
    const auto it = done.find(j.id);
    if (it == done.end())
      throw MissingCompletion("job " + std::to_string(j.id) +
                              " never completes");
    best = std::max(best, j.weight * it->second);
  }
  return best;
}

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [rule](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
  if (ok())
    return "ok";
  std::ostringstream os;
  for (const Violation& v : violations)
    os << "event " << v.event_index << ": " << v.rule << "\n";
  return os.str();
}

ValidationReport validate_trace(const Instance& instance, const Trace& trace,
                                const Tolerance& tol) {
  ValidationReport report;
  auto flag = [&](std::size_t i, std::string rule) {
    report.violations.push_back({i, std::move(rule)});
  };

  struct JobState {
    bool released = false;
    bool completed = false;
    bool interrupted_before = false;
  };
  std::map<JobId, JobState> state;
  for (const Job& j : instance.jobs())
    state.emplace(j.id, JobState{});

  std::optional<JobId> running;
  double running_start = 0.0;
  double last_time = 0.0;

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    if (!std::isfinite(e.time) || e.time < 0.0)
      flag(i, "negative time");
    if (i > 0 && e.time < last_time)
      flag(i, "time decreasing");
    last_time = std::max(last_time, e.time);

    auto it = state.find(e.job);
    if (it == state.end()) {
      flag(i, "unknown job");
      continue;
    }
    const Job& job = instance.job(e.job);
    JobState& js = it->second;

    switch (e.kind) {
    case EventKind::Release:
      if (js.released)
        flag(i, "duplicate release");
      if (!tol.time_eq(e.time, job.release))
        flag(i, "release time mismatch");
      js.released = true;
      break;
    case EventKind::Start:
      if (tol.time_lt(e.time, job.release))
        flag(i, "started before release");
      if (js.completed)
        flag(i, "start of completed job");
      if (running)
        flag(i, "start while machine busy");
      running = e.job;
      running_start = e.time;
      break;
    case EventKind::Interrupt:
      if (running != e.job) {
        flag(i, "interrupt of job not running");
        break;
      }
      js.interrupted_before = true;
      running.reset();
      break;
    case EventKind::Complete:
      if (js.completed)
        flag(i, "duplicate completion");
      if (running != e.job) {
        flag(i, "complete of job not running");
      } else {
        const double finish = running_start + job.proc;
        if (tol.time_lt(e.time, finish))
          flag(i, js.interrupted_before ? "work lost on restart"
                                        : "completion before processing ends");
        else if (tol.time_lt(finish, e.time))
          flag(i, "completion after processing ends");
        running.reset();
      }
      js.completed = true;
      break;
    }
  }

  for (const auto& [id, js] : state)
    if (!js.completed)
      flag(trace.events.size(), "missing completion");

  if (report.ok() && trace.wc_max != 0.0) {
    const double actual = wc_max(trace, instance);
    if (std::abs(actual - trace.wc_max) >
        tol.eps_weight * std::max(1.0, std::abs(actual)))
      flag(trace.events.size(), "objective mismatch");
  }
  return report;
}

} // namespace rsched
