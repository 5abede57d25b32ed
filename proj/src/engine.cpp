#include "rsched/engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "rsched/errors.hpp"

namespace rsched {
namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

bool release_order(const Job& a, const Job& b) {
  return a.release != b.release ? a.release < b.release : a.id < b.id;
}

class Simulation {
public:
  Simulation(OnlinePolicy& policy, AdversaryScript* adversary)
      : policy_(policy), adversary_(adversary) {}

  void add_jobs(std::vector<Job> jobs) {
    for (Job& job : jobs) {
      if (adversary_ && job.release < now_)
        throw AdversaryError("job " + std::to_string(job.id) + " released at " +
                             std::to_string(job.release) +
                             " but emitted at " + std::to_string(now_));
      if (jobs_.contains(job.id))
        throw AdversaryError("job id " + std::to_string(job.id) +
                             " emitted twice");
      try {
        Instance check({job});
      } catch (const InvalidInstance& e) {
        throw AdversaryError(e.what());
      }
      jobs_.emplace(job.id, job);
      pending_.insert(
          std::upper_bound(pending_.begin(), pending_.end(), job, release_order),
          job);
    }
  }

  Trace run() {
    if (adversary_)
      add_jobs(adversary_->observe(trace_, now_));
    for (;;) {
      deliver_releases();
      if (!settled_ && needs_decision()) {
        consult();
        continue;
      }
      settled_ = true;
      if (!advance())
        break;
    }
    double objective = 0.0;
    for (const TraceEvent& e : trace_.events)
      if (e.kind == EventKind::Complete)
        objective = std::max(objective, jobs_.at(e.job).weight * e.time);
    trace_.wc_max = objective;
    return trace_;
  }

  Instance realized_instance() const {
    std::vector<Job> jobs;
    jobs.reserve(jobs_.size());
    for (const auto& [id, job] : jobs_)
      jobs.push_back(job);
    return Instance(std::move(jobs));
  }

private:
  struct Running {
    JobId id;
    double start;
  };

  void append(EventKind kind, JobId job) {
    trace_.events.push_back({now_, kind, job});
    if (adversary_)
      add_jobs(adversary_->observe(trace_, now_));
  }

  void deliver_releases() {
    while (!pending_.empty() && pending_.front().release <= now_) {
      const Job job = pending_.front();
      pending_.erase(pending_.begin());
      waiting_.insert(
          std::upper_bound(waiting_.begin(), waiting_.end(), job.id,
                           [this](JobId a, JobId b) {
                             return release_order(jobs_.at(a), jobs_.at(b));
                           }),
          job.id);
      arrivals_.push_back(job.id);
      settled_ = false;
      append(EventKind::Release, job.id);
    }
  }

  bool needs_decision() const {
    return !arrivals_.empty() || (!running_ && !waiting_.empty());
  }

  PolicyView view() const {
    PolicyView v;
    v.now = now_;
    if (running_)
      v.running = RunningJob{running_->id, jobs_.at(running_->id).weight,
                             running_->start};
    v.waiting.reserve(waiting_.size());
    for (JobId id : waiting_) {
      const Job& j = jobs_.at(id);
      v.waiting.push_back({j.id, j.weight, j.release, j.proc});
    }
    v.arrivals = arrivals_;
    return v;
  }

  void take_from_waiting(JobId id, std::string_view what) {
    const auto it = std::find(waiting_.begin(), waiting_.end(), id);
    if (it == waiting_.end())
      throw PolicyError(std::string(policy_.name()) + ": " + std::string(what) +
                        " of job " + std::to_string(id) +
                        " which is not waiting");
    waiting_.erase(it);
  }

  void start(JobId id) {
    running_ = Running{id, now_};
    append(EventKind::Start, id);
    if (jobs_.at(id).proc == 0.0)
      complete_running();
  }

  void complete_running() {
    const JobId id = running_->id;
    running_.reset();
    completed_.insert(id);
    append(EventKind::Complete, id);
  }

  void consult() {
    const PolicyView v = view();
    arrivals_.clear();
    const OnlineDecision decision = policy_.decide(v);
    settled_ = std::holds_alternative<Continue>(decision);

    if (const auto* s = std::get_if<Start>(&decision)) {
      if (running_)
        throw PolicyError(std::string(policy_.name()) +
                          ": Start while a job is running");
      take_from_waiting(s->job, "Start");
      start(s->job);
    } else if (const auto* s = std::get_if<InterruptAndStart>(&decision)) {
      if (!running_)
        throw PolicyError(std::string(policy_.name()) +
                          ": InterruptAndStart on an idle machine");
      take_from_waiting(s->job, "InterruptAndStart");
      const JobId victim = running_->id;
      running_.reset();
      waiting_.insert(
          std::upper_bound(waiting_.begin(), waiting_.end(), victim,
                           [this](JobId a, JobId b) {
                             return release_order(jobs_.at(a), jobs_.at(b));
                           }),
          victim);
      append(EventKind::Interrupt, victim);
      start(s->job);
    }
  }

  // Moves time to the next completion, release or adversary wake-up.
  bool advance() {
    const double t_complete =
        running_ ? running_->start + jobs_.at(running_->id).proc : kNever;
    const double t_release = pending_.empty() ? kNever : pending_.front().release;
    std::optional<double> wake = adversary_ ? adversary_->next_wakeup()
                                            : std::nullopt;
    const double t_wake = wake ? *wake : kNever;
    const double t = std::min({t_complete, t_release, t_wake});

    if (t == kNever) {
      if (!waiting_.empty() || running_)
        throw PolicyError(std::string(policy_.name()) +
                          ": machine left idle with jobs waiting and no "
                          "future event");
      return false;
    }
    if (t < now_)
      throw AdversaryError("wake-up requested in the past");
    now_ = t;

    if (t_complete == t) {
      settled_ = false;
      complete_running();
    }
    if (t_wake == t) {
      add_jobs(adversary_->observe(trace_, now_));
      const auto again = adversary_->next_wakeup();
      if (again && *again <= now_)
        throw AdversaryError("wake-up did not advance past " +
                             std::to_string(now_));
    }
    return true;
  }

  OnlinePolicy& policy_;
  AdversaryScript* adversary_;
  std::map<JobId, Job> jobs_;
  std::vector<Job> pending_;   // sorted by (release, id)
  std::vector<JobId> waiting_; // sorted by (release, id)
  std::set<JobId> completed_;
  std::vector<JobId> arrivals_;
  std::optional<Running> running_;
  Trace trace_;
  double now_ = 0.0;
  bool settled_ = false;
};

} // namespace

Trace simulate(const Instance& instance, OnlinePolicy& policy) {
  if (instance.empty())
    throw EmptyInstance("simulate: instance has no jobs");
  Simulation sim(policy, nullptr);
  sim.add_jobs({instance.jobs().begin(), instance.jobs().end()});
  return sim.run();
}

AdaptiveRun simulate_adaptive(AdversaryScript& adversary, OnlinePolicy& policy) {
  Simulation sim(policy, &adversary);
  Trace trace = sim.run();
  return {sim.realized_instance(), std::move(trace)};
}

} // namespace rsched
