#include "rsched/adversaries.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rsched/errors.hpp"
#include "rsched/numerics.hpp"

namespace rsched {
namespace {

std::set<JobId> completed_jobs(const Trace& trace) {
  std::set<JobId> done;
  for (const TraceEvent& e : trace.events)
    if (e.kind == EventKind::Complete)
      done.insert(e.job);
  return done;
}

std::optional<JobId> running_job(const Trace& trace) {
  std::optional<JobId> running;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::Start)
      running = e.job;
    else if ((e.kind == EventKind::Interrupt || e.kind == EventKind::Complete) &&
             running == e.job)
      running.reset();
  }
  return running;
}

} // namespace

GeneralLbParams general_lb_params() {
  const double r1 = ratio_constant(RatioKind::R1).value;
  const double big = 1.0 / (r1 - 1.0);
  return {r1, 1.0 / (r1 * (r1 - 1.0)) - 1.0, big, 1.0, big, big - 1.0};
}

UnitLbParams unit_lb_params() {
  const double r2c = ratio_constant(RatioKind::R2).value;
  const double r2 = 3.0 / r2c - 2.0;
  return {r2c,
          r2,
          4.0 / 3.0,
          1.0 + r2,
          (3.0 + r2) / (2.0 + r2),
          6.0 / (r2c * r2c) - 3.0,
          2.0,
          3.0,
          1.0};
}

GeneralLbAdversary::GeneralLbAdversary() : params_(general_lb_params()) {}

std::vector<Job> GeneralLbAdversary::observe(const Trace& trace, double now) {
  if (!started_) {
    started_ = true;
    return {{1, 0.0, 1.0, 1.0}, {2, params_.r2, 0.0, params_.w2}};
  }
  if (branch_ != Branch::Undecided)
    return {};
  const auto done = completed_jobs(trace);
  if (done.contains(2) && !done.contains(1) && now <= params_.r34) {
    branch_ = Branch::TwoFirst;
    return {{3, params_.r34, 0.0, params_.w3}, {4, params_.r34, params_.p4, 1.0}};
  }
  if (done.contains(1) || now >= params_.r34)
    branch_ = Branch::OneFirst;
  return {};
}

std::optional<double> GeneralLbAdversary::next_wakeup() const {
  if (branch_ == Branch::Undecided)
    return params_.r34;
  return std::nullopt;
}

UnitLbAdversary::UnitLbAdversary() : params_(unit_lb_params()) {}

std::vector<Job> UnitLbAdversary::observe(const Trace& trace, double now) {
  if (!started_) {
    started_ = true;
    return {{1, 0.0, 1.0, 1.0}, {2, params_.r2, 1.0, params_.w2}};
  }
  switch (stage_) {
  case Stage::AwaitCommitment: {
    if (now < params_.case2_r3)
      return {};
    const auto done = completed_jobs(trace);
    const bool serving_two = running_job(trace) == JobId{2} ||
                             (done.contains(2) && !done.contains(1));
    if (serving_two) {
      stage_ = Stage::CaseTwoWatch;
      case_two_ = true;
      return {{3, now, 1.0, params_.case2_w3}};
    }
    stage_ = Stage::CaseOneWait;
    return {};
  }
  case Stage::CaseOneWait:
    if (now < params_.case1_r3)
      return {};
    stage_ = Stage::Done;
    return {{3, now, 1.0, params_.case1_w3}};
  case Stage::CaseTwoWatch: {
    const auto done = completed_jobs(trace);
    if (done.contains(3) && !done.contains(2)) {
      stage_ = Stage::Done;
      job4_ = true;
      return {{4, std::max(params_.r4, now), 1.0, params_.w4}};
    }
    if (done.contains(2))
      stage_ = Stage::Done;
    return {};
  }
  case Stage::Done:
    return {};
  }
  return {};
}

std::optional<double> UnitLbAdversary::next_wakeup() const {
  if (stage_ == Stage::AwaitCommitment)
    return params_.case2_r3;
  if (stage_ == Stage::CaseOneWait)
    return params_.case1_r3;
  return std::nullopt;
}

std::unique_ptr<AdversaryScript> make_adversary(std::string_view family) {
  if (family == "general")
    return std::make_unique<GeneralLbAdversary>();
  if (family == "unit")
    return std::make_unique<UnitLbAdversary>();
  throw UnknownFamily("unknown adversary family '" + std::string(family) +
                      "' (expected general or unit)");
}

Instance tightness_instance(double eps, double heavy_weight) {
  if (!(eps > 0.0))
    throw ConfigError("tightness: eps must be positive");
  if (!(heavy_weight >= 1.0))
    throw ConfigError("tightness: heavy weight must be at least 1");
  const double s = llw_threshold(ratio_constant(RatioKind::R).value);
  return Instance({{1, s, 1.0, 1.0}, {2, s + eps, 1.0, heavy_weight}});
}

Instance figure1_instance() {
  return Instance({{1, 0.0, 1.0, 1.0},
                   {2, 0.2, 1.0, 1.1},
                   {3, 0.7, 1.0, 1.6},
                   {4, 1.4, 1.0, 2.3}});
}

Instance general_lb_two_first_instance() {
  const auto p = general_lb_params();
  return Instance({{1, 0.0, 1.0, 1.0},
                   {2, p.r2, 0.0, p.w2},
                   {3, p.r34, 0.0, p.w3},
                   {4, p.r34, p.p4, 1.0}});
}

Instance unit_lb_case_two_instance(bool with_job4) {
  const auto p = unit_lb_params();
  std::vector<Job> jobs{{1, 0.0, 1.0, 1.0},
                        {2, p.r2, 1.0, p.w2},
                        {3, p.case2_r3, 1.0, p.case2_w3}};
  if (with_job4)
    jobs.push_back({4, p.r4, 1.0, p.w4});
  return Instance(std::move(jobs));
}

} // namespace rsched
