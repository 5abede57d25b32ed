#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "rsched/engine.hpp"
#include "rsched/model.hpp"

namespace rsched {

/// Job parameters of the general lower-bound construction, all derived from
/// R1 (real root of x^3 - x^2 - 1).
struct GeneralLbParams {
  double ratio; // R1
  double r2;    // 1/(R1(R1-1)) - 1
  double w2;    // 1/(R1-1), p2 = 0
  double r34;   // release of jobs 3 and 4
  double w3;    // 1/(R1-1), p3 = 0
  double p4;    // 1/(R1-1) - 1, w4 = 1
};
GeneralLbParams general_lb_params();

/// Job parameters of the unit-size lower-bound construction, all derived from
/// R2 (real root of 4x^3 - x^2 - 6). Every job has p = 1.
struct UnitLbParams {
  double ratio;    // R2
  double r2;       // 3/R2 - 2
  double w2;       // 4/3
  double case1_r3; // 1 + r2
  double case1_w3; // (3 + r2)/(2 + r2)
  double case2_r3; // 6/R2^2 - 3
  double case2_w3; // 2
  double r4;       // 3
  double w4;       // 1
};
UnitLbParams unit_lb_params();

/// Releases job 1 (r=0, p=1, w=1) and the zero-length job 2 at r2. If job 2
/// completes before job 1 and no later than time 1, jobs 3 and 4 are released
/// at time 1; otherwise nothing more arrives.
class GeneralLbAdversary final : public AdversaryScript {
public:
  enum class Branch { Undecided, OneFirst, TwoFirst };

  GeneralLbAdversary();
  std::vector<Job> observe(const Trace& trace, double now) override;
  std::optional<double> next_wakeup() const override;
  double target_ratio() const override { return params_.ratio; }
  std::string_view name() const override { return "general"; }

  Branch branch() const { return branch_; }

private:
  GeneralLbParams params_;
  bool started_ = false;
  Branch branch_ = Branch::Undecided;
};

/// Unit-size construction. At time case2_r3 it inspects the service
/// commitment: if job 2 is running (or already done while job 1 is not) the
/// heavy job 3 (w=2) arrives immediately and, should job 3 then complete before
/// job 2, job 4 arrives at time 3. Otherwise the lighter job 3 arrives at
/// 1 + r2.
class UnitLbAdversary final : public AdversaryScript {
public:
  enum class Stage { AwaitCommitment, CaseOneWait, CaseTwoWatch, Done };

  UnitLbAdversary();
  std::vector<Job> observe(const Trace& trace, double now) override;
  std::optional<double> next_wakeup() const override;
  double target_ratio() const override { return params_.ratio; }
  std::string_view name() const override { return "unit"; }

  Stage stage() const { return stage_; }
  bool took_case_two() const { return case_two_; }
  bool released_job4() const { return job4_; }

private:
  UnitLbParams params_;
  bool started_ = false;
  Stage stage_ = Stage::AwaitCommitment;
  bool case_two_ = false;
  bool job4_ = false;
};

/// Accepts "general" and "unit"; throws UnknownFamily otherwise.
std::unique_ptr<AdversaryScript> make_adversary(std::string_view family);

/// Two unit jobs: (r = s, w = 1) and (r = s + eps, w = heavy_weight) where s is
/// the LLW threshold. Throws ConfigError for eps <= 0 or heavy_weight < 1.
Instance tightness_instance(double eps, double heavy_weight);

/// Unit jobs with (release, weight) = (0,1), (0.2,1.1), (0.7,1.6), (1.4,2.3).
Instance figure1_instance();

/// Four-job instance realized by the general construction when job 2 runs
/// first.
Instance general_lb_two_first_instance();

/// Unit construction with the heavy job 3; job 4 included on request.
Instance unit_lb_case_two_instance(bool with_job4);

} // namespace rsched
