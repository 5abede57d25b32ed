#include "rsched/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include "rsched/adversaries.hpp"
#include "rsched/engine.hpp"
#include "rsched/errors.hpp"
#include "rsched/policies.hpp"

namespace rsched {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Portable [0, 1) from the top 53 bits; std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(gen);
}

double safe_ratio(double alg, double opt) {
  if (opt > 0.0)
    return alg / opt;
  return alg > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

std::size_t bin_of(double ratio) {
  if (!(ratio >= 1.0))
    return 0;
  const auto k =
      static_cast<std::size_t>((ratio - 1.0) / FuzzReport::kBinWidth);
  return std::min(k, FuzzReport::kBins - 1);
}

constexpr std::size_t kKeptViolations = 100;

void merge_into(FuzzReport& into, FuzzReport&& part) {
  if (part.count == 0)
    return;
  if (into.count == 0 || part.max_ratio > into.max_ratio ||
      (part.max_ratio == into.max_ratio &&
       part.argmax_index < into.argmax_index)) {
    into.max_ratio = part.max_ratio;
    into.argmax_index = part.argmax_index;
    into.argmax_instance = std::move(part.argmax_instance);
  }
  into.count += part.count;
  into.violations += part.violations;
  into.invalid_traces += part.invalid_traces;
  into.inexact_opt += part.inexact_opt;
  for (std::size_t b = 0; b < into.histogram.size(); ++b)
    into.histogram[b] += part.histogram[b];
  for (auto& v : part.violating)
    into.violating.push_back(std::move(v));
  std::sort(into.violating.begin(), into.violating.end(),
            [](const FuzzViolation& a, const FuzzViolation& b) {
              return a.index < b.index;
            });
  if (into.violating.size() > kKeptViolations)
    into.violating.resize(kKeptViolations);
}

} // namespace

void check(const FuzzConfig& c) {
  if (c.count < 1)
    throw ConfigError("fuzz: count must be >= 1");
  if (c.n_max < 1 || c.n_max > 8)
    throw ConfigError("fuzz: n-max must lie in [1, 8]");
  if (!(c.weight_lo > 0.0) || !(c.weight_lo <= c.weight_hi))
    throw ConfigError("fuzz: need 0 < weight lo <= weight hi");
  if (!(c.release_lo >= 0.0) || !(c.release_lo <= c.release_hi))
    throw ConfigError("fuzz: need 0 <= release lo <= release hi");
  if (c.ratio_bound && !(*c.ratio_bound >= 1.0))
    throw ConfigError("fuzz: ratio bound must be >= 1");
  if (c.node_limit == 0)
    throw ConfigError("fuzz: node limit must be positive");
  make_policy(c.policy);
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed ^ splitmix64(index));
}

Instance fuzz_instance(const FuzzConfig& config, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto n = 1 + std::min<std::uint64_t>(
                         static_cast<std::uint64_t>(config.n_max) - 1,
                         static_cast<std::uint64_t>(unit_uniform(gen) *
                                                    config.n_max));
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Job j;
    j.id = static_cast<JobId>(i + 1);
    j.release = uniform(gen, config.release_lo, config.release_hi);
    j.weight = uniform(gen, config.weight_lo, config.weight_hi);
    j.proc = config.unit ? 1.0 : uniform(gen, 0.0, 2.0);
    jobs.push_back(j);
  }
  return Instance(std::move(jobs));
}

FuzzReport fuzz(const FuzzConfig& config) {
  check(config);
  const double bound =
      config.ratio_bound.value_or(ratio_constant(RatioKind::R).value);

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency()
                                         : config.threads;
  threads = std::max(1u, threads);
  if (threads > config.count)
    threads = static_cast<unsigned>(config.count);

  std::vector<FuzzSample> samples(config.keep_samples ? config.count : 0);
  std::vector<FuzzReport> parts(threads);

  auto work = [&](unsigned worker) {
    FuzzReport& part = parts[worker];
    auto policy_name = config.policy;
    for (std::uint64_t i = worker; i < config.count; i += threads) {
      const std::uint64_t seed = instance_seed(config.seed, i);
      const Instance inst = fuzz_instance(config, seed);
      auto policy = make_policy(policy_name);
      const Trace trace = simulate(inst, *policy);
      const OptResult opt = optimal_wc_max(inst, config.node_limit);
      const double ratio = safe_ratio(trace.wc_max, opt.value);

      if (!validate_trace(inst, trace).ok())
        ++part.invalid_traces;
      if (!opt.optimal)
        ++part.inexact_opt;
      if (part.count == 0 || ratio > part.max_ratio) {
        part.max_ratio = ratio;
        part.argmax_index = i;
        part.argmax_instance = inst;
      }
      ++part.count;
      ++part.histogram[bin_of(ratio)];
      if (kTolerance.ratio_gt(ratio, bound)) {
        ++part.violations;
        if (part.violating.size() < kKeptViolations)
          part.violating.push_back({i, seed, ratio, inst});
      }
      if (config.keep_samples)
        samples[i] = {i, seed, inst.size(), trace.wc_max, opt.value, ratio};
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back(work, w);
  }

  FuzzReport report;
  for (auto& part : parts)
    merge_into(report, std::move(part));
  report.bound = bound;
  report.samples = std::move(samples);
  return report;
}

std::string fuzz_csv(const FuzzReport& report) {
  std::string out = "seed,n,alg_value,opt_value,ratio\n";
  char line[256];
  for (const FuzzSample& s : report.samples) {
    std::snprintf(line, sizeof line, "%llu,%zu,%.12g,%.12g,%.12g\n",
                  static_cast<unsigned long long>(s.seed), s.n, s.alg_value,
                  s.opt_value, s.ratio);
    out += line;
  }
  return out;
}

bool AdversaryRecord::passed() const {
  if (!validation.ok())
    return false;
  return !target || ratio >= *target - kAdversarySlack;
}

namespace {

AdversaryRecord fixed_instance_record(const std::string& policy_name,
                                      const std::string& family,
                                      Instance inst) {
  auto policy = make_policy(policy_name);
  AdversaryRecord rec;
  rec.policy = policy_name;
  rec.family = family;
  rec.trace = simulate(inst, *policy);
  rec.instance = std::move(inst);
  return rec;
}

void finish(AdversaryRecord& rec) {
  rec.validation = validate_trace(rec.instance, rec.trace);
  rec.alg = rec.trace.wc_max;
  const OptResult opt = optimal_wc_max(rec.instance);
  rec.opt = opt.value;
  rec.opt_exact = opt.optimal;
  rec.ratio = safe_ratio(rec.alg, rec.opt);
}

} // namespace

AdversaryRecord adversary_report(const std::string& policy,
                                 const std::string& family) {
  make_policy(policy);
  AdversaryRecord rec;
  if (family == "general" || family == "unit") {
    auto adversary = make_adversary(family);
    auto pol = make_policy(policy);
    AdaptiveRun run = simulate_adaptive(*adversary, *pol);
    rec.policy = policy;
    rec.family = family;
    rec.target = adversary->target_ratio();
    rec.instance = std::move(run.instance);
    rec.trace = std::move(run.trace);
  } else if (family == "tightness") {
    rec = fixed_instance_record(policy, family, tightness_instance(1e-4, 1e5));
  } else if (family == "fig1") {
    rec = fixed_instance_record(policy, family, figure1_instance());
  } else {
    throw UnknownFamily("unknown family '" + family +
                        "' (expected general, unit, tightness or fig1)");
  }
  finish(rec);
  return rec;
}

AdversaryRecord tightness_report(double eps, double heavy_weight) {
  AdversaryRecord rec = fixed_instance_record(
      "llw", "tightness", tightness_instance(eps, heavy_weight));
  finish(rec);
  return rec;
}

bool ConstantsReport::all_pass() const {
  return std::all_of(constants.begin(), constants.end(),
                     [](const ConstantCheck& c) { return c.pass; }) &&
         std::all_of(identities.begin(), identities.end(),
                     [](const IdentityCheck& c) { return c.pass; });
}

ConstantsReport verify_constants(double tol) {
  ConstantsReport rep;
  rep.tol = tol;
  for (RatioKind k : {RatioKind::R, RatioKind::R1, RatioKind::R2}) {
    const RatioConstant& c = ratio_constant(k);
    rep.constants.push_back(
        {k, c.value, c.residual, std::abs(c.residual) <= tol});
  }
  const double r = ratio_constant(RatioKind::R).value;
  const double r1 = ratio_constant(RatioKind::R1).value;
  const double r2 = ratio_constant(RatioKind::R2).value;
  rep.threshold = llw_threshold(r);

  auto identity = [&](std::string name, double lhs, double rhs) {
    rep.identities.push_back(
        {std::move(name), lhs, rhs, std::abs(lhs - rhs) <= 1e-9});
  };
  identity("general release 1/(R1(R1-1)) - 1 == R1 - 1",
           1.0 / (r1 * (r1 - 1.0)) - 1.0, r1 - 1.0);
  identity("phase_end(threshold) == threshold", phase_end(rep.threshold, r),
           rep.threshold);
  identity("(threshold + 2)/(threshold + 1) == R",
           (rep.threshold + 2.0) / (rep.threshold + 1.0), r);
  identity("(6/R2^2 + 1)/4 == R2", (6.0 / (r2 * r2) + 1.0) / 4.0, r2);
  return rep;
}

} // namespace rsched
