#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsched/model.hpp"
#include "rsched/numerics.hpp"
#include "rsched/offline.hpp"

namespace rsched {

// ---------------------------------------------------------------- fuzzing

struct FuzzConfig {
  std::uint64_t count = 1000;
  int n_max = 8;         // jobs per instance drawn uniformly from [1, n_max]
  bool unit = false;     // proc = 1, else uniform in [0, 2]
  double weight_lo = 1.0;
  double weight_hi = 10.0;
  double release_lo = 0.0;
  double release_hi = 8.0;
  std::uint64_t seed = 42;
  std::string policy = "llw";
  std::optional<double> ratio_bound; // defaults to R
  unsigned threads = 1;              // 0 = hardware concurrency
  std::uint64_t node_limit = kDefaultNodeLimit;
  bool keep_samples = false;         // fill FuzzReport::samples
};

/// Throws ConfigError when a field is out of range.
void check(const FuzzConfig& config);

/// Seed of instance `index`; independent of how the batch is split.
std::uint64_t instance_seed(std::uint64_t base_seed, std::uint64_t index);

/// Deterministic instance for a given per-instance seed (mt19937_64).
Instance fuzz_instance(const FuzzConfig& config, std::uint64_t seed);

struct FuzzSample {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double alg_value = 0.0;
  double opt_value = 0.0;
  double ratio = 1.0;
};

struct FuzzViolation {
  std::uint64_t index;
  std::uint64_t seed;
  double ratio;
  Instance instance;
};

struct FuzzReport {
  static constexpr double kBinWidth = 0.025;
  static constexpr std::size_t kBins = 21; // [1, 1.5) in 0.025 steps + overflow

  double bound = 0.0;
  std::uint64_t count = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax_index = 0;
  Instance argmax_instance;
  std::uint64_t violations = 0;      // ratio > bound + eps_ratio
  std::uint64_t invalid_traces = 0;  // validate_trace failures
  std::uint64_t inexact_opt = 0;     // node limit hit
  std::vector<FuzzViolation> violating; // first 100 by index
  std::vector<std::uint64_t> histogram = std::vector<std::uint64_t>(kBins, 0);
  std::vector<FuzzSample> samples;   // only with keep_samples, index order

  bool passed() const { return violations == 0 && invalid_traces == 0; }
};

/// Simulates `config.policy` on `config.count` random instances and compares
/// with the offline optimum. Identical configs give identical reports for any
/// thread count. Throws ConfigError, UnknownPolicy.
FuzzReport fuzz(const FuzzConfig& config);

/// Rows "seed,n,alg_value,opt_value,ratio" with 12 significant digits.
std::string fuzz_csv(const FuzzReport& report);

// ----------------------------------------------------- adversary reports

struct AdversaryRecord {
  std::string policy;
  std::string family;
  double alg = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  std::optional<double> target; // lower bound the construction forces
  bool opt_exact = true;
  Instance instance;
  Trace trace;
  ValidationReport validation;

  /// Valid trace and, when a target exists, ratio >= target - 1e-6.
  bool passed() const;
};

inline constexpr double kAdversarySlack = 1e-6;

/// Families: "general", "unit" (adaptive; target R1 / R2), "tightness"
/// (eps = 1e-4, weight = 1e5) and "fig1" (fixed instances, no target).
/// Throws UnknownPolicy, UnknownFamily.
AdversaryRecord adversary_report(const std::string& policy,
                                 const std::string& family);

/// LLW against the fixed tightness pair.
AdversaryRecord tightness_report(double eps, double heavy_weight);

// ------------------------------------------------------------- constants

struct ConstantCheck {
  RatioKind kind;
  double value;
  double residual;
  bool pass;
};

struct IdentityCheck {
  std::string name;
  double lhs;
  double rhs;
  bool pass;
};

struct ConstantsReport {
  double tol = 0.0;
  std::vector<ConstantCheck> constants;
  std::vector<IdentityCheck> identities; // checked to 1e-9
  double threshold = 0.0;

  bool all_pass() const;
};

/// A constant passes when its cubic residual satisfies |residual| <= tol.
ConstantsReport verify_constants(double tol);

} // namespace rsched
