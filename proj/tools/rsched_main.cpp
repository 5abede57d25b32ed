// rsched: online single-machine scheduling with restarts, weighted makespan.
//
// Exit codes: 0 all checks pass, 1 bound violation or invalid trace,
// 2 malformed input or configuration.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rsched/adversaries.hpp"
#include "rsched/engine.hpp"
#include "rsched/errors.hpp"
#include "rsched/harness.hpp"
#include "rsched/io.hpp"
#include "rsched/offline.hpp"
#include "rsched/policies.hpp"

namespace {

using namespace rsched;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;

std::string fmt(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void print_trace(const Trace& trace) {
  for (const TraceEvent& e : trace.events)
    std::cout << "  " << fmt(e.time) << "\t" << to_string(e.kind) << "\t"
              << e.job << "\n";
}

int run_simulate(const std::string& alg, const std::string& instance_path,
                 const std::string& trace_path) {
  const Instance inst = io::read_instance(instance_path);
  auto policy = make_policy(alg);
  const Trace trace = simulate(inst, *policy);
  const ValidationReport v = validate_trace(inst, trace);
  print_trace(trace);
  std::cout << "wc_max: " << fmt(trace.wc_max) << "\n"
            << "valid: " << (v.ok() ? "yes" : "no") << "\n";
  if (!v.ok())
    std::cout << v.summary();
  if (!trace_path.empty())
    io::write_trace(trace_path, trace);
  return v.ok() ? kOk : kViolation;
}

int run_opt(const std::string& instance_path, std::uint64_t node_limit) {
  const Instance inst = io::read_instance(instance_path);
  const OptResult opt = optimal_wc_max(inst, node_limit);
  std::cout << "opt: " << fmt(opt.value, 17) << "\norder:";
  for (JobId id : opt.order)
    std::cout << " " << id;
  std::cout << "\nexplored: " << opt.explored
            << "\noptimal: " << (opt.optimal ? "yes" : "no (node limit)")
            << "\n";
  return kOk;
}

void print_record(const AdversaryRecord& rec) {
  std::cout << "policy: " << rec.policy << "\nfamily: " << rec.family
            << "\njobs:\n";
  for (const Job& j : rec.instance.jobs())
    std::cout << "  id=" << j.id << " r=" << fmt(j.release)
              << " p=" << fmt(j.proc) << " w=" << fmt(j.weight) << "\n";
  std::cout << "trace:\n";
  print_trace(rec.trace);
  std::cout << "alg: " << fmt(rec.alg) << "\nopt: " << fmt(rec.opt)
            << "\nratio: " << fmt(rec.ratio) << "\n";
  if (rec.target)
    std::cout << "target: " << fmt(*rec.target) << "\n";
  std::cout << "valid: " << (rec.validation.ok() ? "yes" : "no") << "\n"
            << "result: " << (rec.passed() ? "PASS" : "FAIL") << "\n";
}

int run_adversary(const std::string& alg, const std::string& family) {
  const AdversaryRecord rec = adversary_report(alg, family);
  print_record(rec);
  return rec.passed() ? kOk : kViolation;
}

int run_tightness(double eps, double weight) {
  const AdversaryRecord rec = tightness_report(eps, weight);
  const double r = ratio_constant(RatioKind::R).value;
  print_record(rec);
  std::cout << "R: " << fmt(r) << "\n";
  // The pair approaches R from below; exceeding it would contradict the bound.
  const bool ok = rec.validation.ok() && !kTolerance.ratio_gt(rec.ratio, r);
  return ok ? kOk : kViolation;
}

int run_fuzz(FuzzConfig config, const std::string& csv_path,
             const std::string& dump_dir) {
  config.keep_samples = !csv_path.empty();
  const FuzzReport rep = fuzz(config);
  std::cout << "policy: " << config.policy << "\ncount: " << rep.count
            << "\nbound: " << fmt(rep.bound) << "\nmax_ratio: "
            << fmt(rep.max_ratio) << " (instance " << rep.argmax_index
            << ")\nviolations: " << rep.violations
            << "\ninvalid_traces: " << rep.invalid_traces
            << "\ninexact_opt: " << rep.inexact_opt << "\nhistogram:\n";
  for (std::size_t b = 0; b < rep.histogram.size(); ++b) {
    if (rep.histogram[b] == 0)
      continue;
    const double lo = 1.0 + FuzzReport::kBinWidth * static_cast<double>(b);
    std::cout << "  [" << fmt(lo, 4) << ", "
              << (b + 1 == rep.histogram.size()
                      ? std::string("inf")
                      : fmt(lo + FuzzReport::kBinWidth, 4))
              << ")\t" << rep.histogram[b] << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out)
      throw ParseError("cannot write " + csv_path);
    out << fuzz_csv(rep);
  }
  if (!rep.violating.empty()) {
    std::filesystem::create_directories(dump_dir);
    for (const FuzzViolation& v : rep.violating) {
      const auto path = std::filesystem::path(dump_dir) /
                        ("violation_" + std::to_string(v.index) + ".json");
      io::write_instance(path, v.instance);
      std::cout << "dumped " << path.string() << " (ratio " << fmt(v.ratio)
                << ")\n";
    }
  }
  return rep.passed() ? kOk : kViolation;
}

int run_verify_constants(double tol) {
  const ConstantsReport rep = verify_constants(tol);
  for (const ConstantCheck& c : rep.constants)
    std::cout << to_string(c.kind) << " = " << fmt(c.value, 17)
              << "  residual " << fmt(c.residual, 3) << "  "
              << (c.pass ? "pass" : "FAIL") << "\n";
  std::cout << "threshold (2-R)/(R-1) = " << fmt(rep.threshold, 17) << "\n";
  for (const IdentityCheck& id : rep.identities)
    std::cout << id.name << ": " << fmt(id.lhs, 17) << " vs "
              << fmt(id.rhs, 17) << "  " << (id.pass ? "pass" : "FAIL")
              << "\n";
  return rep.all_pass() ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online single-machine scheduling with restarts (weighted "
               "makespan)"};
  app.require_subcommand(1);

  std::string alg;
  std::string instance_path;
  std::string trace_path;
  auto* sim = app.add_subcommand("simulate", "Run an online policy on an instance");
  sim->add_option("--alg", alg, "lw | lw-nointr | llw")->required();
  sim->add_option("--instance", instance_path, "Instance JSON")->required();
  sim->add_option("--trace", trace_path, "Write the trace JSON here");

  std::uint64_t node_limit = kDefaultNodeLimit;
  auto* opt = app.add_subcommand("opt", "Exact offline optimum");
  opt->add_option("--instance", instance_path, "Instance JSON")->required();
  opt->add_option("--node-limit", node_limit, "Branch-and-bound node budget");

  std::string family;
  auto* adv = app.add_subcommand("adversary", "Run a lower-bound adversary");
  adv->add_option("--alg", alg, "lw | lw-nointr | llw")->required();
  adv->add_option("--family", family, "general | unit | tightness | fig1")
      ->required();

  double eps = 1e-4;
  double weight = 1e5;
  auto* tight = app.add_subcommand("tightness", "LLW on the tightness pair");
  tight->add_option("--eps", eps, "Delay of the heavy job");
  tight->add_option("--weight", weight, "Weight of the heavy job");

  FuzzConfig fcfg;
  std::string csv_path;
  std::string dump_dir = ".";
  double bound = 0.0;
  auto* fz = app.add_subcommand("fuzz", "Random instances vs. the optimum");
  fz->add_option("--alg", fcfg.policy, "lw | lw-nointr | llw")->required();
  fz->add_option("--count", fcfg.count, "Number of instances")->required();
  fz->add_option("--n-max", fcfg.n_max, "Max jobs per instance (1..8)")
      ->required();
  fz->add_flag("--unit", fcfg.unit, "Unit processing times");
  fz->add_option("--seed", fcfg.seed, "Base seed");
  fz->add_option("--csv", csv_path, "Per-instance CSV output");
  fz->add_option("--w-lo", fcfg.weight_lo, "Weight range low");
  fz->add_option("--w-hi", fcfg.weight_hi, "Weight range high");
  fz->add_option("--r-lo", fcfg.release_lo, "Release range low");
  fz->add_option("--r-hi", fcfg.release_hi, "Release range high");
  auto* bound_opt = fz->add_option("--bound", bound, "Ratio bound (default R)");
  fz->add_option("--threads", fcfg.threads, "Worker threads (0 = all cores)");
  fz->add_option("--dump-dir", dump_dir, "Where violating instances go");

  double tol = 1e-12;
  auto* vc = app.add_subcommand("verify-constants", "Check R, R1, R2");
  vc->add_option("--tol", tol, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*sim)
      return run_simulate(alg, instance_path, trace_path);
    if (*opt)
      return run_opt(instance_path, node_limit);
    if (*adv)
      return run_adversary(alg, family);
    if (*tight)
      return run_tightness(eps, weight);
    if (*fz) {
      if (bound_opt->count() > 0)
        fcfg.ratio_bound = bound;
      return run_fuzz(fcfg, csv_path, dump_dir);
    }
    if (*vc)
      return run_verify_constants(tol);
  } catch (const rsched::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
