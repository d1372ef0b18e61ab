// Command-line front end. See docs/cli.md for the full flag reference.
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "overbook/bench.hpp"
#include "overbook/rng.hpp"

namespace overbook {

namespace {

enum ExitCode {
  kOk = 0,
  kConfigError = 2,
  kBudgetError = 3,
  kDegenerateError = 4,
  kIoError = 5,
};

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "online-index") return PolicyKind::OnlineIndex;
  if (name == "dlp") return PolicyKind::Dlp;
  if (name == "dpd") return PolicyKind::Dpd;
  if (name == "greedy") return PolicyKind::ExpectedGreedy;
  throw std::invalid_argument("unknown policy: " + name);
}

BenchmarkKind parse_benchmark(const std::string& name) {
  if (name == "index") return BenchmarkKind::ClairvoyantIndex;
  if (name == "general") return BenchmarkKind::ClairvoyantGeneral;
  if (name == "ascent") return BenchmarkKind::ClairvoyantAscent;
  throw std::invalid_argument("unknown benchmark: " + name);
}

int run_solve(const std::string& instance_path, const std::string& mode,
              const std::string& nf_text, std::uint64_t seed, long long budget) {
  const Instance inst = normalize(read_instance_file(instance_path));
  std::vector<int> future;
  if (!nf_text.empty()) {
    std::vector<int> input_order = parse_counts(nf_text);
    if (static_cast<int>(input_order.size()) != inst.k)
      throw std::invalid_argument("--nf needs one count per type");
    future.resize(inst.k);
    for (int i = 0; i < inst.k; ++i) future[i] = input_order[inst.input_index[i]];
  } else {
    future = count_window(sample_arrivals(inst, seed), 1, inst.horizon, inst.k);
  }
  SolveContext ctx{&inst, AcceptanceVector(inst.k, 0), future};

  nlohmann::json out;
  out["mode"] = mode;
  out["nf"] = to_input_order(inst, future);
  if (mode == "index" || mode == "exhaustive-index") {
    IndexSolution sol =
        mode == "index" ? solve_index(ctx) : solve_index_exhaustive(ctx, budget);
    out["x"] = to_input_order(inst, sol.x);
    out["threshold_input_type"] = inst.input_index[sol.threshold] + 1;
    out["objective"] = objective(ctx, sol.x);
  } else if (mode == "brute") {
    AcceptanceVector x = solve_global_bruteforce(ctx, budget);
    out["x"] = to_input_order(inst, x);
    out["objective"] = objective(ctx, x);
  } else if (mode == "ascent") {
    AcceptanceVector x = solve_global_ascent(ctx, 3, mix_seed(seed, 0xa5ce));
    out["x"] = to_input_order(inst, x);
    out["objective"] = objective(ctx, x);
    out["lower_bound_only"] = true;
  } else {
    throw std::invalid_argument("unknown mode: " + mode);
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_simulate(const std::string& instance_path, const std::string& policy, int reps,
                 std::uint64_t seed, const std::string& benchmark, int alpha_samples,
                 long long budget, int threads, const std::string& out_dir,
                 const std::string& format) {
  const RawInstance raw = read_instance_file(instance_path);
  ReplicationConfig cfg;
  cfg.make_instance = [raw](const ExperimentPoint&) { return normalize(raw); };
  cfg.points = {{raw.horizon, raw.capacity}};
  cfg.policies = {parse_policy(policy)};
  cfg.benchmark = parse_benchmark(benchmark);
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.brute_budget = budget;
  cfg.alpha_samples = alpha_samples;
  cfg.threads = threads;
  const LossReport report = run_replications(cfg);

  const auto& pt = report.points.front();
  const auto& ps = pt.policies.front();
  std::printf("policy %s on %s: T=%d B=%d reps=%d\n", policy.c_str(), instance_path.c_str(),
              raw.horizon, raw.capacity, reps);
  std::printf("  mean objective     %.6f (se %.6f)\n", ps.mean_obj, ps.se_obj);
  std::printf("  benchmark (%s)%s %.6f (se %.6f)\n", benchmark.c_str(),
              pt.bench_heuristic ? " [ascent fallback]" : "", pt.bench_mean, pt.bench_se);
  std::printf("  mean loss          %.6f (se %.6f), relative %.6f\n", ps.mean_loss, ps.se_loss,
              ps.rel_loss);
  if (!out_dir.empty()) {
    Preset pre;
    pre.name = "instance";
    pre.description = "simulate run on " + instance_path;
    pre.outcome = "ad-hoc";
    pre.seed = seed;
    pre.points = cfg.points;
    pre.policies = cfg.policies;
    pre.benchmark = cfg.benchmark;
    emit_report(report, pre, {out_dir, format});
  }
  return kOk;
}

int run_preset(const std::string& name, int reps, std::uint64_t seed_override, bool has_seed,
               const std::string& out_dir, const std::string& format, long long budget,
               double epsilon, int threads, const std::string& benchmark_override) {
  Preset pre = preset(name, epsilon);
  if (has_seed) pre.seed = seed_override;
  if (!benchmark_override.empty()) pre.benchmark = parse_benchmark(benchmark_override);
  EmitOptions opts{out_dir, format};

  if (name == "exp_a_unconstrained" || name == "exp_a_constrained") {
    emit_switching(switching_study(pre, pre.seed, budget, threads), pre, opts);
  } else if (name == "lb_index") {
    emit_alternative_gap(alternative_gap_study(pre, reps, pre.seed, threads), pre, opts);
  } else {
    ReplicationConfig cfg;
    cfg.make_instance = [&pre](const ExperimentPoint& pt) { return preset_instance(pre, pt); };
    cfg.points = pre.points;
    cfg.policies = pre.policies;
    cfg.benchmark = pre.benchmark;
    cfg.replications = reps;
    cfg.seed = pre.seed;
    cfg.brute_budget = budget;
    cfg.threads = threads;
    emit_report(run_replications(cfg), pre, opts);
  }
  std::printf("wrote %s results to %s\n", name.c_str(), out_dir.c_str());
  return kOk;
}

int run_coupling(const std::string& name, int reps, std::uint64_t seed_override, bool has_seed,
                 const std::string& out_dir, int threads) {
  Preset pre = preset(name);
  if (has_seed) pre.seed = seed_override;
  auto rows = coupling_study(pre, reps, pre.seed, threads);
  emit_coupling(rows, pre, {out_dir, "csv"});
  for (const auto& row : rows)
    std::printf("T=%d B=%d loss events %.3f (se %.3f), total loss %.4f\n", row.horizon,
                row.capacity, row.mean_events, row.se_events, row.mean_total_loss);
  return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"admission-control simulation and optimization lab"};
  app.require_subcommand(1);

  std::string instance_path, mode = "index", nf_text, policy = "online-index";
  std::string benchmark = "index", benchmark_override, out_dir = "out", format = "csv";
  std::string preset_name;
  std::uint64_t seed = 1;
  bool has_seed = false;
  int reps = 200, alpha_samples = 100, threads = 0;
  long long budget = kBruteBudget;
  double epsilon = 0.1;

  auto* solve = app.add_subcommand("solve", "one-shot clairvoyant solve of an instance file");
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--mode", mode, "index | exhaustive-index | brute | ascent");
  solve->add_option("--nf", nf_text, "future arrival counts, comma separated, input order");
  solve->add_option("--seed", seed, "seed for the sampled arrival counts");
  solve->add_option("--budget", budget, "enumeration budget");

  auto* simulate = app.add_subcommand("simulate", "replicate one policy on one instance");
  simulate->add_option("--instance", instance_path, "instance JSON file")->required();
  simulate->add_option("--policy", policy, "online-index | dlp | dpd | greedy");
  simulate->add_option("--reps", reps, "replication count");
  simulate->add_option("--seed", seed, "base seed");
  simulate->add_option("--benchmark", benchmark, "index | general | ascent");
  simulate->add_option("--alpha-samples", alpha_samples, "DLP paths behind the DPD fractions");
  simulate->add_option("--budget", budget, "enumeration budget");
  simulate->add_option("--threads", threads, "worker threads (0 = auto)");
  simulate->add_option("--out-dir", out_dir, "also write CSV/manifest here");
  simulate->add_option("--format", format, "csv | json");
  bool sim_emit = false;
  simulate->add_flag("--emit", sim_emit, "write result files to --out-dir");

  auto* run = app.add_subcommand("run", "full experiment for a preset");
  run->add_option("preset", preset_name, "preset name (see `overbook presets`)")->required();
  run->add_option("--reps", reps, "replications per grid point");
  auto* run_seed = run->add_option("--seed", seed, "override the preset seed");
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--format", format, "csv | json");
  run->add_option("--budget", budget, "enumeration budget");
  run->add_option("--epsilon", epsilon, "dpd_counter low-value revenue");
  run->add_option("--threads", threads, "worker threads (0 = auto)");
  run->add_option("--benchmark", benchmark_override, "override: index | general | ascent");

  int coupling_reps = 100;  // coupling costs one solve per period per path
  auto* coupling = app.add_subcommand("coupling", "per-period loss-event diagnostic");
  coupling->add_option("preset", preset_name, "preset name")->required();
  coupling->add_option("--reps", coupling_reps, "paths per grid point");
  auto* coup_seed = coupling->add_option("--seed", seed, "override the preset seed");
  coupling->add_option("--out-dir", out_dir, "output directory");
  coupling->add_option("--threads", threads, "worker threads (0 = auto)");

  auto* presets = app.add_subcommand("presets", "list preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kConfigError;
  }

  try {
    if (solve->parsed()) return run_solve(instance_path, mode, nf_text, seed, budget);
    if (simulate->parsed())
      return run_simulate(instance_path, policy, reps, seed, benchmark, alpha_samples, budget,
                          threads, sim_emit ? out_dir : "", format);
    if (run->parsed()) {
      has_seed = run_seed->count() > 0;
      return run_preset(preset_name, reps, seed, has_seed, out_dir, format, budget, epsilon,
                        threads, benchmark_override);
    }
    if (coupling->parsed()) {
      has_seed = coup_seed->count() > 0;
      return run_coupling(preset_name, coupling_reps, seed, has_seed, out_dir, threads);
    }
    if (presets->parsed()) {
      for (const auto& n : preset_names()) std::cout << n << "\n";
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBudgetError;
  } catch (const DegeneratePolicy& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDegenerateError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kConfigError;
}

}  // namespace overbook
