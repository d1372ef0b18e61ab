// Objective evaluation (expected and realized), the mid-run clairvoyant
// coupling trace, replication-level loss statistics with common random
// numbers, and small regression helpers for scaling studies.
#pragma once

#include <functional>
#include <limits>

#include "overbook/policies.hpp"

namespace overbook {

// Canonical score of a final acceptance vector: expected revenue minus
// expected compensation.
double eval_expected(const Instance& inst, const AcceptanceVector& x);

// One Monte-Carlo draw of the same objective: sampled show-ups, realized
// refunds and compensation. Mean over seeds converges to eval_expected.
double eval_realized(const Instance& inst, const AcceptanceVector& x, std::uint64_t seed);

// Hybrid clairvoyant objectives along one path: h[t-1] is the optimal index
// objective in period t given the trace's decisions so far and the true
// remaining arrivals. Construction validates that h ends at the trace's own
// expected objective and that the per-period losses telescope.
struct CouplingTrace {
  std::vector<double> h;                // length T, h[t-1] = value in period t
  std::vector<double> per_period_loss;  // length T-1, entry t-2 = h[t-1] - h[t]
  int loss_event_count = 0;             // periods with a positive loss
};

CouplingTrace coupling_trace(const Instance& inst, const ArrivalSequence& a,
                             const PolicyTrace& trace);

enum class PolicyKind { OnlineIndex, Dlp, Dpd, ExpectedGreedy };
const char* policy_name(PolicyKind p);

enum class BenchmarkKind {
  ClairvoyantIndex,    // index solution on the true arrival counts
  ClairvoyantGeneral,  // brute force when the box fits the budget, else ascent
  ClairvoyantAscent,   // coordinate ascent always (lower bound on the optimum)
};
const char* benchmark_name(BenchmarkKind b);

struct ExperimentPoint {
  int horizon = 0;
  int capacity = 0;
  double param = std::numeric_limits<double>::quiet_NaN();  // sweep parameter
};

struct ReplicationConfig {
  std::function<Instance(const ExperimentPoint&)> make_instance;
  std::vector<ExperimentPoint> points;
  std::vector<PolicyKind> policies;
  BenchmarkKind benchmark = BenchmarkKind::ClairvoyantIndex;
  int replications = 100;
  std::uint64_t seed = 1;
  long long brute_budget = kBruteBudget;
  int alpha_samples = 100;  // DLP paths behind the DPD acceptance fractions
  int threads = 0;          // 0 = hardware concurrency
};

struct PolicyStats {
  PolicyKind policy{};
  std::vector<double> objectives;     // per replication, in replication order
  double mean_obj = 0, se_obj = 0;
  double mean_loss = 0, se_loss = 0;  // paired against the benchmark
  double rel_loss = 0;                // 1 - policy / benchmark
};

struct PointReport {
  ExperimentPoint point;
  std::vector<double> bench_objectives;  // per replication
  double bench_mean = 0, bench_se = 0;
  bool bench_heuristic = false;  // some path fell back to coordinate ascent
  std::vector<PolicyStats> policies;
};

struct LinearFit {
  double slope = 0, intercept = 0, se_slope = 0;
  int n = 0;
};

struct LossReport {
  BenchmarkKind benchmark{};
  int replications = 0;
  std::uint64_t seed = 0;
  std::vector<PointReport> points;
  // log-log slope of mean loss against the horizon, one per policy; filled
  // when the grid has at least two points
  std::vector<LinearFit> loss_scaling;
};

// Benchmarks and policies are evaluated on the same sampled paths; for a
// fixed seed the report is bit-reproducible regardless of thread count.
LossReport run_replications(const ReplicationConfig& config);

// Benchmark acceptance vector for one path (used by the runner and studies).
AcceptanceVector clairvoyant_solution(const Instance& inst, const ArrivalSequence& a,
                                      BenchmarkKind kind, long long budget,
                                      bool* used_heuristic = nullptr);

// mean / standard error of a sample
void mean_se(const std::vector<double>& xs, double* mean, double* se);

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);
// slope of log(y) against log(x); y floored at 1e-12 to keep logs finite
LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// index-parallel map with deterministic result placement
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace overbook
