#include "overbook/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "overbook/rng.hpp"

namespace overbook {

namespace {

constexpr double kCouplingTol = 1e-9;
// per-period differences below this are float dust, not loss events
constexpr double kLossEventTol = 1e-9;

}  // namespace

double eval_expected(const Instance& inst, const AcceptanceVector& x) {
  double rev = 0.0;
  for (int j = 0; j < inst.k; ++j) rev += inst.eff_value[j] * x[j];
  return rev - dist_of(inst, x).expected_overage(inst.capacity);
}

double eval_realized(const Instance& inst, const AcceptanceVector& x, std::uint64_t seed) {
  if (static_cast<int>(x.size()) != inst.k)
    throw std::invalid_argument("acceptance vector length mismatch");
  Rng rng(seed);
  double value = 0.0;
  long long used = 0;
  for (int j = 0; j < inst.k; ++j) {
    if (x[j] < 0) throw std::invalid_argument("negative acceptance count");
    value += inst.value[j] * x[j];
    for (int c = 0; c < x[j]; ++c) {
      if (rng.bernoulli(inst.show_prob[j]))
        used += inst.demand[j];
      else
        value -= inst.refund[j];
    }
  }
  if (used > inst.capacity) value -= static_cast<double>(used - inst.capacity);
  return value;
}

CouplingTrace coupling_trace(const Instance& inst, const ArrivalSequence& a,
                             const PolicyTrace& trace) {
  const int horizon = inst.horizon;
  if (static_cast<int>(a.size()) != horizon ||
      static_cast<int>(trace.decisions.size()) != horizon ||
      static_cast<int>(trace.x_series.size()) != horizon + 1)
    throw std::invalid_argument("trace and arrivals disagree on the horizon");
  for (int t = 1; t <= horizon; ++t) {
    const Decision& d = trace.decisions[t - 1];
    if (d.type != a[t - 1]) throw std::invalid_argument("trace decisions do not match arrivals");
    for (int j = 0; j < inst.k; ++j) {
      int expect = trace.x_series[t - 1][j] + (d.accepted && j == d.type ? 1 : 0);
      if (trace.x_series[t][j] != expect)
        throw std::invalid_argument("trace state updates are inconsistent");
    }
  }

  CouplingTrace out;
  out.h.resize(horizon);
  std::vector<int> nf = count_window(a, 1, horizon, inst.k);
  DistributionCache cache(inst);
  for (int t = 1; t <= horizon; ++t) {
    SolveContext ctx{&inst, trace.x_series[t - 1], nf};
    IndexSolution sol = solve_index(ctx, cache.combined());
    out.h[t - 1] = objective(ctx, sol.x, cache.combined());
    const Decision& d = trace.decisions[t - 1];
    if (d.accepted) cache.update(d.type, +1);
    nf[a[t - 1]] -= 1;
  }

  double telescoped = 0.0;
  out.per_period_loss.resize(horizon - 1);
  for (int t = 2; t <= horizon; ++t) {
    double diff = out.h[t - 2] - out.h[t - 1];
    out.per_period_loss[t - 2] = diff;
    telescoped += diff;
    if (diff > kLossEventTol) ++out.loss_event_count;
  }
  if (std::abs((out.h.front() - out.h.back()) - telescoped) > kCouplingTol)
    throw std::logic_error("per-period losses do not telescope");
  if (std::abs(out.h.back() - eval_expected(inst, trace.final_x())) > kCouplingTol)
    throw std::logic_error("final coupling value differs from the trace objective");
  return out;
}

const char* policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::OnlineIndex: return "online-index";
    case PolicyKind::Dlp: return "dlp";
    case PolicyKind::Dpd: return "dpd";
    case PolicyKind::ExpectedGreedy: return "greedy";
  }
  return "?";
}

const char* benchmark_name(BenchmarkKind b) {
  switch (b) {
    case BenchmarkKind::ClairvoyantIndex: return "clairvoyant-index";
    case BenchmarkKind::ClairvoyantGeneral: return "clairvoyant-general";
    case BenchmarkKind::ClairvoyantAscent: return "clairvoyant-ascent";
  }
  return "?";
}

AcceptanceVector clairvoyant_solution(const Instance& inst, const ArrivalSequence& a,
                                      BenchmarkKind kind, long long budget,
                                      bool* used_heuristic) {
  std::vector<int> counts = count_window(a, 1, inst.horizon, inst.k);
  SolveContext ctx{&inst, AcceptanceVector(inst.k, 0), counts};
  if (used_heuristic) *used_heuristic = false;
  switch (kind) {
    case BenchmarkKind::ClairvoyantIndex:
      return solve_index(ctx).x;
    case BenchmarkKind::ClairvoyantAscent:
      if (used_heuristic) *used_heuristic = true;
      return solve_global_ascent(ctx);
    case BenchmarkKind::ClairvoyantGeneral: {
      long double box = 1.0L;
      for (int j = 0; j < inst.k; ++j) box *= counts[j] + 1;
      if (box <= static_cast<long double>(budget)) return solve_global_bruteforce(ctx, budget);
      if (used_heuristic) *used_heuristic = true;
      return solve_global_ascent(ctx);
    }
  }
  throw std::logic_error("unknown benchmark");
}

void mean_se(const std::vector<double>& xs, double* mean, double* se) {
  const int n = static_cast<int>(xs.size());
  double m = 0.0;
  for (double v : xs) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : xs) ss += (v - m) * (v - m);
  *mean = m;
  *se = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  if (n < 2 || ys.size() != xs.size()) throw std::invalid_argument("need two points to fit");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("degenerate x values");
  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (int i = 0; i < n; ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += r * r;
  }
  fit.se_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  return fit;
}

LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(std::max(ys[i], 1e-12));
  }
  return fit_line(lx, ly);
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, 32);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

struct RepResult {
  double bench = 0;
  bool heuristic = false;
  std::vector<double> policy_obj;
};

}  // namespace

LossReport run_replications(const ReplicationConfig& config) {
  if (!config.make_instance) throw std::invalid_argument("config needs an instance generator");
  if (config.replications < 1) throw std::invalid_argument("need at least one replication");

  LossReport report;
  report.benchmark = config.benchmark;
  report.replications = config.replications;
  report.seed = config.seed;

  for (size_t pi = 0; pi < config.points.size(); ++pi) {
    const ExperimentPoint& point = config.points[pi];
    const Instance inst = config.make_instance(point);

    DpdTable dpd;
    bool needs_dpd = std::count(config.policies.begin(), config.policies.end(),
                                PolicyKind::Dpd) > 0;
    if (needs_dpd) {
      std::vector<double> alpha =
          estimate_alpha(inst, config.alpha_samples, mix_seed(config.seed, pi, 0xa1f0));
      dpd = dpd_table(inst, alpha);
    }

    std::vector<RepResult> results(config.replications);
    parallel_for(config.replications, config.threads, [&](int r) {
      const std::uint64_t path_seed = mix_seed(config.seed, pi, r);
      const ArrivalSequence a = sample_arrivals(inst, path_seed);
      RepResult& res = results[r];
      res.policy_obj.resize(config.policies.size());
      res.bench = eval_expected(
          inst, clairvoyant_solution(inst, a, config.benchmark, config.brute_budget,
                                     &res.heuristic));
      for (size_t p = 0; p < config.policies.size(); ++p) {
        PolicyTrace trace;
        switch (config.policies[p]) {
          case PolicyKind::OnlineIndex:
            trace = run_online_index(inst, a, mix_seed(path_seed, 0x0911));
            break;
          case PolicyKind::Dlp:
            trace = run_dlp(inst, a);
            break;
          case PolicyKind::Dpd:
            trace = run_dpd(inst, a, dpd);
            break;
          case PolicyKind::ExpectedGreedy:
            trace = run_expected_greedy(inst, a);
            break;
        }
        res.policy_obj[p] = eval_expected(inst, trace.final_x());
      }
    });

    PointReport pr;
    pr.point = point;
    pr.bench_objectives.resize(config.replications);
    for (int r = 0; r < config.replications; ++r) {
      pr.bench_objectives[r] = results[r].bench;
      pr.bench_heuristic = pr.bench_heuristic || results[r].heuristic;
    }
    mean_se(pr.bench_objectives, &pr.bench_mean, &pr.bench_se);
    for (size_t p = 0; p < config.policies.size(); ++p) {
      PolicyStats st;
      st.policy = config.policies[p];
      st.objectives.resize(config.replications);
      std::vector<double> loss(config.replications);
      for (int r = 0; r < config.replications; ++r) {
        st.objectives[r] = results[r].policy_obj[p];
        loss[r] = results[r].bench - st.objectives[r];
      }
      mean_se(st.objectives, &st.mean_obj, &st.se_obj);
      mean_se(loss, &st.mean_loss, &st.se_loss);
      st.rel_loss = pr.bench_mean != 0.0 ? st.mean_loss / pr.bench_mean : 0.0;
      pr.policies.push_back(std::move(st));
    }
    report.points.push_back(std::move(pr));
  }

  if (report.points.size() >= 2) {
    std::vector<double> ts;
    for (const auto& pt : report.points) ts.push_back(pt.point.horizon);
    const bool scales = *std::min_element(ts.begin(), ts.end()) <
                        *std::max_element(ts.begin(), ts.end());
    for (size_t p = 0; scales && p < config.policies.size(); ++p) {
      std::vector<double> losses;
      for (const auto& pt : report.points) losses.push_back(pt.policies[p].mean_loss);
      report.loss_scaling.push_back(fit_loglog(ts, losses));
    }
  }
  return report;
}

}  // namespace overbook
