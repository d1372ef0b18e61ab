#include "overbook/policies.hpp"

#include <algorithm>
#include <cmath>

#include "overbook/rng.hpp"

namespace overbook {

namespace {

void check_arrivals(const Instance& inst, const ArrivalSequence& a) {
  if (static_cast<int>(a.size()) != inst.horizon)
    throw std::invalid_argument("arrival sequence length must equal the horizon");
  for (int j : a)
    if (j < 0 || j >= inst.k) throw std::invalid_argument("arrival type out of range");
}

struct TraceBuilder {
  explicit TraceBuilder(int k) {
    trace.x_series.emplace_back(k, 0);
  }
  void record(int period, int type, bool accepted) {
    AcceptanceVector x = trace.x_series.back();
    if (accepted) ++x[type];
    trace.decisions.push_back({period, type, accepted});
    trace.x_series.push_back(std::move(x));
  }
  PolicyTrace trace;
};

}  // namespace

PolicyTrace run_online_index(const Instance& inst, const ArrivalSequence& a,
                             std::uint64_t seed) {
  check_arrivals(inst, a);
  const ArrivalSequence surrogate = sample_arrivals(inst, seed);
  // remaining[j] = surrogate arrivals of type j strictly after the current period
  std::vector<int> remaining = count_window(surrogate, 1, inst.horizon, inst.k);
  remaining[surrogate[0]] -= 1;

  DistributionCache cache(inst);
  TraceBuilder out(inst.k);
  AcceptanceVector x(inst.k, 0);
  std::vector<int> nf(inst.k);
  for (int t = 1; t <= inst.horizon; ++t) {
    const int j = a[t - 1];
    bool accept;
    if (inst.always_accept[j]) {
      accept = true;
    } else {
      nf = remaining;
      nf[j] += 1;
      IndexSolution sol = solve_index(SolveContext{&inst, x, nf}, cache.combined());
      accept = 2 * sol.x[j] >= nf[j];
    }
    if (accept) {
      ++x[j];
      cache.update(j, +1);
    }
    out.record(t, j, accept);
    if (t < inst.horizon) remaining[surrogate[t]] -= 1;
  }
  return std::move(out.trace);
}

DlpSolution dlp_dual(const Instance& inst) {
  DlpSolution sol;
  sol.accepts.assign(inst.k, 0);
  double remaining = inst.capacity;
  for (int j = 0; j < inst.k; ++j) {
    const double consume =
        static_cast<double>(inst.horizon) * inst.arrival_prob[j] * inst.show_prob[j] * inst.demand[j];
    if (consume <= remaining) {
      remaining -= consume;
      continue;
    }
    sol.pi_star = inst.critical_ratio[j];
    break;
  }
  for (int j = 0; j < inst.k; ++j) sol.accepts[j] = inst.critical_ratio[j] >= sol.pi_star;
  return sol;
}

PolicyTrace run_dlp(const Instance& inst, const ArrivalSequence& a) {
  check_arrivals(inst, a);
  const DlpSolution sol = dlp_dual(inst);
  TraceBuilder out(inst.k);
  for (int t = 1; t <= inst.horizon; ++t) {
    const int j = a[t - 1];
    out.record(t, j, sol.accepts[j] != 0);
  }
  return std::move(out.trace);
}

std::vector<double> estimate_alpha(const Instance& inst, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample path");
  std::vector<long long> accepted(inst.k, 0);
  long long total = 0;
  for (int m = 0; m < samples; ++m) {
    const ArrivalSequence a = sample_arrivals(inst, mix_seed(seed, m));
    const PolicyTrace trace = run_dlp(inst, a);
    for (int j = 0; j < inst.k; ++j) {
      accepted[j] += trace.final_x()[j];
      total += trace.final_x()[j];
    }
  }
  if (total == 0)
    throw DegeneratePolicy("DLP rule accepted nobody; acceptance fractions undefined");
  std::vector<double> alpha(inst.k);
  for (int j = 0; j < inst.k; ++j) alpha[j] = static_cast<double>(accepted[j]) / total;
  return alpha;
}

CountDistribution aggregated_showups(const Instance& inst, const std::vector<double>& alpha,
                                     int accepted) {
  CountDistribution dist;
  for (int j = 0; j < inst.k; ++j) {
    const double xa = accepted * alpha[j];
    const int fl = static_cast<int>(std::floor(xa));
    const double w = fl + 1 - xa;  // weight on the floor binomial
    CountDistribution lower = binomial_dist(fl, inst.show_prob[j], inst.demand[j]);
    if (w >= 1.0) {
      dist = convolve(dist, lower);
      continue;
    }
    CountDistribution upper = binomial_dist(fl + 1, inst.show_prob[j], inst.demand[j]);
    std::vector<double> mixed(upper.s_max() + 1, 0.0);
    for (int s = 0; s <= lower.s_max(); ++s) mixed[s] = w * lower.probs()[s];
    for (int s = 0; s <= upper.s_max(); ++s) mixed[s] += (1.0 - w) * upper.probs()[s];
    dist = convolve(dist, CountDistribution(std::move(mixed)));
  }
  return dist;
}

DpdTable dpd_table(const Instance& inst, const std::vector<double>& alpha) {
  if (static_cast<int>(alpha.size()) != inst.k)
    throw std::invalid_argument("alpha length mismatch");
  double alpha_sum = 0.0;
  for (double a : alpha) {
    if (a < 0.0) throw std::invalid_argument("alpha entries must be nonnegative");
    alpha_sum += a;
  }
  if (std::abs(alpha_sum - 1.0) > 1e-10)
    throw std::invalid_argument("alpha must sum to 1");

  DpdTable table;
  table.alpha = alpha;
  table.horizon = inst.horizon;
  table.capacity = inst.capacity;
  const int horizon = inst.horizon;
  table.u.assign(horizon + 1, std::vector<double>(horizon + 1, 0.0));
  for (int x = 0; x <= horizon; ++x)
    table.u[horizon][x] = -aggregated_showups(inst, alpha, x).expected_overage(inst.capacity);
  for (int t = horizon - 1; t >= 0; --t) {
    for (int x = 0; x <= horizon; ++x) {
      double value = 0.0;
      const double reject = table.u[t + 1][x];
      for (int j = 0; j < inst.k; ++j) {
        // x == horizon is unreachable before the final period
        const double accept = x < horizon ? inst.eff_value[j] + table.u[t + 1][x + 1] : reject;
        value += inst.arrival_prob[j] * std::max(accept, reject);
      }
      table.u[t][x] = value;
    }
  }
  return table;
}

PolicyTrace run_dpd(const Instance& inst, const ArrivalSequence& a, const DpdTable& table) {
  check_arrivals(inst, a);
  if (table.horizon != inst.horizon || table.capacity != inst.capacity)
    throw std::invalid_argument("DPD table built for a different instance");
  TraceBuilder out(inst.k);
  int total = 0;
  for (int t = 1; t <= inst.horizon; ++t) {
    const int j = a[t - 1];
    // u[t] is the value after this period's decision; accept on ties
    const double marginal = table.u[t][total] - table.u[t][total + 1];
    const bool accept = inst.eff_value[j] >= marginal;
    if (accept) ++total;
    out.record(t, j, accept);
  }
  return std::move(out.trace);
}

PolicyTrace run_expected_greedy(const Instance& inst, const ArrivalSequence& a) {
  check_arrivals(inst, a);
  TraceBuilder out(inst.k);
  double load = 0.0;
  for (int t = 1; t <= inst.horizon; ++t) {
    const int j = a[t - 1];
    const double step = inst.demand[j] * inst.show_prob[j];
    const bool accept = load + step <= inst.capacity;
    if (accept) load += step;
    out.record(t, j, accept);
  }
  return std::move(out.trace);
}

}  // namespace overbook
