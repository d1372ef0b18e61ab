#include "overbook/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "overbook/rng.hpp"

namespace overbook {

namespace {

constexpr double kObjTieTol = 1e-12;

void check_context(const SolveContext& ctx) {
  if (ctx.inst == nullptr) throw std::invalid_argument("context has no instance");
  const int k = ctx.inst->k;
  if (static_cast<int>(ctx.x_past.size()) != k || static_cast<int>(ctx.future.size()) != k)
    throw std::invalid_argument("context vector length mismatch");
  for (int j = 0; j < k; ++j)
    if (ctx.x_past[j] < 0 || ctx.future[j] < 0)
      throw std::invalid_argument("negative count in context");
}

void check_feasible(const SolveContext& ctx, const AcceptanceVector& x) {
  check_context(ctx);
  if (static_cast<int>(x.size()) != ctx.inst->k)
    throw std::invalid_argument("acceptance vector length mismatch");
  for (int j = 0; j < ctx.inst->k; ++j)
    if (x[j] < 0 || x[j] > ctx.future[j])
      throw std::invalid_argument("acceptance vector infeasible");
}

AcceptanceVector totals(const SolveContext& ctx, const AcceptanceVector& x) {
  AcceptanceVector tot(ctx.inst->k);
  for (int j = 0; j < ctx.inst->k; ++j) tot[j] = ctx.x_past[j] + x[j];
  return tot;
}

double revenue(const Instance& inst, const AcceptanceVector& tot) {
  double rev = 0.0;
  for (int j = 0; j < inst.k; ++j) rev += inst.eff_value[j] * tot[j];
  return rev;
}

int last_positive(const AcceptanceVector& x) {
  int thr = 0;
  for (int j = 0; j < static_cast<int>(x.size()); ++j)
    if (x[j] > 0) thr = j;
  return thr;
}

long long sum_of(const AcceptanceVector& x) {
  long long s = 0;
  for (int v : x) s += v;
  return s;
}

}  // namespace

double objective(const SolveContext& ctx, const AcceptanceVector& x) {
  check_feasible(ctx, x);
  const AcceptanceVector tot = totals(ctx, x);
  return revenue(*ctx.inst, tot) - dist_of(*ctx.inst, tot).expected_overage(ctx.inst->capacity);
}

double objective(const SolveContext& ctx, const AcceptanceVector& x,
                 const CountDistribution& past_base) {
  check_feasible(ctx, x);
  const Instance& inst = *ctx.inst;
  CountDistribution dist = past_base;
  for (int j = 0; j < inst.k; ++j)
    if (x[j] > 0) dist = convolve(dist, binomial_dist(x[j], inst.show_prob[j], inst.demand[j]));
  return revenue(inst, totals(ctx, x)) - dist.expected_overage(inst.capacity);
}

std::vector<bool> local_opt_check(const SolveContext& ctx, const AcceptanceVector& x) {
  check_feasible(ctx, x);
  const Instance& inst = *ctx.inst;
  const int k = inst.k;
  const AcceptanceVector tot = totals(ctx, x);

  std::vector<CountDistribution> per_type(k);
  for (int j = 0; j < k; ++j)
    per_type[j] = binomial_dist(tot[j], inst.show_prob[j], inst.demand[j]);
  // prefix[j] folds types < j, suffix[j] folds types >= j
  std::vector<CountDistribution> prefix(k + 1), suffix(k + 1);
  for (int j = 0; j < k; ++j) prefix[j + 1] = convolve(prefix[j], per_type[j]);
  for (int j = k - 1; j >= 0; --j) suffix[j] = convolve(per_type[j], suffix[j + 1]);

  std::vector<bool> ok(k);
  for (int j = 0; j < k; ++j) {
    const long long threshold = static_cast<long long>(inst.capacity) - inst.demand[j] + 1;
    const double q = inst.critical_ratio[j];
    bool cond_keep = x[j] == ctx.future[j] || prefix[k].tail_prob(threshold) > q;
    bool cond_drop = x[j] == 0;
    if (!cond_drop) {
      CountDistribution others = convolve(prefix[j], suffix[j + 1]);
      cond_drop = tail_prob_with_binomial(others, tot[j] - 1, inst.show_prob[j],
                                          inst.demand[j], threshold) <= q;
    }
    ok[j] = cond_keep && cond_drop;
  }
  return ok;
}

int max_accept_count(const CountDistribution& base, double q, double p, int units,
                     int upper, int cap) {
  if (upper <= 0) return 0;
  if (q >= 1.0) return upper;  // acceptance always pays, including q = +inf
  const long long threshold = static_cast<long long>(cap) - units + 1;
  if (p <= 0.0) return base.tail_prob(threshold) <= q ? upper : 0;

  auto admissible = [&](int m) {
    return m == 0 || tail_prob_with_binomial(base, m - 1, p, units, threshold) <= q;
  };
  if (admissible(upper)) return upper;
  int lo = 0, hi = upper;  // admissible(lo), !admissible(hi)
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    (admissible(mid) ? lo : hi) = mid;
  }
  return lo;
}

IndexSolution solve_index(const SolveContext& ctx) {
  check_context(ctx);
  return solve_index(ctx, dist_of(*ctx.inst, ctx.x_past));
}

IndexSolution solve_index(const SolveContext& ctx, const CountDistribution& past_base) {
  check_context(ctx);
  const Instance& inst = *ctx.inst;
  AcceptanceVector x(inst.k, 0);
  CountDistribution base = past_base;
  bool stopped = false;
  for (int j = 0; j < inst.k; ++j) {
    if (inst.always_accept[j]) {
      x[j] = ctx.future[j];
      if (x[j] > 0)
        base = convolve(base, binomial_dist(x[j], inst.show_prob[j], inst.demand[j]));
      continue;
    }
    if (stopped) continue;
    int m = max_accept_count(base, inst.critical_ratio[j], inst.show_prob[j],
                             inst.demand[j], ctx.future[j], inst.capacity);
    x[j] = m;
    if (m == ctx.future[j]) {
      if (m > 0) base = convolve(base, binomial_dist(m, inst.show_prob[j], inst.demand[j]));
    } else {
      stopped = true;
    }
  }
  const int thr = last_positive(x);
  return IndexSolution{std::move(x), thr};
}

IndexSolution solve_index_exhaustive(const SolveContext& ctx, long long budget) {
  check_context(ctx);
  const Instance& inst = *ctx.inst;
  const int k = inst.k;
  long long evals = 0;
  for (int j = 0; j < k; ++j) evals += ctx.future[j] + 1;
  if (evals > budget) throw BudgetExceeded("index enumeration budget exceeded");

  // pass 1: best objective over all index shapes
  double best = -std::numeric_limits<double>::infinity();
  AcceptanceVector x(k, 0);
  for (int jt = 0; jt < k; ++jt) {
    std::fill(x.begin(), x.end(), 0);
    for (int j = 0; j < jt; ++j) x[j] = ctx.future[j];
    for (int m = 0; m <= ctx.future[jt]; ++m) {
      x[jt] = m;
      best = std::max(best, objective(ctx, x));
    }
  }
  // pass 2: among ties, maximal total acceptance, then smallest threshold
  AcceptanceVector best_x(k, 0);
  long long best_sum = -1;
  int best_thr = k;
  for (int jt = 0; jt < k; ++jt) {
    std::fill(x.begin(), x.end(), 0);
    for (int j = 0; j < jt; ++j) x[j] = ctx.future[j];
    for (int m = 0; m <= ctx.future[jt]; ++m) {
      x[jt] = m;
      if (objective(ctx, x) < best - kObjTieTol) continue;
      long long sum = sum_of(x);
      int thr = last_positive(x);
      if (sum > best_sum || (sum == best_sum && thr < best_thr)) {
        best_sum = sum;
        best_thr = thr;
        best_x = x;
      }
    }
  }
  return IndexSolution{std::move(best_x), best_thr};
}

namespace {

// Shared machinery for the two brute-force passes: depth-first walk of the
// box with the consumption pmf maintained in place, one scaled Bernoulli
// fold per visited point.
class BruteWalker {
 public:
  BruteWalker(const SolveContext& ctx) : ctx_(ctx), inst_(*ctx.inst) {
    int cap = 0;
    for (int j = 0; j < inst_.k; ++j)
      cap += inst_.demand[j] * (ctx.x_past[j] + ctx.future[j]);
    pmf_.assign(cap + 1, 0.0);
    const CountDistribution past = dist_of(inst_, ctx.x_past);
    std::copy(past.probs().begin(), past.probs().end(), pmf_.begin());
    lo_ = past.lo();
    hi_ = past.hi();
    x_.assign(inst_.k, 0);
    base_revenue_ = 0.0;
    for (int j = 0; j < inst_.k; ++j) base_revenue_ += inst_.eff_value[j] * ctx.x_past[j];
  }

  template <typename Visit>
  void walk(Visit&& visit) {
    descend(0, base_revenue_, visit);
  }

 private:
  template <typename Visit>
  void descend(int level, double rev, Visit& visit) {
    if (level == inst_.k) {
      visit(x_, rev - overage());
      return;
    }
    Snapshot save;  // window contents restored on exit
    save.lo = lo_;
    save.hi = hi_;
    save.pmf.assign(pmf_.begin() + lo_, pmf_.begin() + hi_ + 1);
    const double p = inst_.show_prob[level];
    const int d = inst_.demand[level];
    const double v = inst_.eff_value[level];
    for (int m = 0;; ++m) {
      x_[level] = m;
      descend(level + 1, rev + m * v, visit);
      if (m == ctx_.future[level]) break;
      add_trial(p, d);
    }
    std::fill(pmf_.begin() + lo_, pmf_.begin() + hi_ + 1, 0.0);
    lo_ = save.lo;
    hi_ = save.hi;
    std::copy(save.pmf.begin(), save.pmf.end(), pmf_.begin() + lo_);
    x_[level] = 0;
  }

  void add_trial(double p, int d) {
    const double q = 1.0 - p;
    for (int s = hi_ + d; s >= lo_; --s) {
      double v = (s <= hi_ ? pmf_[s] * q : 0.0) + (s - d >= lo_ ? pmf_[s - d] * p : 0.0);
      pmf_[s] = v < kPmfDust ? 0.0 : v;
    }
    hi_ += d;
    while (hi_ > lo_ && pmf_[hi_] == 0.0) --hi_;
    while (lo_ < hi_ && pmf_[lo_] == 0.0) ++lo_;
  }

  double overage() const {
    const int cap = inst_.capacity;
    if (cap >= hi_) return 0.0;
    double sum = 0.0;
    for (int s = hi_; s > std::max(cap, lo_ - 1); --s) sum += (s - cap) * pmf_[s];
    return sum;
  }

  struct Snapshot {
    std::vector<double> pmf;
    int lo = 0, hi = 0;
  };

  const SolveContext& ctx_;
  const Instance& inst_;
  std::vector<double> pmf_;
  int lo_ = 0, hi_ = 0;
  AcceptanceVector x_;
  double base_revenue_ = 0.0;
};

}  // namespace

AcceptanceVector solve_global_bruteforce(const SolveContext& ctx, long long budget) {
  check_context(ctx);
  long double box = 1.0L;
  for (int j = 0; j < ctx.inst->k; ++j) box *= ctx.future[j] + 1;
  if (box > static_cast<long double>(budget))
    throw BudgetExceeded("brute-force box exceeds evaluation budget");

  double best = -std::numeric_limits<double>::infinity();
  {
    BruteWalker walker(ctx);
    walker.walk([&](const AcceptanceVector&, double obj) { best = std::max(best, obj); });
  }
  AcceptanceVector best_x(ctx.inst->k, 0);
  long long best_sum = -1;
  {
    BruteWalker walker(ctx);
    walker.walk([&](const AcceptanceVector& x, double obj) {
      if (obj < best - kObjTieTol) return;
      long long sum = sum_of(x);
      if (sum > best_sum) {
        best_sum = sum;
        best_x = x;
      }
    });
  }
  return best_x;
}

namespace {

// one full ascent from a feasible start; returns the fixpoint in place
void ascend(const SolveContext& ctx, AcceptanceVector& x) {
  const Instance& inst = *ctx.inst;
  const int k = inst.k;
  long long pass_cap = k;
  for (int j = 0; j < k; ++j) pass_cap += ctx.future[j];
  for (long long pass = 0; pass < pass_cap; ++pass) {
    bool changed = false;
    for (int j = 0; j < k; ++j) {
      CountDistribution others;
      for (int n = 0; n < k; ++n) {
        int cnt = ctx.x_past[n] + (n == j ? 0 : x[n]);
        if (cnt > 0)
          others = convolve(others, binomial_dist(cnt, inst.show_prob[n], inst.demand[n]));
      }
      int m = max_accept_count(others, inst.critical_ratio[j], inst.show_prob[j],
                               inst.demand[j], ctx.future[j], inst.capacity);
      if (m != x[j]) {
        x[j] = m;
        changed = true;
      }
    }
    if (!changed) break;
  }
}

}  // namespace

AcceptanceVector solve_global_ascent(const SolveContext& ctx, int random_restarts,
                                     std::uint64_t seed) {
  check_context(ctx);
  const int k = ctx.inst->k;
  std::vector<AcceptanceVector> starts;
  starts.emplace_back(k, 0);
  starts.push_back(solve_index(ctx).x);
  Rng rng(seed);
  for (int r = 0; r < random_restarts; ++r) {
    AcceptanceVector x(k);
    for (int j = 0; j < k; ++j) x[j] = rng.uniform_int(ctx.future[j]);
    starts.push_back(std::move(x));
  }

  double best = -std::numeric_limits<double>::infinity();
  AcceptanceVector best_x(k, 0);
  for (auto& x : starts) {
    ascend(ctx, x);
    double obj = objective(ctx, x);
    if (obj > best + kObjTieTol) {
      best = obj;
      best_x = x;
    }
  }
  return best_x;
}

int sensitivity_shift(const SolveContext& ctx, const AcceptanceVector& x, int j, int i) {
  check_feasible(ctx, x);
  const Instance& inst = *ctx.inst;
  if (j < 0 || j >= inst.k || i < 0 || i >= inst.k)
    throw std::invalid_argument("type out of range");
  if (!local_opt_check(ctx, x)[j])
    throw std::invalid_argument("x is not locally optimal at j");
  if (x[i] + 1 > ctx.future[i]) throw std::invalid_argument("x + e_i infeasible");

  // everything except the future type-j customers, with the extra type-i one
  CountDistribution others;
  for (int n = 0; n < inst.k; ++n) {
    int cnt = ctx.x_past[n] + (n == j ? 0 : x[n]) + (n == i && i != j ? 1 : 0);
    if (cnt > 0) others = convolve(others, binomial_dist(cnt, inst.show_prob[n], inst.demand[n]));
  }
  int m = max_accept_count(others, inst.critical_ratio[j], inst.show_prob[j],
                           inst.demand[j], ctx.future[j], inst.capacity);
  int l = x[j] + (i == j ? 1 : 0) - m;
  if (l < 0) throw std::logic_error("locally optimal count increased after adding a trial");
  return l;
}

}  // namespace overbook
