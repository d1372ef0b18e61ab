#include "overbook/pbin.hpp"

#include <algorithm>
#include <cmath>

namespace overbook {

namespace {

constexpr double kMassTol = 1e-10;
constexpr double kNegTol = -1e-15;
// below this trial count the pmf is built by exact trial-by-trial folding,
// above it by log-gamma evaluation
constexpr int kSmallTrials = 40;

}  // namespace

CountDistribution::CountDistribution() : pmf_(1, 1.0), lo_(0), hi_(0) {}

CountDistribution::CountDistribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw std::logic_error("empty pmf");
  double total = 0.0;
  lo_ = -1;
  hi_ = 0;
  for (int s = 0; s < static_cast<int>(pmf_.size()); ++s) {
    double v = pmf_[s];
    if (v < 0.0) {
      if (v < kNegTol) throw std::logic_error("pmf entry below -1e-15");
      pmf_[s] = 0.0;
      continue;
    }
    total += v;
    if (v > 0.0) {
      if (lo_ < 0) lo_ = s;
      hi_ = s;
    }
  }
  if (lo_ < 0) lo_ = 0;
  if (std::abs(total - 1.0) > kMassTol)
    throw std::logic_error("pmf mass drifted from 1 by more than 1e-10");
}

CountDistribution CountDistribution::point_mass(int at) {
  if (at < 0) throw std::invalid_argument("point mass below 0");
  std::vector<double> pmf(at + 1, 0.0);
  pmf[at] = 1.0;
  return CountDistribution(std::move(pmf));
}

double CountDistribution::tail_prob(long long m) const {
  if (m <= 0) return 1.0;
  if (m > hi_) return 0.0;
  double sum = 0.0;
  const int from = static_cast<int>(std::max<long long>(m, lo_));
  for (int s = hi_; s >= from; --s) sum += pmf_[s];
  return std::min(sum, 1.0);
}

double CountDistribution::expected_overage(long long cap) const {
  if (cap < 0) throw std::invalid_argument("capacity must be nonnegative");
  if (cap >= hi_) return 0.0;
  double sum = 0.0;
  const int from = static_cast<int>(std::max<long long>(cap + 1, lo_));
  for (int s = hi_; s >= from; --s) sum += (s - cap) * pmf_[s];
  return sum;
}

CountDistribution binomial_dist(int n, double p, int units) {
  if (n < 0) throw std::invalid_argument("trial count must be nonnegative");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of [0,1]");
  if (units < 1) throw std::invalid_argument("units per success must be >= 1");
  if (n == 0 || p == 0.0) return CountDistribution::point_mass(0);
  if (p == 1.0) return CountDistribution::point_mass(n * units);

  std::vector<double> counts(n + 1, 0.0);
  if (n <= kSmallTrials) {
    counts[0] = 1.0;
    const double q = 1.0 - p;
    for (int t = 0; t < n; ++t) {
      for (int s = t + 1; s >= 1; --s) counts[s] = counts[s] * q + counts[s - 1] * p;
      counts[0] *= q;
    }
  } else {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(n + 1.0);
    for (int s = 0; s <= n; ++s) {
      double lv = lgn - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0) + s * lp + (n - s) * lq;
      double v = std::exp(lv);
      counts[s] = v < kPmfDust ? 0.0 : v;
    }
  }

  if (units == 1) return CountDistribution(std::move(counts));
  std::vector<double> pmf(static_cast<size_t>(n) * units + 1, 0.0);
  for (int s = 0; s <= n; ++s) pmf[static_cast<size_t>(s) * units] = counts[s];
  return CountDistribution(std::move(pmf));
}

CountDistribution convolve(const CountDistribution& a, const CountDistribution& b) {
  std::vector<double> out(static_cast<size_t>(a.s_max()) + b.s_max() + 1, 0.0);
  const auto& pa = a.probs();
  const auto& pb = b.probs();
  for (int s = a.lo(); s <= a.hi(); ++s) {
    const double va = pa[s];
    if (va == 0.0) continue;
    for (int t = b.lo(); t <= b.hi(); ++t) out[s + t] += va * pb[t];
  }
  for (double& v : out)
    if (v < kPmfDust) v = 0.0;
  return CountDistribution(std::move(out));
}

CountDistribution dist_of(const Instance& inst, const AcceptanceVector& x) {
  if (static_cast<int>(x.size()) != inst.k) throw std::invalid_argument("acceptance vector length mismatch");
  CountDistribution acc;
  for (int j = 0; j < inst.k; ++j) {
    if (x[j] < 0) throw std::invalid_argument("negative acceptance count");
    if (x[j] == 0) continue;
    acc = convolve(acc, binomial_dist(x[j], inst.show_prob[j], inst.demand[j]));
  }
  return acc;
}

double tail_prob_with_binomial(const CountDistribution& base, int n, double p,
                               int units, long long threshold) {
  if (threshold <= base.lo()) return 1.0;
  if (n == 0 || p == 0.0) return base.tail_prob(threshold);
  if (p == 1.0) return base.tail_prob(threshold - static_cast<long long>(n) * units);

  // bin_tail[r] = P[Bin(n, p) >= r]
  CountDistribution bin = binomial_dist(n, p, 1);
  std::vector<double> bin_tail(n + 2, 0.0);
  for (int r = n; r >= 0; --r) bin_tail[r] = bin_tail[r + 1] + bin.probs()[r];

  double acc = 0.0;
  for (int s = base.lo(); s <= base.hi(); ++s) {
    const double w = base.probs()[s];
    if (w == 0.0) continue;
    long long need = threshold - s;
    if (need <= 0) {
      acc += w;
      continue;
    }
    long long successes = (need + units - 1) / units;
    if (successes > n) continue;
    acc += w * bin_tail[successes];
  }
  return std::min(acc, 1.0);
}

DistributionCache::DistributionCache(const Instance& inst)
    : inst_(&inst),
      counts_(inst.k, 0),
      per_type_(inst.k),
      combined_() {}

void DistributionCache::update(int type, int delta) {
  if (type < 0 || type >= inst_->k) throw std::invalid_argument("type out of range");
  if (delta != 1 && delta != -1) throw std::invalid_argument("cache updates move counts by +-1");
  int next = counts_[type] + delta;
  if (next < 0) throw std::invalid_argument("acceptance count underflow");
  counts_[type] = next;
  per_type_[type] = binomial_dist(next, inst_->show_prob[type], inst_->demand[type]);
  refold();
}

void DistributionCache::refold() {
  CountDistribution acc;
  for (int j = 0; j < inst_->k; ++j) {
    if (counts_[j] == 0) continue;
    acc = convolve(acc, per_type_[j]);
  }
  combined_ = acc;
}

}  // namespace overbook
