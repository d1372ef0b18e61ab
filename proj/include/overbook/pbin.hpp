// Exact distribution engine for the number of capacity units consumed by a
// set of accepted customers: unit-scaled binomials, their convolutions,
// censored tail expectations, and a per-type cache that amortizes the
// repeated re-solves done by online policies.
#pragma once

#include "overbook/core.hpp"

namespace overbook {

// entries this small are treated as exact zeros; keeps convolution windows
// narrow at long horizons without disturbing any of the stated tolerances
inline constexpr double kPmfDust = 1e-17;

// Probability mass table of a nonnegative integer consumption count.
// Immutable and shareable. Construction clamps entries in [-1e-15, 0) to 0
// and refuses masses that stray from 1 by more than 1e-10 (that signals a
// bug upstream, not float drift).
class CountDistribution {
 public:
  CountDistribution();  // point mass at zero
  explicit CountDistribution(std::vector<double> pmf);
  static CountDistribution point_mass(int at);

  int s_max() const { return static_cast<int>(pmf_.size()) - 1; }
  const std::vector<double>& probs() const { return pmf_; }
  double pmf(int s) const { return (s < 0 || s > s_max()) ? 0.0 : pmf_[s]; }
  // support window: entries outside [lo, hi] are zero
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  // P[X >= m]; 1 for m <= 0, 0 beyond the support, nonincreasing in m
  double tail_prob(long long m) const;
  // E[(X - cap)^+]
  double expected_overage(long long cap) const;

 private:
  std::vector<double> pmf_;
  int lo_ = 0;
  int hi_ = 0;
};

// Law of `units` * Bin(n, p): pmf[s * units] = C(n,s) p^s (1-p)^(n-s).
CountDistribution binomial_dist(int n, double p, int units = 1);

// Law of the independent sum.
CountDistribution convolve(const CountDistribution& a, const CountDistribution& b);

// Law of total consumption of acceptance vector x: sum_j d_j * Bin(x_j, p_j).
CountDistribution dist_of(const Instance& inst, const AcceptanceVector& x);

// P[base + units * Bin(n, p) >= threshold] without materializing the
// convolution; the workhorse behind the local-optimality conditions.
double tail_prob_with_binomial(const CountDistribution& base, int n, double p,
                               int units, long long threshold);

// Per-type binomial pmfs for a running acceptance vector plus their fold.
// Single-owner mutable: one cache per simulation worker. Counts move by +-1;
// removal re-folds the per-type tables rather than deconvolving.
class DistributionCache {
 public:
  explicit DistributionCache(const Instance& inst);

  void update(int type, int delta);  // delta must be +1 or -1
  const CountDistribution& combined() const { return combined_; }
  const CountDistribution& per_type(int j) const { return per_type_[j]; }
  const AcceptanceVector& counts() const { return counts_; }

 private:
  void refold();

  const Instance* inst_;
  AcceptanceVector counts_;
  std::vector<CountDistribution> per_type_;
  CountDistribution combined_;
};

}  // namespace overbook
