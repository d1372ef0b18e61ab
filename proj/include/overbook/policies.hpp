// Online decision policies: the resolving index policy, the static LP
// bid-price rule and its dynamic-programming decomposition with aggregated
// acceptance fractions, and a naive expected-load baseline. Policy runs are
// pure functions of (instance, arrivals, seed, tables).
#pragma once

#include "overbook/offline.hpp"

namespace overbook {

struct Decision {
  int period;  // 1-based
  int type;    // canonical order
  bool accepted;
};

// Per-period decision log. x_series[t] holds the accepted counts after
// period t, with x_series[0] the zero vector.
struct PolicyTrace {
  std::vector<Decision> decisions;
  std::vector<AcceptanceVector> x_series;
  const AcceptanceVector& final_x() const { return x_series.back(); }
};

// Resolving index policy: samples one surrogate arrival vector up front,
// re-solves the index problem each period against the surrogate's remaining
// counts (plus the live arrival), and accepts when the solution takes at
// least half of the estimated remaining arrivals of the live type. The
// half-count comparison runs in integer arithmetic; always-accept types skip
// the solve entirely.
PolicyTrace run_online_index(const Instance& inst, const ArrivalSequence& a,
                             std::uint64_t seed);

struct DlpSolution {
  double pi_star = 0.0;         // dual price of the capacity constraint
  std::vector<char> accepts;    // static acceptance set
};

// Fractional-knapsack solution of the deterministic LP: fill capacity with
// expected consumption in critical-ratio order; the dual price is the ratio
// of the first type that no longer fits (0 if everything fits).
DlpSolution dlp_dual(const Instance& inst);

// Static rule: accept type j in every period iff its critical ratio is at
// least the dual price.
PolicyTrace run_dlp(const Instance& inst, const ArrivalSequence& a);

// Fraction of each type among customers the DLP rule accepts, estimated over
// `samples` independently sampled arrival sequences. Throws DegeneratePolicy
// when the rule accepts nobody.
std::vector<double> estimate_alpha(const Instance& inst, int samples, std::uint64_t seed);

// Value table of the decomposition DP over the total accepted count.
// u[t][x] is the optimal expected continuation value after t periods with x
// customers accepted; row `horizon` holds minus the expected overage of the
// aggregated show-up count.
struct DpdTable {
  std::vector<double> alpha;
  int horizon = 0;
  int capacity = 0;
  std::vector<std::vector<double>> u;
};

DpdTable dpd_table(const Instance& inst, const std::vector<double>& alpha);

// Aggregated show-up law for x accepted customers: per type a mixture of the
// floor/ceil binomials of x*alpha_j, types convolved.
CountDistribution aggregated_showups(const Instance& inst, const std::vector<double>& alpha,
                                     int accepted);

// Marginal-value rule on the scalar accepted count; accepts on ties.
PolicyTrace run_dpd(const Instance& inst, const ArrivalSequence& a, const DpdTable& table);

// Accept while expected consumption including the arrival stays within
// capacity. Deterministic.
PolicyTrace run_expected_greedy(const Instance& inst, const ArrivalSequence& a);

}  // namespace overbook
