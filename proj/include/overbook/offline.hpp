// Solvers and checkers for the clairvoyant admission problem: the exact
// objective, the per-type local-optimality conditions, newsvendor counts by
// binary search, the greedy index solver and its enumeration oracle, global
// brute force, cyclic coordinate ascent, and the single-customer
// sensitivity probe.
#pragma once

#include "overbook/pbin.hpp"

namespace overbook {

// Decision state for one solve: decisions already made (x_past) and the
// (estimated or real) per-type future arrival counts. Solvers are pure
// functions of a context; contexts are cheap to copy.
struct SolveContext {
  const Instance* inst = nullptr;
  AcceptanceVector x_past;
  std::vector<int> future;
};

// An acceptance vector with index structure: all future arrivals taken for
// types before the threshold, none after, a newsvendor count at it. The
// threshold is the smallest admissible one, so x[threshold] > 0 unless x
// is the zero vector.
struct IndexSolution {
  AcceptanceVector x;
  int threshold = 0;  // position in canonical type order
};

// Expected revenue minus expected compensation of past plus future
// acceptances. Throws if x is infeasible.
double objective(const SolveContext& ctx, const AcceptanceVector& x);
// Same, reusing a precomputed distribution of the past acceptances.
double objective(const SolveContext& ctx, const AcceptanceVector& x,
                 const CountDistribution& past_base);

// Entry j is true iff x is locally optimal at j: (i) x_j exhausts the future
// arrivals or the acceptance tail probability already exceeds the critical
// ratio, and (ii) x_j is 0 or dropping one type-j customer keeps the tail
// probability at or below the ratio. Unit demands reduce the tested
// threshold to the capacity itself.
std::vector<bool> local_opt_check(const SolveContext& ctx, const AcceptanceVector& x);

// Largest m in [0, upper] such that m == 0 or
// P[base + units*Bin(m-1, p) >= cap - units + 1] <= q, found by binary
// search; valid because that probability is nondecreasing in m.
int max_accept_count(const CountDistribution& base, double q, double p, int units,
                     int upper, int cap);

// Greedy threshold sweep in critical-ratio order; always-accept types take
// all their arrivals first. Returns an index solution locally optimal at its
// threshold.
IndexSolution solve_index(const SolveContext& ctx);
IndexSolution solve_index(const SolveContext& ctx, const CountDistribution& past_base);

// Enumerates every (threshold, count) pair and returns the best; objective
// ties go to larger total acceptance, then smaller threshold. Oracle for
// solve_index on small contexts.
IndexSolution solve_index_exhaustive(const SolveContext& ctx, long long budget = 1'000'000);

// Exact maximizer over the full box; among objective ties (within 1e-12)
// returns one with maximal total acceptance, which makes the result locally
// optimal at every type. Refuses boxes beyond the evaluation budget.
AcceptanceVector solve_global_bruteforce(const SolveContext& ctx, long long budget = kBruteBudget);

// Cyclic coordinate ascent, each coordinate reset to its locally optimal
// count, best over several starts (zero, index solution, random feasible
// points). The result is locally optimal at every type but NOT guaranteed
// globally optimal; treat its objective as a lower bound.
AcceptanceVector solve_global_ascent(const SolveContext& ctx, int random_restarts = 3,
                                     std::uint64_t seed = 0x0a5ce47ULL);

// Smallest l >= 0 such that x + e_i - l*e_j is locally optimal at j, i.e.
// how many type-j customers one extra type-i customer displaces. Requires x
// locally optimal at j and x + e_i feasible.
int sensitivity_shift(const SolveContext& ctx, const AcceptanceVector& x, int j, int i);

}  // namespace overbook
