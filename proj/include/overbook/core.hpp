// Problem instances for capacity-controlled admission with no-shows:
// validation, normalization to the canonical critical-ratio ordering, and
// arrival-sequence primitives shared by solvers, policies and the harness.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace overbook {

// budget guard for the exact solvers: enumeration refuses to run past this
inline constexpr long long kBruteBudget = 20'000'000;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePolicy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-type acceptance counts, in canonical (sorted) type order.
using AcceptanceVector = std::vector<int>;

// Arrival types per period; entry t-1 holds the period-t arrival (0-based types).
using ArrivalSequence = std::vector<int>;

// Instance fields exactly as they appear in an instance file (input order).
struct RawInstance {
  std::vector<double> lambda;     // arrival probabilities, sum to 1
  std::vector<double> value;      // revenue per accepted customer, v < 1
  std::vector<double> show_prob;  // probability an accepted customer shows up
  std::vector<double> refund;     // refund per no-show; empty means all zero
  std::vector<int> demand;        // capacity units per customer; empty means all one
  int capacity = 0;
  int horizon = 1;
};

// Canonical instance: types sorted by critical ratio descending, ties broken
// by larger effective value, then larger show probability, then input
// position. Immutable after construction; safe to share across workers.
struct Instance {
  int k = 0;
  std::vector<double> arrival_prob;
  std::vector<double> value;
  std::vector<double> show_prob;
  std::vector<double> refund;
  std::vector<int> demand;
  int capacity = 0;
  int horizon = 1;

  // derived
  std::vector<double> eff_value;       // v - r * (1 - p)
  std::vector<double> critical_ratio;  // eff_value / (d * p); +inf when p == 0
  std::vector<char> always_accept;     // critical ratio >= 1
  std::vector<int> input_index;        // sorted position -> input position
  std::vector<double> cum_arrival;     // cumulative arrival probabilities
};

// Validates field ranges and produces the canonical ordering.
// Throws std::invalid_argument on bad input.
Instance normalize(const RawInstance& raw);

// Sorted instance re-expressed as raw fields (sorted order becomes input order).
RawInstance to_raw(const Instance& inst);

// Maps a per-type vector from canonical order back to input order.
template <typename T>
std::vector<T> to_input_order(const Instance& inst, const std::vector<T>& sorted) {
  std::vector<T> out(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) out[inst.input_index[i]] = sorted[i];
  return out;
}

// Number of arrivals of each type in periods [t1, t2] (1-based, inclusive).
std::vector<int> count_window(const ArrivalSequence& a, int t1, int t2, int k);

// One iid categorical arrival per period, reproducible from the seed.
ArrivalSequence sample_arrivals(const Instance& inst, std::uint64_t seed);

// Instance file format: JSON {lambda:[...], v:[...], p:[...], r:[...]?,
// d:[...]?, B:int, T:int}, arrays in input (unsorted) order.
RawInstance read_instance_file(const std::string& path);
void write_instance_file(const RawInstance& raw, const std::string& path);
RawInstance parse_instance_json(const std::string& text);
std::string instance_to_json(const RawInstance& raw);

}  // namespace overbook
