#include "overbook/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "overbook/rng.hpp"

namespace overbook {

namespace {

constexpr double kProbSumTol = 1e-12;

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Instance normalize(const RawInstance& raw) {
  const size_t k = raw.lambda.size();
  check(k >= 1, "instance needs at least one type");
  check(raw.value.size() == k && raw.show_prob.size() == k,
        "lambda, v, p must have equal length");
  check(raw.refund.empty() || raw.refund.size() == k, "refund length mismatch");
  check(raw.demand.empty() || raw.demand.size() == k, "demand length mismatch");
  check(raw.capacity >= 0, "capacity must be nonnegative");
  check(raw.horizon >= 1, "horizon must be positive");

  std::vector<double> refund = raw.refund.empty() ? std::vector<double>(k, 0.0) : raw.refund;
  std::vector<int> demand = raw.demand.empty() ? std::vector<int>(k, 1) : raw.demand;

  double lambda_sum = 0.0;
  for (size_t j = 0; j < k; ++j) {
    check(raw.lambda[j] > 0.0, "arrival probabilities must be positive");
    check(raw.show_prob[j] >= 0.0 && raw.show_prob[j] <= 1.0, "show probability out of [0,1]");
    check(raw.value[j] >= 0.0 && raw.value[j] < 1.0, "value must lie in [0,1)");
    check(refund[j] == 0.0 || (refund[j] > 0.0 && refund[j] < raw.value[j]),
          "refund must be 0 or in (0, v)");
    check(demand[j] >= 1, "demand must be at least 1");
    lambda_sum += raw.lambda[j];
  }
  check(std::abs(lambda_sum - 1.0) <= kProbSumTol, "arrival probabilities must sum to 1");

  std::vector<double> eff(k), ratio(k);
  for (size_t j = 0; j < k; ++j) {
    eff[j] = raw.value[j] - refund[j] * (1.0 - raw.show_prob[j]);
    ratio[j] = raw.show_prob[j] > 0.0
                   ? eff[j] / (demand[j] * raw.show_prob[j])
                   : std::numeric_limits<double>::infinity();
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    if (eff[a] != eff[b]) return eff[a] > eff[b];
    if (raw.show_prob[a] != raw.show_prob[b]) return raw.show_prob[a] > raw.show_prob[b];
    return a < b;
  });

  Instance inst;
  inst.k = static_cast<int>(k);
  inst.capacity = raw.capacity;
  inst.horizon = raw.horizon;
  inst.arrival_prob.resize(k);
  inst.value.resize(k);
  inst.show_prob.resize(k);
  inst.refund.resize(k);
  inst.demand.resize(k);
  inst.eff_value.resize(k);
  inst.critical_ratio.resize(k);
  inst.always_accept.resize(k);
  inst.input_index.resize(k);
  inst.cum_arrival.resize(k);
  for (size_t i = 0; i < k; ++i) {
    int j = order[i];
    inst.arrival_prob[i] = raw.lambda[j];
    inst.value[i] = raw.value[j];
    inst.show_prob[i] = raw.show_prob[j];
    inst.refund[i] = refund[j];
    inst.demand[i] = demand[j];
    inst.eff_value[i] = eff[j];
    inst.critical_ratio[i] = ratio[j];
    inst.always_accept[i] = ratio[j] >= 1.0;
    inst.input_index[i] = j;
  }
  double cum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    cum += inst.arrival_prob[i];
    inst.cum_arrival[i] = cum;
  }
  inst.cum_arrival[k - 1] = 1.0;
  return inst;
}

RawInstance to_raw(const Instance& inst) {
  RawInstance raw;
  raw.lambda = inst.arrival_prob;
  raw.value = inst.value;
  raw.show_prob = inst.show_prob;
  raw.refund = inst.refund;
  raw.demand = inst.demand;
  raw.capacity = inst.capacity;
  raw.horizon = inst.horizon;
  return raw;
}

std::vector<int> count_window(const ArrivalSequence& a, int t1, int t2, int k) {
  const int horizon = static_cast<int>(a.size());
  check(1 <= t1 && t1 <= t2 && t2 <= horizon, "count window out of range");
  std::vector<int> counts(k, 0);
  for (int t = t1; t <= t2; ++t) {
    int j = a[t - 1];
    check(j >= 0 && j < k, "arrival type out of range");
    ++counts[j];
  }
  return counts;
}

ArrivalSequence sample_arrivals(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  ArrivalSequence a(inst.horizon);
  for (int t = 0; t < inst.horizon; ++t) a[t] = rng.categorical(inst.cum_arrival);
  return a;
}

RawInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad instance JSON: ") + e.what());
  }
  RawInstance raw;
  try {
    raw.lambda = j.at("lambda").get<std::vector<double>>();
    raw.value = j.at("v").get<std::vector<double>>();
    raw.show_prob = j.at("p").get<std::vector<double>>();
    if (j.contains("r")) raw.refund = j["r"].get<std::vector<double>>();
    if (j.contains("d")) raw.demand = j["d"].get<std::vector<int>>();
    raw.capacity = j.at("B").get<int>();
    raw.horizon = j.at("T").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad instance JSON: ") + e.what());
  }
  return raw;
}

std::string instance_to_json(const RawInstance& raw) {
  nlohmann::json j;
  j["lambda"] = raw.lambda;
  j["v"] = raw.value;
  j["p"] = raw.show_prob;
  if (!raw.refund.empty()) j["r"] = raw.refund;
  if (!raw.demand.empty()) j["d"] = raw.demand;
  j["B"] = raw.capacity;
  j["T"] = raw.horizon;
  return j.dump(2);
}

RawInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str());
}

void write_instance_file(const RawInstance& raw, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file: " + path);
  out << instance_to_json(raw) << "\n";
}

}  // namespace overbook
