#include "overbook/bench.hpp"

#include <algorithm>
#include <cmath>

#include "overbook/rng.hpp"

namespace overbook {

namespace {

RawInstance exp_a_raw(int capacity, int horizon) {
  RawInstance raw;
  raw.lambda = {0.3, 0.2, 0.5};
  raw.value = {0.044, 0.1, 0.06};
  raw.show_prob = {0.2, 0.5, 0.3};
  raw.capacity = capacity;
  raw.horizon = horizon;
  return raw;
}

RawInstance exp_b_raw(int capacity, int horizon) {
  RawInstance raw;
  raw.lambda = {0.2, 0.3, 0.5};
  raw.value = {0.6, 0.4, 0.3};
  raw.show_prob = {0.8, 0.8, 0.8};
  raw.capacity = capacity;
  raw.horizon = horizon;
  return raw;
}

bool is_perfect_square(int t) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(t))));
  return r * r == t;
}

}  // namespace

Preset preset(const std::string& name, double epsilon) {
  Preset pre;
  pre.name = name;
  if (name == "exp_a") {
    pre.description = "three-type base instance, scaling grid T=25..250, B=T/5";
    pre.outcome = "uniform-loss";
    pre.seed = 9001;
    pre.make_raw = [](const ExperimentPoint& pt) { return exp_a_raw(pt.capacity, pt.horizon); };
    for (int i = 1; i <= 10; ++i) pre.points.push_back({25 * i, 5 * i});
    pre.policies = {PolicyKind::OnlineIndex};
    pre.benchmark = BenchmarkKind::ClairvoyantIndex;
  } else if (name == "exp_a_unconstrained") {
    pre.description = "base instance on one long fixed path, B=1..15, demand never binds";
    pre.outcome = "switching";
    pre.seed = 4242;
    pre.make_raw = [](const ExperimentPoint& pt) { return exp_a_raw(pt.capacity, pt.horizon); };
    for (int b = 1; b <= 15; ++b) pre.points.push_back({250, b});
    pre.policies = {};
    pre.benchmark = BenchmarkKind::ClairvoyantGeneral;
  } else if (name == "exp_a_constrained") {
    pre.description = "base instance on fixed paths with T=5B, B=1..15";
    pre.outcome = "switching";
    pre.seed = 4243;
    pre.make_raw = [](const ExperimentPoint& pt) { return exp_a_raw(pt.capacity, pt.horizon); };
    for (int b = 1; b <= 15; ++b) pre.points.push_back({5 * b, b});
    pre.policies = {};
    pre.benchmark = BenchmarkKind::ClairvoyantGeneral;
  } else if (name == "exp_b") {
    pre.description = "equal show probabilities, scaling grid T=15..150, B=T/3";
    pre.outcome = "uniform-loss";
    pre.seed = 9002;
    pre.note = "grid read as T in {15,30,...,150}";
    pre.make_raw = [](const ExperimentPoint& pt) { return exp_b_raw(pt.capacity, pt.horizon); };
    for (int i = 1; i <= 10; ++i) pre.points.push_back({15 * i, 5 * i});
    pre.policies = {PolicyKind::OnlineIndex};
    pre.benchmark = BenchmarkKind::ClairvoyantIndex;
  } else if (name == "sweep_p") {
    pre.description = "loss against the common show probability, B=10, T=20";
    pre.outcome = "loss-vs-p";
    pre.seed = 9003;
    pre.make_raw = [](const ExperimentPoint& pt) {
      RawInstance raw;
      const double p = pt.param;
      raw.lambda = {0.2, 0.3, 0.5};
      raw.value = {p - 0.1, p - 0.2, p - 0.3};
      raw.show_prob = {p, p, p};
      raw.capacity = pt.capacity;
      raw.horizon = pt.horizon;
      return raw;
    };
    for (int i = 0; i <= 10; ++i) pre.points.push_back({20, 10, 0.4 + 0.05 * i});
    pre.policies = {PolicyKind::OnlineIndex};
    pre.benchmark = BenchmarkKind::ClairvoyantGeneral;
  } else if (name == "sweep_v") {
    pre.description = "loss against the common revenue, B=10, T=20";
    pre.outcome = "loss-vs-v";
    pre.seed = 9004;
    pre.make_raw = [](const ExperimentPoint& pt) {
      RawInstance raw;
      const double v = pt.param;
      raw.lambda = {0.2, 0.3, 0.5};
      raw.value = {v, v, v};
      raw.show_prob = {v + 0.1, v + 0.2, v + 0.3};
      raw.capacity = pt.capacity;
      raw.horizon = pt.horizon;
      return raw;
    };
    for (int i = 0; i <= 10; ++i) pre.points.push_back({20, 10, 0.1 + 0.05 * i});
    pre.policies = {PolicyKind::OnlineIndex};
    pre.benchmark = BenchmarkKind::ClairvoyantGeneral;
  } else if (name == "lb_general") {
    pre.description = "vanishing show probabilities; every online policy pays for uncertainty";
    pre.outcome = "sqrt-T-lower-bound";
    pre.seed = 9005;
    pre.note = "B rounded to the nearest integer of T/6";
    pre.make_raw = [](const ExperimentPoint& pt) {
      if (pt.horizon < 16 || !is_perfect_square(pt.horizon))
        throw std::invalid_argument("lb_general needs a perfect-square horizon >= 16");
      const double rt = std::sqrt(static_cast<double>(pt.horizon));
      RawInstance raw;
      raw.lambda = {1.0 / 6, 1.0 / 3, 1.0 / 2};
      raw.value = {0.5, 1.0 / rt, 0.0};
      raw.show_prob = {1.0, 3.0 / rt, 1.0};
      raw.capacity = pt.capacity;
      raw.horizon = pt.horizon;
      return raw;
    };
    for (int t : {400, 900, 1600, 2500, 3600})
      pre.points.push_back({t, static_cast<int>(std::lround(t / 6.0))});
    pre.policies = {PolicyKind::OnlineIndex};
    pre.benchmark = BenchmarkKind::ClairvoyantAscent;
  } else if (name == "lb_index") {
    pre.description = "two nearly tied ratios; the index structure itself loses sqrt(T)";
    pre.outcome = "index-limitation";
    pre.seed = 9006;
    pre.make_raw = [](const ExperimentPoint& pt) {
      if (pt.horizon % 6 != 0) throw std::invalid_argument("lb_index needs T divisible by 6");
      RawInstance raw;
      raw.lambda = {0.5, 0.5};
      raw.value = {0.25, 0.5 - 1.0 / pt.horizon};
      raw.show_prob = {0.5, 1.0};
      raw.capacity = pt.capacity;
      raw.horizon = pt.horizon;
      return raw;
    };
    for (int t : {600, 1200, 2400, 4800}) pre.points.push_back({t, t / 6});
    pre.policies = {};
    pre.benchmark = BenchmarkKind::ClairvoyantIndex;
  } else if (name == "dpd_counter") {
    if (!(epsilon > 0.0 && epsilon < 0.5))
      throw std::invalid_argument("dpd_counter needs epsilon in (0, 1/2)");
    pre.description = "state aggregation counterexample: a sure-show and a never-show type";
    pre.outcome = "dpd-linear-loss";
    pre.seed = 9007;
    pre.make_raw = [epsilon](const ExperimentPoint& pt) {
      RawInstance raw;
      raw.lambda = {0.8, 0.2};
      raw.value = {0.5, epsilon};
      raw.show_prob = {1.0, 0.0};
      raw.capacity = pt.capacity;
      raw.horizon = pt.horizon;
      return raw;
    };
    for (int t : {200, 400, 800, 1600}) pre.points.push_back({t, t / 2});
    pre.policies = {PolicyKind::Dpd, PolicyKind::OnlineIndex, PolicyKind::Dlp};
    pre.benchmark = BenchmarkKind::ClairvoyantGeneral;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return pre;
}

std::vector<std::string> preset_names() {
  return {"exp_a",   "exp_a_unconstrained", "exp_a_constrained",
          "exp_b",   "sweep_p",             "sweep_v",
          "lb_general", "lb_index",         "dpd_counter"};
}

Instance preset_instance(const Preset& pre, const ExperimentPoint& point) {
  return normalize(pre.make_raw(point));
}

std::vector<SwitchingRow> switching_study(const Preset& pre, std::uint64_t seed,
                                          long long budget, int threads) {
  std::vector<SwitchingRow> rows(pre.points.size());
  parallel_for(static_cast<int>(pre.points.size()), threads, [&](int i) {
    const ExperimentPoint& pt = pre.points[i];
    const Instance inst = preset_instance(pre, pt);
    // one path per horizon: points sharing T compare solutions on the same path
    const ArrivalSequence a = sample_arrivals(inst, mix_seed(seed, pt.horizon));
    const std::vector<int> counts = count_window(a, 1, inst.horizon, inst.k);
    SolveContext ctx{&inst, AcceptanceVector(inst.k, 0), counts};
    SwitchingRow row;
    row.capacity = pt.capacity;
    row.arrival_counts = counts;
    row.general_x = solve_global_bruteforce(ctx, budget);
    row.index_x = solve_index(ctx).x;
    rows[i] = std::move(row);
  });
  return rows;
}

std::vector<AlternativeGapRow> alternative_gap_study(const Preset& pre, int replications,
                                                     std::uint64_t seed, int threads) {
  std::vector<AlternativeGapRow> rows;
  for (size_t pi = 0; pi < pre.points.size(); ++pi) {
    const ExperimentPoint& pt = pre.points[pi];
    const Instance inst = preset_instance(pre, pt);
    std::vector<double> index_obj(replications), alt_obj(replications);
    parallel_for(replications, threads, [&](int r) {
      const ArrivalSequence a = sample_arrivals(inst, mix_seed(seed, pi, r));
      const std::vector<int> counts = count_window(a, 1, inst.horizon, inst.k);
      SolveContext ctx{&inst, AcceptanceVector(inst.k, 0), counts};
      index_obj[r] = objective(ctx, solve_index(ctx).x);
      AcceptanceVector alt(inst.k, 0);
      alt[inst.k - 1] = std::min(inst.capacity, counts[inst.k - 1]);
      alt_obj[r] = objective(ctx, alt);
    });
    AlternativeGapRow row;
    row.horizon = pt.horizon;
    double se = 0;
    mean_se(index_obj, &row.index_obj, &se);
    mean_se(alt_obj, &row.alternative_obj, &se);
    row.gap = row.alternative_obj - row.index_obj;
    rows.push_back(row);
  }
  return rows;
}

std::vector<CouplingRow> coupling_study(const Preset& pre, int replications,
                                        std::uint64_t seed, int threads) {
  std::vector<CouplingRow> rows;
  for (size_t pi = 0; pi < pre.points.size(); ++pi) {
    const ExperimentPoint& pt = pre.points[pi];
    const Instance inst = preset_instance(pre, pt);
    std::vector<double> events(replications), totals(replications);
    parallel_for(replications, threads, [&](int r) {
      const std::uint64_t path_seed = mix_seed(seed, pi, r);
      const ArrivalSequence a = sample_arrivals(inst, path_seed);
      const PolicyTrace trace = run_online_index(inst, a, mix_seed(path_seed, 0x0911));
      const CouplingTrace ct = coupling_trace(inst, a, trace);
      events[r] = ct.loss_event_count;
      totals[r] = ct.h.front() - ct.h.back();
    });
    CouplingRow row;
    row.horizon = pt.horizon;
    row.capacity = pt.capacity;
    mean_se(events, &row.mean_events, &row.se_events);
    double se = 0;
    mean_se(totals, &row.mean_total_loss, &se);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace overbook
