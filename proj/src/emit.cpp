#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "overbook/bench.hpp"

namespace overbook {

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = dir + "/" + file;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

nlohmann::json manifest_base(const Preset& pre, const EmitOptions& opts) {
  nlohmann::json m;
  m["artifact"] = "overbook";
  m["version"] = kArtifactVersion;
#if defined(__VERSION__)
  m["compiler"] = __VERSION__;
#endif
  m["preset"] = pre.name;
  m["description"] = pre.description;
  m["outcome"] = pre.outcome;
  if (!pre.note.empty()) m["note"] = pre.note;
  m["seed"] = pre.seed;
  m["format"] = opts.format;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& pt : pre.points) {
    nlohmann::json p;
    p["T"] = pt.horizon;
    p["B"] = pt.capacity;
    if (!std::isnan(pt.param)) p["param"] = pt.param;
    pts.push_back(p);
  }
  m["points"] = pts;
  return m;
}

void write_manifest(const nlohmann::json& m, const Preset& pre, const EmitOptions& opts) {
  auto out = open_out(opts.out_dir, pre.name + "_manifest.json");
  out << m.dump(2) << "\n";
}

}  // namespace

void emit_report(const LossReport& report, const Preset& pre, const EmitOptions& opts) {
  auto csv = open_out(opts.out_dir, pre.name + "_results.csv");
  csv << "preset,T,B,param,policy,mean_obj,stderr_obj,mean_loss,stderr_loss,rel_loss,heuristic\n";
  for (const auto& pt : report.points) {
    const std::string param = std::isnan(pt.point.param) ? "" : fmt(pt.point.param);
    csv << pre.name << ',' << pt.point.horizon << ',' << pt.point.capacity << ',' << param
        << ',' << benchmark_name(report.benchmark) << ',' << fmt(pt.bench_mean) << ','
        << fmt(pt.bench_se) << ",,," << ',' << (pt.bench_heuristic ? 1 : 0) << "\n";
    for (const auto& ps : pt.policies) {
      csv << pre.name << ',' << pt.point.horizon << ',' << pt.point.capacity << ',' << param
          << ',' << policy_name(ps.policy) << ',' << fmt(ps.mean_obj) << ',' << fmt(ps.se_obj)
          << ',' << fmt(ps.mean_loss) << ',' << fmt(ps.se_loss) << ',' << fmt(ps.rel_loss)
          << ",\n";
    }
  }
  csv.close();

  // log-log pairs per policy, ready for external plotting
  for (size_t p = 0; p < (report.points.empty() ? 0 : report.points[0].policies.size()); ++p) {
    const char* pname = policy_name(report.points[0].policies[p].policy);
    auto plot = open_out(opts.out_dir, pre.name + std::string("_plot_") + pname + ".csv");
    plot << "T,B,mean_loss,rel_loss,log10_T,log10_mean_loss,log10_rel_loss\n";
    for (const auto& pt : report.points) {
      const auto& ps = pt.policies[p];
      plot << pt.point.horizon << ',' << pt.point.capacity << ',' << fmt(ps.mean_loss) << ','
           << fmt(ps.rel_loss) << ',' << fmt(std::log10(double(pt.point.horizon))) << ','
           << fmt(std::log10(std::max(ps.mean_loss, 1e-12))) << ','
           << fmt(std::log10(std::max(ps.rel_loss, 1e-12))) << "\n";
    }
  }

  nlohmann::json m = manifest_base(pre, opts);
  m["replications"] = report.replications;
  m["benchmark"] = benchmark_name(report.benchmark);
  nlohmann::json pol = nlohmann::json::array();
  for (const auto& p : pre.policies) pol.push_back(policy_name(p));
  m["policies"] = pol;
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& pt : report.points)
    if (pt.bench_heuristic) gates.push_back(pt.point.horizon);
  m["ascent_fallback_horizons"] = gates;
  if (!report.loss_scaling.empty() && !report.points.empty()) {
    nlohmann::json slopes = nlohmann::json::array();
    for (size_t p = 0; p < report.loss_scaling.size(); ++p) {
      nlohmann::json s;
      s["policy"] = policy_name(report.points[0].policies[p].policy);
      s["loss_loglog_slope"] = report.loss_scaling[p].slope;
      s["slope_se"] = report.loss_scaling[p].se_slope;
      slopes.push_back(s);
    }
    m["loss_scaling"] = slopes;
  }
  write_manifest(m, pre, opts);

  if (opts.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& pt : report.points) {
      nlohmann::json row;
      row["T"] = pt.point.horizon;
      row["B"] = pt.point.capacity;
      if (!std::isnan(pt.point.param)) row["param"] = pt.point.param;
      row["benchmark_mean"] = pt.bench_mean;
      row["benchmark_stderr"] = pt.bench_se;
      row["heuristic"] = pt.bench_heuristic;
      nlohmann::json pol_rows = nlohmann::json::array();
      for (const auto& ps : pt.policies) {
        nlohmann::json pr;
        pr["policy"] = policy_name(ps.policy);
        pr["mean_obj"] = ps.mean_obj;
        pr["stderr_obj"] = ps.se_obj;
        pr["mean_loss"] = ps.mean_loss;
        pr["stderr_loss"] = ps.se_loss;
        pr["rel_loss"] = ps.rel_loss;
        pol_rows.push_back(pr);
      }
      row["policies"] = pol_rows;
      rows.push_back(row);
    }
    auto out = open_out(opts.out_dir, pre.name + "_results.json");
    out << rows.dump(2) << "\n";
  }
}

void emit_switching(const std::vector<SwitchingRow>& rows, const Preset& pre,
                    const EmitOptions& opts) {
  auto csv = open_out(opts.out_dir, pre.name + "_results.csv");
  csv << "preset,B,type,arrivals,general_accepts,index_accepts\n";
  const Instance inst = preset_instance(pre, pre.points.front());
  for (const auto& row : rows) {
    const auto counts = to_input_order(inst, row.arrival_counts);
    const auto general = to_input_order(inst, row.general_x);
    const auto index = to_input_order(inst, row.index_x);
    for (int j = 0; j < inst.k; ++j)
      csv << pre.name << ',' << row.capacity << ',' << (j + 1) << ',' << counts[j] << ','
          << general[j] << ',' << index[j] << "\n";
  }
  write_manifest(manifest_base(pre, opts), pre, opts);
}

void emit_alternative_gap(const std::vector<AlternativeGapRow>& rows, const Preset& pre,
                          const EmitOptions& opts) {
  auto csv = open_out(opts.out_dir, pre.name + "_results.csv");
  csv << "preset,T,index_obj,alternative_obj,gap,log10_T,log10_gap\n";
  for (const auto& row : rows)
    csv << pre.name << ',' << row.horizon << ',' << fmt(row.index_obj) << ','
        << fmt(row.alternative_obj) << ',' << fmt(row.gap) << ','
        << fmt(std::log10(double(row.horizon))) << ','
        << fmt(std::log10(std::max(row.gap, 1e-12))) << "\n";
  write_manifest(manifest_base(pre, opts), pre, opts);
}

void emit_coupling(const std::vector<CouplingRow>& rows, const Preset& pre,
                   const EmitOptions& opts) {
  auto csv = open_out(opts.out_dir, pre.name + "_coupling.csv");
  csv << "preset,T,B,mean_loss_events,se_loss_events,mean_total_loss\n";
  for (const auto& row : rows)
    csv << pre.name << ',' << row.horizon << ',' << row.capacity << ',' << fmt(row.mean_events)
        << ',' << fmt(row.se_events) << ',' << fmt(row.mean_total_loss) << "\n";
  write_manifest(manifest_base(pre, opts), pre, opts);
}

}  // namespace overbook
