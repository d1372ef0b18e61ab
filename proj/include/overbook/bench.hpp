// Experiment presets, study runners and file emission. The CLI in tools/ is
// a thin wrapper over this module; all output is files (CSV + a JSON run
// manifest), no rendering.
#pragma once

#include "overbook/sim.hpp"

namespace overbook {

struct Preset {
  std::string name;
  std::string description;
  std::string outcome;  // expected qualitative outcome tag
  std::function<RawInstance(const ExperimentPoint&)> make_raw;
  std::vector<ExperimentPoint> points;
  std::vector<PolicyKind> policies;
  BenchmarkKind benchmark = BenchmarkKind::ClairvoyantIndex;
  std::uint64_t seed = 0;
  std::string note;  // grid interpretation etc., copied into the manifest
};

// Catalogue: exp_a (scaling), exp_a_unconstrained, exp_a_constrained, exp_b,
// sweep_p, sweep_v, lb_general, lb_index, dpd_counter. epsilon only affects
// dpd_counter. Throws std::invalid_argument for unknown names.
Preset preset(const std::string& name, double epsilon = 0.1);
std::vector<std::string> preset_names();

// Normalized instance for one grid point (preset instances always pass
// normalize by construction).
Instance preset_instance(const Preset& pre, const ExperimentPoint& point);

// Clairvoyant solutions on a single fixed path as capacity varies; used by
// the switching presets where index and general optima are compared
// customer-count by customer-count.
struct SwitchingRow {
  int capacity = 0;
  std::vector<int> arrival_counts;
  AcceptanceVector general_x;
  AcceptanceVector index_x;
};
std::vector<SwitchingRow> switching_study(const Preset& pre, std::uint64_t seed,
                                          long long budget, int threads = 0);

// Gap between the clairvoyant index solution and the fixed alternative that
// accepts capacity-many of the last type, averaged over sampled paths.
struct AlternativeGapRow {
  int horizon = 0;
  double index_obj = 0;
  double alternative_obj = 0;
  double gap = 0;  // alternative - index
};
std::vector<AlternativeGapRow> alternative_gap_study(const Preset& pre, int replications,
                                                     std::uint64_t seed, int threads = 0);

// Loss-event counts of the online index policy per grid point.
struct CouplingRow {
  int horizon = 0;
  int capacity = 0;
  double mean_events = 0, se_events = 0;
  double mean_total_loss = 0;
};
std::vector<CouplingRow> coupling_study(const Preset& pre, int replications,
                                        std::uint64_t seed, int threads = 0);

// Writes <name>_results.csv, <name>_plot_<policy>.csv and
// <name>_manifest.json under out_dir ("json" format adds
// <name>_results.json). Reruns with the same config are byte-identical.
struct EmitOptions {
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
};
void emit_report(const LossReport& report, const Preset& pre, const EmitOptions& opts);
void emit_switching(const std::vector<SwitchingRow>& rows, const Preset& pre,
                    const EmitOptions& opts);
void emit_alternative_gap(const std::vector<AlternativeGapRow>& rows, const Preset& pre,
                          const EmitOptions& opts);
void emit_coupling(const std::vector<CouplingRow>& rows, const Preset& pre,
                   const EmitOptions& opts);

// CLI front-end (tools/overbook calls this). Exit codes: 0 success,
// 2 configuration error, 3 enumeration budget exceeded, 4 degenerate policy,
// 5 unwritable output.
int cli_main(int argc, const char* const* argv);

}  // namespace overbook
