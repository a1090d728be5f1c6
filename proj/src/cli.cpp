#include "qla/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qla/ecc.hpp"
#include "qla/interconnect.hpp"
#include "qla/layout.hpp"
#include "qla/params.hpp"
#include "qla/scheduler.hpp"
#include "qla/shor.hpp"
#include "qla/stabsim/threshold.hpp"

namespace qla::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kModelError = 1, kUsageError = 2 };

using nlohmann::ordered_json;

struct RunManifest {
  std::string command;
  std::string profile;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  std::optional<std::string> timestamp;

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["profile"] = profile;
    j["seed"] = seed;
    j["overrides"] = overrides;
    j["outputs"] = outputs;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp ? ordered_json(*timestamp) : ordered_json(nullptr);
    return j;
  }
};

// Only an explicit SOURCE_DATE_EPOCH puts a time in the manifest.
inline std::optional<std::string> manifest_timestamp() {
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"); e && *e) return std::string(e);
  return std::nullopt;
}

inline std::string num(double v) { return detail::format_double(v); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) { row(header); }
  Csv& row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << '\n';
    return *this;
  }
  std::string str(const RunManifest& m) const { return "# manifest " + m.to_json().dump() + "\n" + body_.str(); }

 private:
  std::size_t cols_;
  std::ostringstream body_;
};

struct Context {
  std::string profile_source;
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned threads = 0;
  std::ostream* out = &std::cout;
  ParameterProfile profile;
  std::map<std::string, std::string> overrides;

  RunManifest manifest(const std::string& command, std::vector<std::string> outputs) const {
    RunManifest m;
    m.command = command;
    m.profile = profile_source;
    m.seed = seed;
    m.overrides = overrides;
    m.outputs = std::move(outputs);
    m.timestamp = manifest_timestamp();
    return m;
  }

  // Writes to <out_dir>/<name> when an output directory is set, else stdout.
  void emit(const std::string& name, const std::string& text) const {
    if (out_dir.empty()) {
      *out << text;
      return;
    }
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path.string());
    f << text;
    *out << path.string() << '\n';
  }
};

inline std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  if (v.empty()) throw ValidationError(std::string("empty ") + what);
  return v;
}

inline std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(detail::parse_double(what, item));
  if (v.empty()) throw ValidationError(std::string("empty ") + what);
  return v;
}

inline std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ValidationError("grid must look like RxC");
  const auto r = parse_int_list(s.substr(0, x), "grid rows");
  const auto c = parse_int_list(s.substr(x + 1), "grid cols");
  if (r.size() != 1 || c.size() != 1) throw ValidationError("grid must look like RxC");
  return {r[0], c[0]};
}

// ---- report builders (shared by single commands and reproduce-all)

inline std::string params_csv(const Context& cx, const RunManifest& m) {
  const auto& t = cx.profile.params;
  Csv c({"key", "value", "unit"});
  c.row({"single_gate_time", num(t.single_gate_us), "us"});
  c.row({"double_gate_time", num(t.double_gate_us), "us"});
  c.row({"measure_time", num(t.measure_us), "us"});
  c.row({"movement_time_per_cell", num(t.move_per_cell_us), "us/cell"});
  c.row({"split_time", num(t.split_us), "us"});
  c.row({"cooling_time", num(t.cooling_us), "us"});
  c.row({"memory_lifetime", num(t.memory_lifetime_s), "s"});
  c.row({"p_single", num(t.p_single), "probability/gate"});
  c.row({"p_double", num(t.p_double), "probability/gate"});
  c.row({"p_measure", num(t.p_measure), "probability/measurement"});
  c.row({"p_move", num(t.p_move_per_cell), "probability/cell"});
  c.row({"cell_pitch", num(t.cell_pitch_um), "um"});
  c.row({"channel_bandwidth", num(channel_bandwidth_qps(t)), "qubits/s"});
  return c.str(m);
}

inline std::string table2_csv(const Context& cx, const RunManifest& m) {
  const auto tile = steane_tile(2);
  const auto timing = calibrated_timing(cx.profile.params, tile);
  Csv c({"bits", "logical_qubits", "toffoli_gates", "total_gates", "ec_steps", "qft_steps_residual", "area_m2",
         "time_hours", "time_days"});
  for (const auto& row : kShorCounts) {
    const auto e = estimate_shor(row.n_bits, timing, cx.profile.params, tile);
    c.row({std::to_string(row.n_bits), std::to_string(e.model.logical_qubits), std::to_string(e.model.toffoli_count),
           std::to_string(e.model.total_gates), num(e.ec_steps), num(e.qft_steps), num(e.area_m2), num(e.hours()),
           num(e.days())});
  }
  return c.str(m);
}

struct ThresholdArgs {
  std::string levels = "1,2";
  double p_min = 1e-4;
  double p_max = 1e-2;
  int points = 12;
  long long trials = 20000;
};

inline std::string threshold_csv(const Context& cx, const ThresholdArgs& a, const RunManifest& m,
                                 std::ostream* warn) {
  if (a.trials < 1) throw ValidationError("trials must be >= 1");
  const auto levels = parse_int_list(a.levels, "levels");
  const auto grid = log_grid(a.p_min, a.p_max, a.points);
  const unsigned threads = cx.threads ? cx.threads : default_threads();
  const auto sw = threshold_sweep(levels, grid, static_cast<std::uint64_t>(a.trials), cx.seed, cx.profile.params,
                                  steane_tile(2), threads);
  if (sw.low_precision && warn)
    *warn << "warning: precision: trials below " << kMinPrecisionTrials << " per point\n";
  Csv c({"p_per_op", "level", "failure_per_trial", "stderr_per_trial", "failures", "trials",
         "l1_nontrivial_per_extraction", "l2_nontrivial_per_extraction"});
  for (const auto& pt : sw.points)
    c.row({num(pt.p), std::to_string(pt.level), num(pt.rate()), num(pt.stderr_()), std::to_string(pt.failures),
           std::to_string(pt.trials), num(pt.l1_nontrivial_rate()), num(pt.l2_nontrivial_rate())});
  std::string s = c.str(m);
  if (sw.crossing.found)
    s += "# crossing p_star_per_op=" + num(sw.crossing.p_star) + " lo_per_op=" + num(sw.crossing.lo) +
         " hi_per_op=" + num(sw.crossing.hi) + "\n";
  else
    s += "# crossing none\n";
  return s;
}

struct SweepArgs {
  double d_min = 500;
  double d_max = 30000;
  double d_step = 500;
  std::string candidates = "35,70,100,350,500,1000";
};

inline std::string spacing_sweep_csv(const Context& cx, const SweepArgs& a, const RunManifest& m) {
  if (!(a.d_step > 0) || !(a.d_min > 0) || a.d_max < a.d_min) throw ValidationError("bad distance range");
  const auto cand = parse_double_list(a.candidates, "candidates");
  const RepeaterParams rp;
  std::vector<std::string> header{"distance_cells"};
  for (double s : cand) header.push_back("time_us_d" + num(s));
  header.push_back("optimal_spacing_cells");
  Csv c(header);
  for (double d = a.d_min; d <= a.d_max + 1e-9; d += a.d_step) {
    std::vector<std::string> row{num(d)};
    for (double s : cand) {
      if (s > d) {
        row.push_back("");
        continue;
      }
      try {
        row.push_back(num(connection_time_us(d, s, cx.profile.params, rp)));
      } catch (const UnreachableFidelity&) {
        row.push_back("");
      }
    }
    try {
      row.push_back(num(optimal_spacing(d, cand, cx.profile.params, rp)));
    } catch (const UnreachableFidelity&) {
      row.push_back("");
    }
    c.row(row);
  }
  return c.str(m);
}

inline ordered_json shor_json(const ShorEstimate& e) {
  ordered_json j;
  j["bits"] = e.model.n_bits;
  j["interpolated_counts"] = e.interpolated;
  j["logical_qubits"] = e.model.logical_qubits;
  j["toffoli_gates"] = e.model.toffoli_count;
  j["total_gates"] = e.model.total_gates;
  j["modexp"] = {{"im_calls", e.model.im_calls},
                 {"mac_calls", e.model.mac_calls},
                 {"argset_depth", e.model.argset_depth},
                 {"p_extra_qubits", e.model.p_extra_qubits},
                 {"qcla_toffoli_depth", qcla_depth(e.model.n_bits).toffoli},
                 {"modexp_depth_qcla_units", modexp_latency(e.model)}};
  j["ec_steps"] = e.ec_steps;
  j["qft_steps_model_residual"] = e.qft_steps;
  j["t2_ecc_s"] = e.t2_ecc_s;
  j["repeat_factor"] = e.repeat_factor;
  j["runtime_hours"] = e.hours();
  j["runtime_days"] = e.days();
  j["area_m2"] = e.area_m2;
  j["required_steps"] = e.required_steps;
  j["attainable_steps"] = e.attainable_steps;
  j["feasible_at_level2"] = e.feasible_at_level2;
  return j;
}

// ---- dispatch

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QLA trapped-ion architecture simulator and resource estimator", "qla"};
  app.require_subcommand(1);
  Context cx;
  cx.out = &out;
  std::string profile_opt;
  app.add_option("--profile", profile_opt, "built-in profile (expected, current) or INI file path");
  app.add_option("--seed", cx.seed, "seed for stochastic commands")->default_val(0);
  app.add_option("--out", cx.out_dir, "output directory for artifacts");
  app.add_option("--threads", cx.threads, "worker threads for Monte Carlo (0 = all cores)")->default_val(0);

  auto* params = app.add_subcommand("params", "technology parameters");
  params->require_subcommand(1);
  auto* params_show = params->add_subcommand("show", "print the parameter table as CSV");

  auto* layout = app.add_subcommand("layout", "tile layout summary as JSON");
  int rows = 1, cols = 1, spacing_x = 100, level = 2;
  layout->add_option("--rows", rows)->default_val(1);
  layout->add_option("--cols", cols)->default_val(1);
  layout->add_option("--spacing-x", spacing_x)->default_val(100);
  layout->add_option("--level", level)->default_val(2);

  auto* ecc = app.add_subcommand("ecc", "error correction latency breakdown as CSV");
  int ecc_level = 2;
  ecc->add_option("--level", ecc_level)->default_val(2);

  auto* feas = app.add_subcommand("feasibility", "required vs attainable steps");
  long long feas_bits = 1024;
  double feas_pth = 7.5e-5;
  feas->add_option("--bits", feas_bits)->default_val(1024);
  feas->add_option("--p-th", feas_pth)->default_val(7.5e-5);

  auto* thr = app.add_subcommand("threshold", "Monte Carlo threshold sweep as CSV");
  ThresholdArgs ta;
  thr->add_option("--levels", ta.levels)->default_val("1,2");
  thr->add_option("--p-min", ta.p_min)->default_val(1e-4);
  thr->add_option("--p-max", ta.p_max)->default_val(1e-2);
  thr->add_option("--points", ta.points)->default_val(12);
  thr->add_option("--trials", ta.trials)->default_val(20000);

  auto* spacing = app.add_subcommand("spacing", "connection time per island spacing as CSV");
  double distance = 3000;
  std::string cand = "35,70,100,350,500,1000";
  spacing->add_option("--distance", distance)->required();
  spacing->add_option("--candidates", cand)->default_val(cand);

  auto* sweep = app.add_subcommand("spacing-sweep", "connection time over distance for each spacing");
  SweepArgs sa;
  sweep->add_option("--d-min", sa.d_min)->default_val(500);
  sweep->add_option("--d-max", sa.d_max)->default_val(30000);
  sweep->add_option("--d-step", sa.d_step)->default_val(500);
  sweep->add_option("--candidates", sa.candidates)->default_val(sa.candidates);

  auto* sched = app.add_subcommand("schedule", "EPR scheduling on the island grid");
  std::string grid = "8x8", workload = "toffoli";
  int bandwidth = 2, gates = 500;
  long long interval = 1;
  bool no_drift = false;
  sched->add_option("--grid", grid)->default_val("8x8");
  sched->add_option("--bandwidth", bandwidth)->default_val(2);
  sched->add_option("--workload", workload, "'toffoli' or a workload file")->default_val("toffoli");
  sched->add_option("--gates", gates)->default_val(500);
  sched->add_option("--interval", interval, "gate issue interval in slots")->default_val(1);
  sched->add_flag("--no-drift", no_drift, "always teleport operands back");

  auto* shor = app.add_subcommand("estimate-shor", "Shor resource and time estimate");
  long long bits = 128;
  shor->add_option("--bits", bits)->default_val(128);

  auto* repro = app.add_subcommand("reproduce-all", "runtime table, threshold sweep and spacing sweep artifacts");
  ThresholdArgs rta;
  repro->add_option("--trials", rta.trials)->default_val(20000);
  repro->add_option("--points", rta.points)->default_val(12);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: usage: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (profile_opt.empty()) {
      const char* env = std::getenv("QLA_PROFILE_PATH");
      cx.profile_source = env && *env ? std::string(env) : std::string("expected");
    } else {
      cx.profile_source = profile_opt;
    }
    cx.profile = load_profile(cx.profile_source);
    for (auto* sub : app.get_subcommands()) {
      for (auto* s : {sub}) {
        for (const auto* opt : s->get_options())
          if (opt->count() > 0 && !opt->get_lnames().empty()) cx.overrides[opt->get_lnames().front()] = opt->as<std::string>();
        for (auto* nested : s->get_subcommands())
          for (const auto* opt : nested->get_options())
            if (opt->count() > 0 && !opt->get_lnames().empty()) cx.overrides[opt->get_lnames().front()] = opt->as<std::string>();
      }
    }
    const auto& t = cx.profile.params;

    if (params_show->parsed()) {
      cx.emit("params.csv", params_csv(cx, cx.manifest("params show", {"params.csv"})));
    } else if (layout->parsed()) {
      const auto tile = steane_tile(level);
      const auto l = build_layout(rows, cols, tile, spacing_x);
      ordered_json j;
      j["manifest"] = cx.manifest("layout", {"layout.json"}).to_json();
      j["rows"] = l.rows;
      j["cols"] = l.cols;
      j["tile"] = {{"level", tile.level}, {"width_cells", tile.width_cells}, {"height_cells", tile.height_cells},
                   {"code", "steane_7_1_3"}, {"avg_hop_cells", tile.avg_hop_cells}};
      j["channel_width_x_cells"] = l.channel_width_x;
      j["channel_width_y_cells"] = l.channel_width_y;
      j["pitch_x_cells"] = l.pitch_x();
      j["pitch_y_cells"] = l.pitch_y();
      j["width_cells"] = l.width_cells();
      j["height_cells"] = l.height_cells();
      j["island_spacing_x_cells"] = l.island_spacing_x;
      ordered_json isl = ordered_json::array();
      for (const auto& c : l.islands) isl.push_back({{"x_cells", c.x}, {"y_cells", c.y}});
      j["islands"] = isl;
      j["area_m2"] = chip_area_m2(static_cast<std::int64_t>(rows) * cols, tile, t, l.channel_width_x, l.channel_width_y);
      cx.emit("layout.json", j.dump(2) + "\n");
    } else if (ecc->parsed()) {
      if (ecc_level < 1 || ecc_level > 2) throw ValidationError("ecc level must be 1 or 2");
      const auto tile = steane_tile(2);
      const auto timing = calibrated_timing(t, tile);
      Csv c({"level", "prep_s", "interact_s", "measure_s", "syndrome_s", "correction_s", "ecc_latency_s",
             "nontrivial_per_extraction"});
      for (int L = 1; L <= ecc_level; ++L) {
        const auto b = syndrome_time(L, t, tile, EccSchedule{}, kNontrivialRateL1);
        const double lat = ecc_latency_s(L, timing);
        c.row({std::to_string(L), num(b.prep_s), num(b.interact_s), num(b.measure_s), num(b.total_s()),
               num(lat - 2 * b.total_s()), num(lat), num(timing.nontrivial_rate[L])});
      }
      cx.emit("ecc.csv", c.str(cx.manifest("ecc", {"ecc.csv"})));
    } else if (feas->parsed()) {
      const auto tile = steane_tile(2);
      const auto e = estimate_shor(feas_bits, calibrated_timing(t, tile), t, tile, feas_pth);
      Csv c({"bits", "p0_per_op", "p_th_per_op", "failure_per_step_L2", "required_steps", "attainable_steps", "feasible"});
      const RecursionModel rm{mean_component_failure(t), feas_pth, static_cast<double>(tile.avg_hop_cells), 2};
      c.row({std::to_string(feas_bits), num(rm.p0), num(rm.p_th), num(recursive_failure(rm)), num(e.required_steps),
             num(e.attainable_steps), e.feasible_at_level2 ? "true" : "false"});
      cx.emit("feasibility.csv", c.str(cx.manifest("feasibility", {"feasibility.csv"})));
    } else if (thr->parsed()) {
      cx.emit("threshold.csv", threshold_csv(cx, ta, cx.manifest("threshold", {"threshold.csv"}), &err));
    } else if (spacing->parsed()) {
      const auto list = parse_double_list(cand, "candidates");
      const RepeaterParams rp;
      Csv c({"spacing_cells", "feasible", "connection_time_us", "final_fidelity", "hops", "purification_rounds_per_hop",
             "swap_stages"});
      for (double s : list) {
        if (s > distance) {
          c.row({num(s), "false", "", "", "", "", ""});
          continue;
        }
        try {
          const auto ch = plan_channel(distance, s, t, rp);
          c.row({num(s), "true", num(ch.time_us()), num(ch.final_fidelity), std::to_string(ch.hop_count),
                 std::to_string(ch.purification_rounds_per_hop), std::to_string(ch.swap_stages)});
        } catch (const UnreachableFidelity&) {
          c.row({num(s), "false", "", "", "", "", ""});
        }
      }
      std::string text = c.str(cx.manifest("spacing", {"spacing.csv"}));
      try {
        text += "# optimal_spacing_cells=" + num(optimal_spacing(distance, list, t, rp)) + "\n";
      } catch (const UnreachableFidelity&) {
        text += "# optimal_spacing_cells=none\n";
      }
      cx.emit("spacing.csv", text);
    } else if (sweep->parsed()) {
      cx.emit("spacing_sweep.csv", spacing_sweep_csv(cx, sa, cx.manifest("spacing-sweep", {"spacing_sweep.csv"})));
    } else if (sched->parsed()) {
      const auto [gr, gc] = parse_grid(grid);
      const auto l = build_layout(gr, gc, steane_tile(2), 100);
      const ChannelGraph g(l, bandwidth);
      const auto cfg = default_scheduler_config(g, t);
      ScheduleResult r;
      if (workload == "toffoli") {
        const auto w = make_toffoli_workload(l, gates, interval, cfg.window_slots, cx.seed);
        ToffoliOptions opt;
        opt.drift = !no_drift;
        r = schedule_toffoli(w, g, cfg, opt);
      } else {
        r = schedule(parse_workload(read_text_file(workload), cfg.window_slots), g, cfg);
      }
      const auto u = utilization_report(r);
      const auto m = cx.manifest("schedule", {"schedule.json", "schedule_routes.csv"});
      ordered_json j;
      j["manifest"] = m.to_json();
      j["grid"] = grid;
      j["bandwidth_lanes"] = bandwidth;
      j["island_spacing_cells"] = 100;
      j["slot_us"] = cfg.slot_us;
      j["window_slots"] = cfg.window_slots;
      j["requests"] = u.requests;
      j["met_deadline"] = u.met;
      j["hit_rate"] = u.hit_rate;
      j["utilization"] = u.utilization;
      j["makespan_slots"] = u.makespan;
      j["epr_cells"] = r.epr_cells;
      j["return_trips"] = r.return_trips;
      j["capacity_respected"] = replay_respects_capacity(r, g);
      j["edge_busy_histogram_tenths"] = u.edge_histogram;
      ordered_json dm = ordered_json::array();
      for (const auto& [q, pos] : r.drift_map) dm.push_back({{"qubit", q}, {"row", pos.row}, {"col", pos.col}});
      j["drift_map"] = dm;
      Csv c({"request", "src_row", "src_col", "dst_row", "dst_col", "start_slot", "finish_slot", "lanes", "hops",
             "route_cells", "retries", "met_deadline"});
      for (const auto& d : r.deliveries)
        c.row({std::to_string(d.request), std::to_string(d.src.row), std::to_string(d.src.col), std::to_string(d.dst.row),
               std::to_string(d.dst.col), std::to_string(d.start), std::to_string(d.finish), std::to_string(d.lanes),
               std::to_string(d.route.size()), std::to_string(g.route_cells(d.route)), std::to_string(d.retries),
               d.met_deadline ? "true" : "false"});
      if (cx.out_dir.empty()) {
        out << j.dump(2) << '\n';
      } else {
        cx.emit("schedule.json", j.dump(2) + "\n");
        cx.emit("schedule_routes.csv", c.str(m));
      }
    } else if (shor->parsed()) {
      const auto tile = steane_tile(2);
      const auto e = estimate_shor(bits, calibrated_timing(t, tile), t, tile);
      const auto m = cx.manifest("estimate-shor", {"estimate_shor.json", "estimate_shor.csv"});
      ordered_json j;
      j["manifest"] = m.to_json();
      j["estimate"] = shor_json(e);
      Csv c({"bits", "logical_qubits", "toffoli_gates", "total_gates", "area_m2", "time_days"});
      c.row({std::to_string(bits), std::to_string(e.model.logical_qubits), std::to_string(e.model.toffoli_count),
             std::to_string(e.model.total_gates), num(e.area_m2), num(e.days())});
      if (cx.out_dir.empty()) {
        out << j.dump(2) << '\n';
      } else {
        cx.emit("estimate_shor.json", j.dump(2) + "\n");
        cx.emit("estimate_shor.csv", c.str(m));
      }
    } else if (repro->parsed()) {
      if (cx.out_dir.empty()) cx.out_dir = "artifacts";
      const std::vector<std::string> files{"table2.csv", "fig7_threshold.csv", "fig8_spacing.csv"};
      const auto m = cx.manifest("reproduce-all", files);
      cx.emit("table2.csv", table2_csv(cx, m));
      cx.emit("fig7_threshold.csv", threshold_csv(cx, rta, m, &err));
      cx.emit("fig8_spacing.csv", spacing_sweep_csv(cx, SweepArgs{}, m));
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: validation: " << e.what() << '\n';
    return kModelError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << '\n';
    return kModelError;
  }
}

}  // namespace qla::cli
