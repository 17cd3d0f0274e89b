#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "zenoclone/dynamics.hpp"
#include "zenoclone/errors.hpp"
#include "zenoclone/experiments.hpp"
#include "zenoclone/observables.hpp"

namespace zenoclone {
namespace io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Formatting and file primitives
// ---------------------------------------------------------------------------

// Locale-independent double formatting, 17 significant digits, enough to
// round-trip IEEE doubles exactly.
inline std::string format_double(double value) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes via a temp file in the same directory followed by a rename, so a
// crash never leaves a truncated result file behind.
inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() +
                          ": " + ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() +
                        ": " + ec.message());
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

// Canonical form of one run request. Couplings are stored the way the user
// gave them (dimensionless numbers or MHz) and converted once in
// make_params(), so an emitted config re-parses to bit-identical physics.
struct RunConfig {
  int n_cavities = 3;
  int m_atoms = 100;
  std::string unit_family = "dimensionless";  // dimensionless | mhz
  double g_given = 1.0;                       // per-atom coupling, family units
  double v_factor = 0.5;                      // of g'
  double omega_factor = 0.05;                 // of g'
  double omega1_factor = -1.0;                // of g'; negative = from schedule
  double kappa_given = 0.0;                   // family units
  double gamma_given = 0.0;
  double beta_given = 0.0;
  double branching_ratio = 0.0;
  double theta_rad = std::numbers::pi / 2;
  double delta_rad = 0.0;
  std::string mode = "effective";  // effective | full-closed | full-open | conditional
  std::string scenario = "simulate";
  std::string initial = "wseed";  // wseed | clone
  double t_max_gt = -1.0;         // set via t_max_given; default one protocol period
  bool t_max_given = false;
  int time_samples = 201;
  std::string integrator_method;  // empty = per-mode default; matrix-exp | rk4
  double integrator_dt = 0.0;     // 0 = automatic step

  bool has_sweep = false;
  std::string sweep_path;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_count = 0;
  bool has_sweep2 = false;
  std::string sweep2_path;
  double sweep2_from = 0.0, sweep2_to = 0.0;
  int sweep2_count = 0;
  std::string observable = "w_fidelity";  // w_fidelity | clone_fidelity
  int clone_qubit = 2;
  bool clone_frame_corrected = true;

  SystemParams make_params() const {
    SystemParams p;
    p.n_cavities = n_cavities;
    p.m_atoms = m_atoms;
    if (unit_family == "mhz") {
      p.unit_mode = UnitMode::PhysicalMHz;
      p.g = mhz_to_angular(g_given);
      p.kappa = mhz_to_angular(kappa_given);
      p.gamma = mhz_to_angular(gamma_given);
      p.beta = mhz_to_angular(beta_given);
    } else {
      p.g = g_given;
      p.kappa = kappa_given * p.gprime();
      p.gamma = gamma_given * p.gprime();
      p.beta = beta_given * p.gprime();
    }
    p.v = v_factor * p.gprime();
    p.omega = omega_factor * p.gprime();
    p.omega1 = (omega1_factor < 0 ? 1.0 : omega1_factor) * p.gprime();
    p.gamma_branching = branching_ratio;
    p.theta = theta_rad;
    p.delta = delta_rad;
    return p;
  }
};

namespace detail {

inline double want_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key " + key + " must be a number");
  return v.get<double>();
}

inline int want_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key " + key + " must be an integer");
  return v.get<int>();
}

inline std::string want_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key " + key + " must be a string");
  return v.get<std::string>();
}

inline bool want_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key " + key + " must be a boolean");
  return v.get<bool>();
}

}  // namespace detail

// Fills the derived fields (laser calibration, default time span) so the
// emitted document stands alone. make_params() on the result reproduces the
// same SystemParams bit for bit. Sweeps without an explicit time span keep
// the per-point protocol time instead of a frozen grid.
inline RunConfig resolve(RunConfig cfg) {
  SystemParams probe = cfg.make_params();
  probe.validate();
  const ProtocolSchedule sched = protocol_schedule(probe);
  if (cfg.omega1_factor < 0) cfg.omega1_factor = sched.omega1_required / probe.gprime();
  if (!cfg.t_max_given && !cfg.has_sweep) {
    cfg.t_max_gt = probe.g * sched.t_n;
    cfg.t_max_given = true;
  }
  return cfg;
}

// Parses a config document. The text may be a bare JSON object or a result
// file emitted by this tool, in which case the embedded `# config` line is
// used, making every output directly re-runnable.
inline RunConfig parse_run_config(const std::string& text) {
  std::string doc = text;
  if (!text.empty() && text[0] == '#') {
    std::istringstream lines(text);
    std::string line;
    doc.clear();
    const std::string prefix = "# config ";
    while (std::getline(lines, line))
      if (line.rfind(prefix, 0) == 0) {
        doc = line.substr(prefix.size());
        break;
      }
    if (doc.empty()) throw ConfigError("no embedded config line found in result file");
  }

  json j;
  try {
    j = json::parse(doc);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig cfg;
  bool saw_dimensionless = false;
  bool saw_mhz = false;
  auto family = [&](bool mhz, const std::string& key) {
    (mhz ? saw_mhz : saw_dimensionless) = true;
    if (saw_mhz && saw_dimensionless)
      throw ConfigError("config mixes dimensionless and MHz key families (offending key " +
                        key + ")");
    cfg.unit_family = mhz ? "mhz" : "dimensionless";
  };

  for (const auto& [key, value] : j.items()) {
    if (key == "n_cavities") cfg.n_cavities = detail::want_int(value, key);
    else if (key == "m_atoms") cfg.m_atoms = detail::want_int(value, key);
    else if (key == "g_dimensionless") { family(false, key); cfg.g_given = detail::want_number(value, key); }
    else if (key == "g_mhz") { family(true, key); cfg.g_given = detail::want_number(value, key); }
    else if (key == "kappa_factor") { family(false, key); cfg.kappa_given = detail::want_number(value, key); }
    else if (key == "kappa_mhz") { family(true, key); cfg.kappa_given = detail::want_number(value, key); }
    else if (key == "gamma_factor") { family(false, key); cfg.gamma_given = detail::want_number(value, key); }
    else if (key == "gamma_mhz") { family(true, key); cfg.gamma_given = detail::want_number(value, key); }
    else if (key == "beta_factor") { family(false, key); cfg.beta_given = detail::want_number(value, key); }
    else if (key == "beta_mhz") { family(true, key); cfg.beta_given = detail::want_number(value, key); }
    else if (key == "v_factor") cfg.v_factor = detail::want_number(value, key);
    else if (key == "omega_factor") cfg.omega_factor = detail::want_number(value, key);
    else if (key == "omega1_factor") cfg.omega1_factor = detail::want_number(value, key);
    else if (key == "branching_ratio") cfg.branching_ratio = detail::want_number(value, key);
    else if (key == "theta_rad") cfg.theta_rad = detail::want_number(value, key);
    else if (key == "delta_rad") cfg.delta_rad = detail::want_number(value, key);
    else if (key == "mode") cfg.mode = detail::want_string(value, key);
    else if (key == "scenario") cfg.scenario = detail::want_string(value, key);
    else if (key == "initial") cfg.initial = detail::want_string(value, key);
    else if (key == "t_max_gt") {
      cfg.t_max_gt = detail::want_number(value, key);
      cfg.t_max_given = true;
      if (cfg.t_max_gt <= 0) throw ConfigError("config key t_max_gt must be positive");
    }
    else if (key == "time_samples") cfg.time_samples = detail::want_int(value, key);
    else if (key == "integrator_method") cfg.integrator_method = detail::want_string(value, key);
    else if (key == "integrator_dt") cfg.integrator_dt = detail::want_number(value, key);
    else if (key == "sweep_path") { cfg.has_sweep = true; cfg.sweep_path = detail::want_string(value, key); }
    else if (key == "sweep_from") { cfg.has_sweep = true; cfg.sweep_from = detail::want_number(value, key); }
    else if (key == "sweep_to") { cfg.has_sweep = true; cfg.sweep_to = detail::want_number(value, key); }
    else if (key == "sweep_count") { cfg.has_sweep = true; cfg.sweep_count = detail::want_int(value, key); }
    else if (key == "sweep2_path") { cfg.has_sweep2 = true; cfg.sweep2_path = detail::want_string(value, key); }
    else if (key == "sweep2_from") { cfg.has_sweep2 = true; cfg.sweep2_from = detail::want_number(value, key); }
    else if (key == "sweep2_to") { cfg.has_sweep2 = true; cfg.sweep2_to = detail::want_number(value, key); }
    else if (key == "sweep2_count") { cfg.has_sweep2 = true; cfg.sweep2_count = detail::want_int(value, key); }
    else if (key == "observable") cfg.observable = detail::want_string(value, key);
    else if (key == "clone_qubit") cfg.clone_qubit = detail::want_int(value, key);
    else if (key == "clone_frame_corrected") cfg.clone_frame_corrected = detail::want_bool(value, key);
    else throw ConfigError("unknown config key: " + key);
  }

  if (cfg.mode != "effective" && cfg.mode != "full-closed" && cfg.mode != "full-open" &&
      cfg.mode != "conditional")
    throw ConfigError("config key mode must be one of effective, full-closed, full-open, "
                      "conditional; got " + cfg.mode);
  if (cfg.initial != "wseed" && cfg.initial != "clone")
    throw ConfigError("config key initial must be wseed or clone; got " + cfg.initial);
  if (cfg.time_samples < 2)
    throw ConfigError("config key time_samples must be at least 2");
  if (!cfg.integrator_method.empty() && cfg.integrator_method != "matrix-exp" &&
      cfg.integrator_method != "rk4")
    throw ConfigError("config key integrator_method must be matrix-exp or rk4; got " +
                      cfg.integrator_method);
  if (cfg.integrator_dt < 0)
    throw ConfigError("config key integrator_dt must be positive");
  if (cfg.has_sweep) {
    if (cfg.sweep_path.empty()) throw ConfigError("config key sweep_path is required for sweeps");
    if (cfg.sweep_count < 1) throw ConfigError("config key sweep_count must be at least 1");
  }
  if (cfg.has_sweep2) {
    if (!cfg.has_sweep) throw ConfigError("config key sweep2_path requires a first sweep axis");
    if (cfg.sweep2_path.empty()) throw ConfigError("config key sweep2_path is required");
    if (cfg.sweep2_count < 1) throw ConfigError("config key sweep2_count must be at least 1");
  }
  if (cfg.observable != "w_fidelity" && cfg.observable != "clone_fidelity")
    throw ConfigError("config key observable must be w_fidelity or clone_fidelity; got " +
                      cfg.observable);

  cfg.make_params().validate();
  return cfg;
}

inline json resolved_json(const RunConfig& cfg) {
  json j;
  j["scenario"] = cfg.scenario;
  j["n_cavities"] = cfg.n_cavities;
  j["m_atoms"] = cfg.m_atoms;
  if (cfg.unit_family == "mhz") {
    j["g_mhz"] = cfg.g_given;
    j["kappa_mhz"] = cfg.kappa_given;
    j["gamma_mhz"] = cfg.gamma_given;
    j["beta_mhz"] = cfg.beta_given;
  } else {
    j["g_dimensionless"] = cfg.g_given;
    j["kappa_factor"] = cfg.kappa_given;
    j["gamma_factor"] = cfg.gamma_given;
    j["beta_factor"] = cfg.beta_given;
  }
  j["v_factor"] = cfg.v_factor;
  j["omega_factor"] = cfg.omega_factor;
  j["omega1_factor"] = cfg.omega1_factor;
  j["branching_ratio"] = cfg.branching_ratio;
  j["theta_rad"] = cfg.theta_rad;
  j["delta_rad"] = cfg.delta_rad;
  j["mode"] = cfg.mode;
  j["initial"] = cfg.initial;
  if (cfg.t_max_given) j["t_max_gt"] = cfg.t_max_gt;
  j["time_samples"] = cfg.time_samples;
  if (!cfg.integrator_method.empty()) j["integrator_method"] = cfg.integrator_method;
  if (cfg.integrator_dt > 0) j["integrator_dt"] = cfg.integrator_dt;
  if (cfg.has_sweep) {
    j["sweep_path"] = cfg.sweep_path;
    j["sweep_from"] = cfg.sweep_from;
    j["sweep_to"] = cfg.sweep_to;
    j["sweep_count"] = cfg.sweep_count;
    if (cfg.has_sweep2) {
      j["sweep2_path"] = cfg.sweep2_path;
      j["sweep2_from"] = cfg.sweep2_from;
      j["sweep2_to"] = cfg.sweep2_to;
      j["sweep2_count"] = cfg.sweep2_count;
    }
    j["observable"] = cfg.observable;
    if (cfg.observable == "clone_fidelity") {
      j["clone_qubit"] = cfg.clone_qubit;
      j["clone_frame_corrected"] = cfg.clone_frame_corrected;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Time-series runner behind `simulate`
// ---------------------------------------------------------------------------

struct TimeSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline TimeSeries run_time_series(const RunConfig& cfg) {
  if (!cfg.t_max_given)
    throw ConfigError("time series requires a resolved t_max_gt; call io::resolve first");
  SystemParams p = cfg.make_params();
  p.validate();
  const SubspaceBasis basis(p.n_cavities);
  const bool clone = cfg.initial == "clone";

  TimeSeries out;
  out.columns = {"t", "g_t", "fidelity_w", "pop_ground", "pop_fiber"};
  if (clone) {
    out.columns.push_back("clone_fidelity_q1");
    out.columns.push_back("clone_fidelity_q2");
  }

  const std::vector<double> times = linspace(0.0, cfg.t_max_gt / p.g, cfg.time_samples);

  IntegratorConfig integ;
  if (cfg.integrator_method == "rk4") integ.method = IntegratorMethod::RK4;
  integ.dt = cfg.integrator_dt;

  auto push_state = [&](double t, const StateVector& psi) {
    std::vector<double> row{t, p.g * t, w_state_fidelity(psi, p.n_cavities),
                            std::norm(psi(basis.ground())), std::norm(psi(basis.fiber()))};
    if (clone) {
      for (int qubit : {1, 2}) {
        const LogicalQubitMatrix q = reduce_to_logical_qubit(psi, basis, qubit);
        row.push_back(clone_fidelity(q, p.theta, p.delta, cfg.clone_frame_corrected));
      }
    }
    out.rows.push_back(std::move(row));
  };
  auto push_density = [&](double t, const DensityMatrix& rho) {
    std::vector<double> row{t, p.g * t, w_state_fidelity(rho, p.n_cavities),
                            rho(basis.ground(), basis.ground()).real(),
                            rho(basis.fiber(), basis.fiber()).real()};
    if (clone) {
      for (int qubit : {1, 2}) {
        const LogicalQubitMatrix q = reduce_to_logical_qubit(rho, basis, qubit);
        row.push_back(clone_fidelity(q, p.theta, p.delta, cfg.clone_frame_corrected));
      }
    }
    out.rows.push_back(std::move(row));
  };

  if (cfg.mode == "effective") {
    for (double t : times) {
      StateVector psi = analytic_state(p, t);
      if (clone) {
        psi *= std::sin(p.theta / 2.0) *
               std::complex<double>(std::cos(p.delta), std::sin(p.delta));
        psi(basis.ground()) += std::cos(p.theta / 2.0);
      }
      push_state(t, psi);
    }
  } else if (cfg.mode == "full-closed") {
    const StateVector psi0 =
        initial_state(p, clone ? InitialStateKind::CloneInput : InitialStateKind::WSeed);
    if (integ.method == IntegratorMethod::RK4) {
      for (double t : times) push_state(t, evolve_schrodinger(build_h_total(p), psi0, t, integ));
    } else {
      const Propagator prop(build_h_total(p));
      for (double t : times) push_state(t, prop.apply(psi0, t));
    }
  } else if (cfg.mode == "full-open") {
    const StateVector psi0 =
        initial_state(p, clone ? InitialStateKind::CloneInput : InitialStateKind::WSeed);
    LindbladEvolution evo(build_h_total(p), build_collapse_ops(p), psi0 * psi0.adjoint(),
                          integ);
    for (double t : times) push_density(t, evo.advance_to(t));
  } else {  // conditional: no-jump trajectory, norm reports survival probability
    const StateVector psi0 =
        initial_state(p, clone ? InitialStateKind::CloneInput : InitialStateKind::WSeed);
    const Eigen::MatrixXcd h = build_h_total(p);
    const std::vector<CollapseOp> ops = build_collapse_ops(p);
    for (double t : times) push_state(t, evolve_conditional(h, ops, psi0, t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Result serialization
// ---------------------------------------------------------------------------

inline std::string csv_preamble(const json& config, const std::string& timestamp) {
  return "# config " + config.dump() + "\n# timestamp " + timestamp + "\n";
}

inline std::string time_series_csv(const TimeSeries& series, const json& config,
                                   const std::string& timestamp) {
  std::string out = csv_preamble(config, timestamp);
  for (size_t c = 0; c < series.columns.size(); ++c) {
    if (c) out += ',';
    out += series.columns[c];
  }
  out += '\n';
  for (const auto& row : series.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline std::string time_series_json(const TimeSeries& series, const json& config,
                                    const std::string& timestamp) {
  json j;
  j["config"] = config;
  j["timestamp"] = timestamp;
  j["columns"] = series.columns;
  j["rows"] = json::array();
  for (const auto& row : series.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

// Figure tables use fixed per-figure schemas so the files stand alone.
inline std::string figure_csv(const std::string& id, const std::vector<ResultRow>& rows,
                              const json& config, const std::string& timestamp) {
  std::string out = csv_preamble(config, timestamp);
  if (id == "fig2a") {
    out += "v_over_gprime,omega_over_gprime,fidelity\n";
    for (const ResultRow& r : rows)
      out += format_double(r.axis1) + ',' + format_double(r.axis2) + ',' +
             format_double(r.value) + '\n';
  } else if (id == "fig2b") {
    out += "rate_name,rate_over_gprime,fidelity\n";
    for (const ResultRow& r : rows) {
      std::string rate = r.axis1_name;
      const size_t cut = rate.find("_over_gprime");
      if (cut != std::string::npos) rate.resize(cut);
      out += rate + ',' + format_double(r.axis1) + ',' + format_double(r.value) + '\n';
    }
  } else if (id == "fig3") {
    out += "panel,observable,mode,axis_name,axis_value,t,g_t,fidelity_corrected,fidelity_raw\n";
    for (const ResultRow& r : rows)
      out += r.scenario + ',' + r.observable + ',' + r.mode + ',' + r.axis1_name + ',' +
             format_double(r.axis1) + ',' + format_double(r.t) + ',' +
             format_double(r.g_t) + ',' + format_double(r.value) + ',' +
             format_double(r.value_raw) + '\n';
  } else if (id == "fig4") {
    out += "axis1_name,axis1_rel_dev,axis2_name,axis2_rel_dev,fidelity_raw,fidelity_corrected\n";
    for (const ResultRow& r : rows)
      out += r.axis1_name + ',' + format_double(r.axis1) + ',' + r.axis2_name + ',' +
             format_double(r.axis2) + ',' + format_double(r.value_raw) + ',' +
             format_double(r.value) + '\n';
  } else {
    throw ConfigError("unknown figure table id: " + id);
  }
  return out;
}

inline std::string sweep_csv(const std::vector<ResultRow>& rows, const json& config,
                             const std::string& timestamp) {
  std::string out = csv_preamble(config, timestamp);
  out += "scenario,mode,observable,axis1_name,axis1,axis2_name,axis2,t,g_t,value,"
         "value_raw,mu,t0,gprime\n";
  for (const ResultRow& r : rows) {
    out += r.scenario + ',' + r.mode + ',' + r.observable + ',';
    out += r.axis1_name + ',' + format_double(r.axis1) + ',';
    out += r.axis2_name + ',' + (r.axis2_name.empty() ? "" : format_double(r.axis2)) + ',';
    out += format_double(r.t) + ',' + format_double(r.g_t) + ',' + format_double(r.value) +
           ',' + format_double(r.value_raw) + ',' + format_double(r.mu) + ',' +
           format_double(r.t0) + ',' + format_double(r.gprime) + '\n';
  }
  return out;
}

inline std::string headline_json(const HeadlineReport& r, const std::string& timestamp) {
  json j;
  j["w_fidelity_open"] = r.w_fidelity_open;
  j["t0_us"] = r.t0_us;
  j["strong_drive_fidelity"] = r.strong_drive_fidelity;
  j["paper_targets"] = {{"w_fidelity", r.targets.w_fidelity},
                        {"w_tolerance", r.targets.w_tolerance},
                        {"strong_drive_fidelity", r.targets.strong_drive_fidelity},
                        {"strong_drive_tolerance", r.targets.strong_drive_tolerance},
                        {"t0_us", r.targets.t0_us}};
  j["w_pass"] = r.w_pass;
  j["strong_pass"] = r.strong_pass;
  j["omega_over_gprime"] = r.omega_over_gprime;
  j["omega_solved_rad_per_us"] = r.omega_solved;
  j["w_fidelity_closed"] = r.w_fidelity_closed;
  j["w_fidelity_conditional_renormalized"] = r.w_fidelity_conditional;
  j["strong_drive_t0_gt"] = r.strong_drive_t0_gt;
  j["geometry"] = {{"distance_um", r.geometry.distance_um},
                   {"feasible", r.geometry.feasible}};
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

// Converts the config-level sweep block into the experiments-module spec.
inline SweepSpec make_sweep_spec(const RunConfig& cfg) {
  if (!cfg.has_sweep) throw ConfigError("sweep requires sweep_path/sweep_from/sweep_to/sweep_count");
  SweepSpec spec;
  spec.scenario = cfg.scenario;
  spec.base = cfg.make_params();
  spec.mode = cfg.mode;
  spec.axes.push_back({cfg.sweep_path, linspace(cfg.sweep_from, cfg.sweep_to, cfg.sweep_count)});
  if (cfg.has_sweep2)
    spec.axes.push_back(
        {cfg.sweep2_path, linspace(cfg.sweep2_from, cfg.sweep2_to, cfg.sweep2_count)});
  if (cfg.observable == "clone_fidelity") {
    spec.observable.kind = SweepObservable::Kind::CloneFidelity;
    spec.observable.qubit = cfg.clone_qubit;
    spec.observable.frame_corrected = cfg.clone_frame_corrected;
  }
  if (cfg.t_max_given) {
    spec.time.policy = SweepTime::Policy::GtGrid;
    spec.time.g_t = linspace(0.0, cfg.t_max_gt, cfg.time_samples);
  }
  return spec;
}

}  // namespace io
}  // namespace zenoclone
