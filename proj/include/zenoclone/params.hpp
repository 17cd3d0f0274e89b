#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "zenoclone/errors.hpp"

namespace zenoclone {

// How raw numbers in SystemParams are interpreted.
//  Dimensionless: values are used as given; time is reported in units of 1/g.
//  PhysicalMHz:   values were entered in MHz and converted to angular
//                 frequencies (rad/us) with a factor 2*pi; time is in us.
enum class UnitMode { Dimensionless, PhysicalMHz };

// Single site for the MHz -> angular frequency conversion.
inline double mhz_to_angular(double value_mhz) {
  return 2.0 * std::numbers::pi * value_mhz;
}

// Parameters of the coupled-cavity network: N single-mode cavities, each
// holding an ensemble of M identical three-level atoms (|g>, |f>, |e>), all
// cavities coupled to one shared fiber mode. Uniform baseline couplings may
// be overridden per node (1-based node index) for robustness studies.
struct SystemParams {
  int n_cavities = 3;
  int m_atoms = 100;

  double g = 1.0;        // per-atom cavity coupling; collective value is sqrt(M)*g
  double v = 5.0;        // cavity-fiber coupling
  double omega1 = 0.5;   // classical drive on node 1 (f <-> e)
  double omega = 0.5;    // classical drive on nodes 2..N

  double kappa = 0.0;    // cavity photon decay rate
  double gamma = 0.0;    // collective e-excitation decay rate
  double beta = 0.0;     // fiber photon decay rate
  double gamma_branching = 0.0;  // fraction of gamma routed e -> f instead of e -> g

  double theta = std::numbers::pi / 2;  // Bloch angle of the input qubit
  double delta = 0.0;                   // Bloch phase of the input qubit

  UnitMode unit_mode = UnitMode::Dimensionless;

  // Per-node overrides, keyed by node in 1..N. An omega override for node 1
  // replaces omega1.
  std::map<int, double> g_override;
  std::map<int, double> v_override;
  std::map<int, double> omega_override;
  std::map<int, double> kappa_override;
  std::map<int, double> gamma_override;

  // Collective coupling of one ensemble at the baseline g.
  double gprime() const { return std::sqrt(static_cast<double>(m_atoms)) * g; }

  int dim() const { return 3 * n_cavities + 2; }

  double g_at(int node) const { return lookup(g_override, node, g); }
  double v_at(int node) const { return lookup(v_override, node, v); }
  double omega_at(int node) const {
    return lookup(omega_override, node, node == 1 ? omega1 : omega);
  }
  double kappa_at(int node) const { return lookup(kappa_override, node, kappa); }
  double gamma_at(int node) const { return lookup(gamma_override, node, gamma); }

  // Throws ConfigError naming the offending field. Call after construction;
  // every builder in the library assumes a validated parameter set.
  void validate() const {
    if (n_cavities < 2)
      throw ConfigError("n_cavities must be >= 2, got " + std::to_string(n_cavities));
    if (m_atoms < 1)
      throw ConfigError("m_atoms must be >= 1, got " + std::to_string(m_atoms));
    require_nonneg(g, "g");
    require_nonneg(v, "v");
    require_nonneg(omega, "omega");
    require_nonneg(omega1, "omega1");
    require_nonneg(kappa, "kappa");
    require_nonneg(gamma, "gamma");
    require_nonneg(beta, "beta");
    if (g <= 0.0 && v <= 0.0)
      throw ConfigError("network is degenerate: g and v are both zero");
    if (gamma_branching < 0.0 || gamma_branching > 1.0)
      throw ConfigError("gamma_branching must lie in [0,1], got " +
                        std::to_string(gamma_branching));
    if (theta < 0.0 || theta > std::numbers::pi)
      throw ConfigError("theta must lie in [0,pi], got " + std::to_string(theta));
    if (delta < 0.0 || delta >= 2.0 * std::numbers::pi)
      throw ConfigError("delta must lie in [0,2*pi), got " + std::to_string(delta));
    check_override(g_override, "g_override");
    check_override(v_override, "v_override");
    check_override(omega_override, "omega_override");
    check_override(kappa_override, "kappa_override");
    check_override(gamma_override, "gamma_override");
  }

  // Conditions accepted but worth surfacing in outputs.
  std::vector<std::string> flags() const {
    std::vector<std::string> out;
    if (n_cavities == 2) out.push_back("n-equals-2-extrapolated");
    if (theta > std::numbers::pi / 2 + 1e-12) out.push_back("theta-beyond-pi-over-2");
    return out;
  }

 private:
  static double lookup(const std::map<int, double>& m, int node, double fallback) {
    auto it = m.find(node);
    return it == m.end() ? fallback : it->second;
  }

  static void require_nonneg(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value))
      throw ConfigError(std::string(name) + " must be finite and >= 0, got " +
                        std::to_string(value));
  }

  void check_override(const std::map<int, double>& m, const char* name) const {
    for (const auto& [node, value] : m) {
      if (node < 1 || node > n_cavities)
        throw ConfigError(std::string(name) + " node " + std::to_string(node) +
                          " outside 1.." + std::to_string(n_cavities));
      if (!(value >= 0.0) || !std::isfinite(value))
        throw ConfigError(std::string(name) + " value for node " + std::to_string(node) +
                          " must be finite and >= 0");
    }
  }
};

struct GeometryCheck {
  double distance_um = 0.0;  // inter-atom spacing needed inside one ensemble
  bool feasible = false;     // spacing still resolvable for individual addressing
};

// Spacing scale for M atoms in a fixed trap volume, d = 4.1 / sqrt(M) um,
// with the addressing limit placed at M < 200.
inline GeometryCheck ensemble_geometry_check(int m_atoms) {
  if (m_atoms < 1)
    throw ConfigError("m_atoms must be >= 1, got " + std::to_string(m_atoms));
  GeometryCheck out;
  out.distance_um = 4.1 / std::sqrt(static_cast<double>(m_atoms));
  out.feasible = m_atoms < 200;
  return out;
}

}  // namespace zenoclone
