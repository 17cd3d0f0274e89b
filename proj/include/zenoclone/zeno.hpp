#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "zenoclone/basis.hpp"
#include "zenoclone/model.hpp"
#include "zenoclone/params.hpp"

namespace zenoclone {

namespace detail {
inline void require_hermitian(const Eigen::MatrixXcd& h, const char* name) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ConfigError(std::string(name) + " is not Hermitian");
}
}  // namespace detail

// The decoupled superposition of e-excitations and the fiber photon that the
// exchange couplings annihilate. Closed form for uniform baseline g, v:
// amplitude v/sqrt(N v^2 + M g^2) on every e state and -sqrt(M) g over the
// same root on the fiber.
inline StateVector dark_state(const SystemParams& p) {
  const double root_m = std::sqrt(static_cast<double>(p.m_atoms));
  const double norm = std::hypot(std::sqrt(static_cast<double>(p.n_cavities)) * p.v,
                                 root_m * p.g);
  if (norm <= 0.0)
    throw ConfigError("dark state undefined: g and v are both zero");
  const SubspaceBasis basis(p.n_cavities);
  StateVector d = StateVector::Zero(basis.dim());
  for (int x = 1; x <= p.n_cavities; ++x) d(basis.e_exc(x)) = p.v / norm;
  d(basis.fiber()) = -root_m * p.g / norm;
  return d;
}

// Eigenvalue clusters of a measurement Hamiltonian together with their
// orthogonal projectors. Eigenvalues closer than `tol` fall into one cluster;
// a gap between tol and 10*tol is treated as ambiguous and rejected, since
// the sector split would depend on the tolerance choice.
struct ZenoSectors {
  std::vector<double> eigenvalue;           // cluster means, ascending
  std::vector<Eigen::MatrixXcd> projector;  // matching orthogonal projectors
};

inline ZenoSectors zeno_sectors(const Eigen::MatrixXcd& h_measure, double tol = -1.0) {
  detail::require_hermitian(h_measure, "h_measure");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h_measure);
  if (eig.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of h_measure failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const int n = static_cast<int>(ev.size());
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  if (tol < 0.0) tol = 1e-9 * radius;

  std::vector<std::pair<int, int>> clusters;  // [begin, end) index ranges
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n) {
      clusters.emplace_back(begin, i);
      break;
    }
    const double gap = ev(i) - ev(i - 1);
    if (gap <= tol) continue;
    if (gap < 10.0 * tol)
      throw NumericalError("ambiguous eigenvalue clustering: gap " + std::to_string(gap) +
                           " between " + std::to_string(ev(i - 1)) + " and " +
                           std::to_string(ev(i)) + " is within a decade of tol " +
                           std::to_string(tol));
    clusters.emplace_back(begin, i);
    begin = i;
  }

  ZenoSectors out;
  for (const auto& [b, e] : clusters) {
    out.eigenvalue.push_back(ev.segment(b, e - b).mean());
    const Eigen::MatrixXcd vecs = eig.eigenvectors().middleCols(b, e - b);
    out.projector.push_back(vecs * vecs.adjoint());
  }
  return out;
}

// Projection of a weak Hamiltonian onto the sectors a strong measurement
// Hamiltonian pins: sum_n (lambda_n P_n + P_n h_system P_n).
inline Eigen::MatrixXcd zeno_projected_hamiltonian(const Eigen::MatrixXcd& h_measure,
                                                   const Eigen::MatrixXcd& h_system,
                                                   double tol = -1.0) {
  if (h_measure.rows() != h_system.rows() || h_measure.cols() != h_system.cols())
    throw ConfigError("h_measure and h_system dimensions differ");
  detail::require_hermitian(h_system, "h_system");
  const ZenoSectors sectors = zeno_sectors(h_measure, tol);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(h_measure.rows(), h_measure.cols());
  for (size_t i = 0; i < sectors.projector.size(); ++i) {
    const Eigen::MatrixXcd& pn = sectors.projector[i];
    h += sectors.eigenvalue[i] * pn + pn * h_system * pn;
  }
  return h;
}

// Closed form of the zero-sector projected drive: the dark state couples to
// FExc(1) with eta*Omega1 and to every other FExc(k) with eta*Omega, where
// eta = v/sqrt(N v^2 + M g^2). Uniform baseline couplings assumed.
inline Eigen::MatrixXcd effective_hamiltonian(const SystemParams& p) {
  const SubspaceBasis basis(p.n_cavities);
  const StateVector d = dark_state(p);
  const double norm = std::hypot(std::sqrt(static_cast<double>(p.n_cavities)) * p.v,
                                 std::sqrt(static_cast<double>(p.m_atoms)) * p.g);
  const double eta = p.v / norm;
  StateVector w = StateVector::Zero(basis.dim());
  w(basis.f_exc(1)) = eta * p.omega1;
  for (int k = 2; k <= p.n_cavities; ++k) w(basis.f_exc(k)) = eta * p.omega;
  Eigen::MatrixXcd h = w * d.adjoint();
  return h + h.adjoint().eval();
}

// Rabi frequency of the population exchange the projected drive generates,
// mu = v sqrt(Omega1^2 + (N-1) Omega^2) / sqrt(N v^2 + M g^2).
inline double rabi_mu(const SystemParams& p) {
  const double norm = std::hypot(std::sqrt(static_cast<double>(p.n_cavities)) * p.v,
                                 std::sqrt(static_cast<double>(p.m_atoms)) * p.g);
  if (norm <= 0.0)
    throw ConfigError("rabi_mu undefined: g and v are both zero");
  const double s = std::hypot(p.omega1,
                              std::sqrt(static_cast<double>(p.n_cavities - 1)) * p.omega);
  return p.v * s / norm;
}

// Amplitudes of the zero-sector state at time t, for evolution started in
// FExc(1): A on FExc(1), B on each FExc(k>=2), C on each e state, D on the
// fiber. Normalized so |A|^2 + (N-1)|B|^2 + N|C|^2 + |D|^2 = 1.
struct ZenoAmplitudes {
  std::complex<double> a, b, c, d;
};

inline ZenoAmplitudes amplitudes_abcd(const SystemParams& p, double t) {
  if (!(p.omega > 0.0))
    throw ConfigError("amplitudes_abcd requires omega > 0");
  if (!(p.omega1 > 0.0))
    throw ConfigError("amplitudes_abcd requires omega1 > 0");
  const double n1 = static_cast<double>(p.n_cavities - 1);
  const double s = p.omega1 * p.omega1 + n1 * p.omega * p.omega;
  const double mu = rabi_mu(p);
  const double cmu = std::cos(mu * t);
  const double norm = std::hypot(std::sqrt(static_cast<double>(p.n_cavities)) * p.v,
                                 std::sqrt(static_cast<double>(p.m_atoms)) * p.g);
  const std::complex<double> dark_amp =
      std::complex<double>(0.0, -1.0) * p.omega1 * std::sin(mu * t) / std::sqrt(s);
  ZenoAmplitudes out;
  out.a = (p.omega1 * p.omega1 * cmu + n1 * p.omega * p.omega) / s;
  out.b = p.omega1 * p.omega * (cmu - 1.0) / s;
  out.c = dark_amp * (p.v / norm);
  out.d = -dark_amp * (std::sqrt(static_cast<double>(p.m_atoms)) * p.g / norm);
  return out;
}

// Zero-sector state at time t written in the full 3N+2 basis.
inline StateVector analytic_state(const SystemParams& p, double t) {
  const SubspaceBasis basis(p.n_cavities);
  const double n1 = static_cast<double>(p.n_cavities - 1);
  const double s = p.omega1 * p.omega1 + n1 * p.omega * p.omega;
  if (!(s > 0.0))
    throw ConfigError("analytic_state requires a nonzero drive");
  const double mu = rabi_mu(p);
  const double cmu = std::cos(mu * t);
  const std::complex<double> dark_amp =
      std::complex<double>(0.0, -1.0) * p.omega1 * std::sin(mu * t) / std::sqrt(s);
  StateVector psi = dark_amp * dark_state(p);
  psi(basis.f_exc(1)) += (p.omega1 * p.omega1 * cmu + n1 * p.omega * p.omega) / s;
  for (int k = 2; k <= p.n_cavities; ++k)
    psi(basis.f_exc(k)) += p.omega1 * p.omega * (cmu - 1.0) / s;
  return psi;
}

// Drive choice and timing that turn the exchange into a half Rabi cycle
// ending on the W distribution: Omega1 = (sqrt(N)+1) Omega, t_n = (2n+1) pi/mu.
struct ProtocolSchedule {
  double omega1_required = 0.0;
  double mu = 0.0;
  double t_n = 0.0;
};

inline ProtocolSchedule protocol_schedule(const SystemParams& p, int n = 0) {
  if (n < 0) throw ConfigError("schedule index n must be >= 0");
  if (!(p.omega > 0.0) || !(p.v > 0.0))
    throw ConfigError("protocol_schedule requires omega > 0 and v > 0");
  ProtocolSchedule out;
  out.omega1_required =
      (std::sqrt(static_cast<double>(p.n_cavities)) + 1.0) * p.omega;
  SystemParams q = p;
  q.omega1 = out.omega1_required;
  out.mu = rabi_mu(q);
  out.t_n = (2.0 * n + 1.0) * std::numbers::pi / out.mu;
  return out;
}

// Optimal symmetric clone fidelity reached by qubits 2..N at the protocol
// time, as a function of the input Bloch angle.
inline double clone_fidelity_formula(double theta, int n_copies) {
  if (n_copies < 2)
    throw ConfigError("clone_fidelity_formula requires n_copies >= 2");
  if (theta < 0.0 || theta > std::numbers::pi)
    throw ConfigError("theta must lie in [0,pi], got " + std::to_string(theta));
  const double n = static_cast<double>(n_copies);
  const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
  return c2 * c2 + s2 * s2 / n + ((n - 1.0) / n + 2.0 / std::sqrt(n)) * c2 * s2;
}

namespace detail {
// Shared tail of the two transient fidelity expressions. `diag` is the
// population the environment-traced |0> level collects from states other
// than the node's own f and e excitations; `coh` the interference amplitude.
inline double transient_fidelity(double theta, double diag_excited, double diag_rest,
                                 std::complex<double> coh, bool frame_corrected) {
  const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
  const double sign = frame_corrected ? -1.0 : 1.0;
  return c2 * c2 + diag_excited * s2 * s2 + c2 * s2 * (diag_rest + 2.0 * sign * coh.real());
}
}  // namespace detail

// Transient fidelity of the node-1 logical qubit against the input qubit,
// evaluated from the zero-sector amplitudes. The frame-corrected variant
// flips the sign of the logical |1> component before comparing, removing
// the overall minus the half-cycle exchange imprints on the f amplitudes.
inline double fidelity_qubit1_eff(const SystemParams& p, double t, double theta,
                                  bool frame_corrected) {
  const ZenoAmplitudes z = amplitudes_abcd(p, t);
  const double n1 = static_cast<double>(p.n_cavities - 1);
  const double rest = n1 * (std::norm(z.b) + std::norm(z.c)) + std::norm(z.d);
  return detail::transient_fidelity(theta, std::norm(z.a), rest, z.a, frame_corrected);
}

// Same readout for node 2 (representative of every node k >= 2).
inline double fidelity_qubit2_eff(const SystemParams& p, double t, double theta,
                                  bool frame_corrected) {
  const ZenoAmplitudes z = amplitudes_abcd(p, t);
  const double n2 = static_cast<double>(p.n_cavities - 2);
  const double rest = n2 * (std::norm(z.b) + std::norm(z.c)) + std::norm(z.a) +
                      std::norm(z.c) + std::norm(z.d);
  return detail::transient_fidelity(theta, std::norm(z.b), rest, z.b, frame_corrected);
}

}  // namespace zenoclone
