#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "zenoclone/basis.hpp"
#include "zenoclone/dynamics.hpp"
#include "zenoclone/model.hpp"

namespace zenoclone {

// Logical 2x2 readout of one node. Sub-normalized on purpose: population
// sitting in the node's own e excitation belongs to neither logical level,
// so trace == 1 - P(EExc(node)).
struct LogicalQubitMatrix {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();

  double trace() const { return m.trace().real(); }
};

// The W distribution target: equal 1/sqrt(N) weight on every node's
// f excitation.
inline StateVector w_state_vector(const SubspaceBasis& basis) {
  StateVector w = StateVector::Zero(basis.dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(basis.n_cavities()));
  for (int x = 1; x <= basis.n_cavities(); ++x) w(basis.f_exc(x)) = amp;
  return w;
}

inline double w_state_fidelity(const StateVector& psi, int n_cavities) {
  const SubspaceBasis basis(n_cavities);
  if (psi.size() != basis.dim())
    throw ConfigError("state dimension does not match n_cavities");
  return std::norm(w_state_vector(basis).dot(psi));
}

inline double w_state_fidelity(const DensityMatrix& rho, int n_cavities) {
  const SubspaceBasis basis(n_cavities);
  if (rho.rows() != basis.dim())
    throw ConfigError("state dimension does not match n_cavities");
  return state_fidelity(rho, w_state_vector(basis));
}

// Reduction of the network state to one node's logical qubit. Logical |1> is
// the node's f excitation; logical |0> collects every basis state in which
// the node's ensemble rests in |g...g> (global ground, photons, excitations
// of other nodes). The only coherence with a matched environment is the one
// between GlobalGround and the node's own f excitation.
inline LogicalQubitMatrix reduce_to_logical_qubit(const DensityMatrix& rho,
                                                  const SubspaceBasis& basis, int node) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw ConfigError("state dimension does not match basis");
  const int f = basis.f_exc(node);
  const int e = basis.e_exc(node);
  LogicalQubitMatrix q;
  q.m(1, 1) = rho(f, f).real();
  double ground = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    if (i != f && i != e) ground += rho(i, i).real();
  q.m(0, 0) = ground;
  q.m(1, 0) = rho(f, basis.ground());
  q.m(0, 1) = std::conj(q.m(1, 0));
  return q;
}

inline LogicalQubitMatrix reduce_to_logical_qubit(const StateVector& psi,
                                                  const SubspaceBasis& basis, int node) {
  if (psi.size() != basis.dim())
    throw ConfigError("state dimension does not match basis");
  const int f = basis.f_exc(node);
  const int e = basis.e_exc(node);
  LogicalQubitMatrix q;
  q.m(1, 1) = std::norm(psi(f));
  double ground = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    if (i != f && i != e) ground += std::norm(psi(i));
  q.m(0, 0) = ground;
  q.m(1, 0) = psi(f) * std::conj(psi(basis.ground()));
  q.m(0, 1) = std::conj(q.m(1, 0));
  return q;
}

// Overlap of the logical qubit with the intended input qubit
// cos(theta/2)|0> + sin(theta/2) e^{i delta}|1>. The frame-corrected variant
// flips the sign of the logical coherence first, undoing the global minus
// the half-cycle exchange leaves on every f amplitude.
inline double clone_fidelity(const LogicalQubitMatrix& q, double theta, double delta,
                             bool frame_corrected) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::complex<double> phase(std::cos(delta), std::sin(delta));
  const std::complex<double> coh = (frame_corrected ? -1.0 : 1.0) * q.m(1, 0);
  const double val = c * c * q.m(0, 0).real() + s * s * q.m(1, 1).real() +
                     2.0 * (c * s * (std::conj(phase) * coh)).real();
  if (val < -1e-8 || val > 1.0 + 1e-8)
    throw NumericalError("clone fidelity " + std::to_string(val) + " outside [0,1]");
  return std::clamp(val, 0.0, 1.0);
}

inline std::vector<std::pair<std::string, double>> populations(const StateVector& psi,
                                                               const SubspaceBasis& basis) {
  if (psi.size() != basis.dim())
    throw ConfigError("state dimension does not match basis");
  std::vector<std::pair<std::string, double>> out;
  out.reserve(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) out.emplace_back(basis.name(i), std::norm(psi(i)));
  return out;
}

inline std::vector<std::pair<std::string, double>> populations(const DensityMatrix& rho,
                                                               const SubspaceBasis& basis) {
  if (rho.rows() != basis.dim())
    throw ConfigError("state dimension does not match basis");
  std::vector<std::pair<std::string, double>> out;
  out.reserve(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) out.emplace_back(basis.name(i), rho(i, i).real());
  return out;
}

}  // namespace zenoclone
