#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "zenoclone/basis.hpp"
#include "zenoclone/params.hpp"

namespace zenoclone {

using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Laser part: classical drives f <-> e inside each ensemble. The symmetric
// collective states exchange with bare matrix element Omega_x; no sqrt(M)
// enhancement because the drive addresses the single shared excitation.
inline Eigen::MatrixXcd build_h_laser(const SystemParams& p) {
  const SubspaceBasis basis(p.n_cavities);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int x = 1; x <= p.n_cavities; ++x) {
    const double om = p.omega_at(x);
    h(basis.e_exc(x), basis.f_exc(x)) = om;
    h(basis.f_exc(x), basis.e_exc(x)) = om;
  }
  return h;
}

// Measurement part: cavity and fiber exchange terms. The atom-cavity element
// carries the collective enhancement sqrt(M)*g_x.
inline Eigen::MatrixXcd build_h_i(const SystemParams& p) {
  const SubspaceBasis basis(p.n_cavities);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  const double root_m = std::sqrt(static_cast<double>(p.m_atoms));
  for (int x = 1; x <= p.n_cavities; ++x) {
    const double gx = root_m * p.g_at(x);
    const double vx = p.v_at(x);
    h(basis.e_exc(x), basis.cavity(x)) = gx;
    h(basis.cavity(x), basis.e_exc(x)) = gx;
    h(basis.fiber(), basis.cavity(x)) = vx;
    h(basis.cavity(x), basis.fiber()) = vx;
  }
  return h;
}

inline Eigen::MatrixXcd build_h_total(const SystemParams& p) {
  return build_h_laser(p) + build_h_i(p);
}

// One decay channel: |to><from| with unit amplitude, applied at `rate`.
struct CollapseOp {
  double rate = 0.0;
  int from = 0;
  int to = 0;

  Eigen::MatrixXcd matrix(int dim) const {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(dim, dim);
    l(to, from) = 1.0;
    return l;
  }
};

// Decay channels of the open model: cavity photons at kappa_x, collective
// e-excitations at gamma_x, the fiber photon at beta. All land in the global
// ground state, which keeps the Lindblad evolution trace preserving; a
// nonzero gamma_branching routes part of gamma to FExc(x) instead.
// Channels with zero rate are omitted.
inline std::vector<CollapseOp> build_collapse_ops(const SystemParams& p) {
  const SubspaceBasis basis(p.n_cavities);
  std::vector<CollapseOp> ops;
  for (int x = 1; x <= p.n_cavities; ++x) {
    const double kx = p.kappa_at(x);
    if (kx > 0.0) ops.push_back({kx, basis.cavity(x), basis.ground()});
  }
  for (int x = 1; x <= p.n_cavities; ++x) {
    const double gx = p.gamma_at(x);
    if (gx <= 0.0) continue;
    const double to_ground = gx * (1.0 - p.gamma_branching);
    const double to_f = gx * p.gamma_branching;
    if (to_ground > 0.0) ops.push_back({to_ground, basis.e_exc(x), basis.ground()});
    if (to_f > 0.0) ops.push_back({to_f, basis.e_exc(x), basis.f_exc(x)});
  }
  if (p.beta > 0.0) ops.push_back({p.beta, basis.fiber(), basis.ground()});
  return ops;
}

enum class InitialStateKind { WSeed, CloneInput };

// WSeed: single f-excitation in node 1, the seed the distribution protocol
// spreads into a W state. CloneInput: the qubit cos(theta/2)|0> +
// sin(theta/2) e^{i delta}|1> encoded as GlobalGround / FExc(1).
inline StateVector initial_state(const SystemParams& p, InitialStateKind kind) {
  const SubspaceBasis basis(p.n_cavities);
  StateVector psi = StateVector::Zero(basis.dim());
  switch (kind) {
    case InitialStateKind::WSeed:
      psi(basis.f_exc(1)) = 1.0;
      break;
    case InitialStateKind::CloneInput: {
      const std::complex<double> phase(std::cos(p.delta), std::sin(p.delta));
      psi(basis.ground()) = std::cos(p.theta / 2.0);
      psi(basis.f_exc(1)) = std::sin(p.theta / 2.0) * phase;
      break;
    }
  }
  return psi;
}

}  // namespace zenoclone
