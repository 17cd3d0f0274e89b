#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "zenoclone/model.hpp"
#include "zenoclone/zeno.hpp"

namespace zenoclone {

enum class IntegratorMethod { MatrixExp, RK4 };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::MatrixExp;
  double dt = 0.0;         // 0 selects 0.02 / max(|H|, max rate)
  double drift_cap = 0.0;  // 0 selects 1e-9 (norm) resp. 1e-8 (trace)
};

namespace detail {

inline double operator_norm(const Eigen::MatrixXcd& h) {
  return h.rows() == 0 ? 0.0 : h.operatorNorm();
}

// Auto step size keeps dt * max(|H|, rates) == 0.02; an explicit dt is
// rejected beyond 0.1 where fourth-order stepping becomes untrustworthy.
inline double resolve_dt(const IntegratorConfig& cfg, double scale) {
  if (cfg.dt > 0.0) {
    if (cfg.dt * scale > 0.1)
      throw ConfigError("dt " + std::to_string(cfg.dt) +
                        " violates dt * max(|H|, rates) <= 0.1 (scale " +
                        std::to_string(scale) + ")");
    return cfg.dt;
  }
  if (scale <= 0.0) return 0.0;  // nothing evolves
  return 0.02 / scale;
}

template <typename State, typename Rhs>
inline void rk4_run(State& y, double t, double dt, const Rhs& rhs) {
  if (t <= 0.0 || dt <= 0.0) return;
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  const double h = t / steps;
  State k1, k2, k3, k4;
  for (int i = 0; i < steps; ++i) {
    k1 = rhs(y);
    k2 = rhs(y + (h / 2.0) * k1);
    k3 = rhs(y + (h / 2.0) * k2);
    k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace detail

// Exact closed-system propagator from one eigendecomposition, reusable for
// many times. Only valid for a time-independent Hermitian Hamiltonian.
class Propagator {
 public:
  explicit Propagator(const Eigen::MatrixXcd& h) {
    detail::require_hermitian(h, "hamiltonian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success)
      throw NumericalError("eigendecomposition of the Hamiltonian failed");
    values_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors();
  }

  StateVector apply(const StateVector& psi, double t) const {
    Eigen::VectorXcd coeff = vectors_.adjoint() * psi;
    for (int i = 0; i < coeff.size(); ++i)
      coeff(i) *= std::polar(1.0, -values_(i) * t);
    return vectors_ * coeff;
  }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

// Closed-system evolution. MatrixExp is exact; RK4 exists as a cross-check
// and enforces the step-size rule plus a norm-conservation cap.
inline StateVector evolve_schrodinger(const Eigen::MatrixXcd& h, const StateVector& psi0,
                                      double t, const IntegratorConfig& cfg = {}) {
  if (h.rows() != psi0.size())
    throw ConfigError("hamiltonian and state dimensions differ");
  if (t < 0.0) throw ConfigError("evolution time must be >= 0");
  if (cfg.method == IntegratorMethod::MatrixExp) return Propagator(h).apply(psi0, t);

  detail::require_hermitian(h, "hamiltonian");
  const double scale = detail::operator_norm(h);
  const double dt = detail::resolve_dt(cfg, scale);
  StateVector psi = psi0;
  detail::rk4_run(psi, t, dt, [&h](const StateVector& y) -> StateVector {
    return std::complex<double>(0.0, -1.0) * (h * y);
  });
  const double cap = cfg.drift_cap > 0.0 ? cfg.drift_cap : 1e-9;
  const double drift = std::abs(psi.norm() - psi0.norm());
  if (drift > cap)
    throw NumericalError("norm drifted by " + std::to_string(drift) +
                         " during RK4 at dt " + std::to_string(dt));
  return psi;
}

namespace detail {

inline Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& h,
                                     const std::vector<CollapseOp>& ops,
                                     const Eigen::MatrixXcd& rho) {
  const std::complex<double> mi(0.0, -1.0);
  Eigen::MatrixXcd out = mi * (h * rho - rho * h);
  for (const CollapseOp& op : ops) {
    out(op.to, op.to) += op.rate * rho(op.from, op.from).real();
    out.row(op.from) -= (op.rate / 2.0) * rho.row(op.from);
    out.col(op.from) -= (op.rate / 2.0) * rho.col(op.from);
  }
  return out;
}

inline void validate_density(const Eigen::MatrixXcd& rho, double trace_ref,
                             double trace_cap) {
  const double trace_drift = std::abs(rho.trace().real() - trace_ref);
  if (trace_drift > trace_cap)
    throw NumericalError("density matrix trace drifted by " + std::to_string(trace_drift));
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NumericalError("density matrix lost Hermiticity");
  // RK4 does not preserve positivity; at the automatic step size healthy
  // trajectories dip to about -7e-8 in the worst corners, so the floor sits
  // a decade above that noise while staying far below any physical signal.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  if (eig.eigenvalues().minCoeff() < -1e-6)
    throw NumericalError("density matrix eigenvalue " +
                         std::to_string(eig.eigenvalues().minCoeff()) +
                         " below positivity tolerance");
}

}  // namespace detail

// Fixed-step RK4 integration of the master equation with jump channels from
// build_collapse_ops. Holds the running state so callers sampling a time
// trace do not restart from zero for every sample.
class LindbladEvolution {
 public:
  LindbladEvolution(Eigen::MatrixXcd h, std::vector<CollapseOp> ops, DensityMatrix rho0,
                    const IntegratorConfig& cfg = {})
      : h_(std::move(h)), ops_(std::move(ops)), rho_(std::move(rho0)) {
    if (h_.rows() != rho_.rows() || h_.cols() != rho_.cols())
      throw ConfigError("hamiltonian and density matrix dimensions differ");
    detail::require_hermitian(h_, "hamiltonian");
    detail::require_hermitian(rho_, "rho0");
    trace_ref_ = rho_.trace().real();
    double scale = detail::operator_norm(h_);
    for (const CollapseOp& op : ops_) scale = std::max(scale, op.rate);
    dt_ = detail::resolve_dt(cfg, scale);
    trace_cap_ = cfg.drift_cap > 0.0 ? cfg.drift_cap : 1e-8;
  }

  // Advances to absolute time t (monotone across calls) and returns the state.
  const DensityMatrix& advance_to(double t) {
    if (t < time_ - 1e-15)
      throw ConfigError("advance_to called with decreasing time");
    const double span = t - time_;
    if (span > 0.0 && dt_ > 0.0)
      detail::rk4_run(rho_, span, dt_, [this](const DensityMatrix& r) {
        return detail::lindblad_rhs(h_, ops_, r);
      });
    time_ = t;
    detail::validate_density(rho_, trace_ref_, trace_cap_);
    return rho_;
  }

  const DensityMatrix& state() const { return rho_; }
  double time() const { return time_; }
  double dt() const { return dt_; }

 private:
  Eigen::MatrixXcd h_;
  std::vector<CollapseOp> ops_;
  DensityMatrix rho_;
  double trace_ref_ = 1.0;
  double trace_cap_ = 1e-8;
  double dt_ = 0.0;
  double time_ = 0.0;
};

inline DensityMatrix evolve_lindblad(const Eigen::MatrixXcd& h,
                                     const std::vector<CollapseOp>& ops,
                                     const DensityMatrix& rho0, double t,
                                     const IntegratorConfig& cfg = {}) {
  if (t < 0.0) throw ConfigError("evolution time must be >= 0");
  LindbladEvolution evo(h, ops, rho0, cfg);
  return evo.advance_to(t);
}

// No-jump branch of the unraveled master equation: evolution under
// H - (i/2) sum_j r_j L_j^dag L_j. The returned vector is unnormalized; its
// squared norm is the no-jump probability.
inline StateVector evolve_conditional(const Eigen::MatrixXcd& h,
                                      const std::vector<CollapseOp>& ops,
                                      const StateVector& psi0, double t) {
  if (h.rows() != psi0.size())
    throw ConfigError("hamiltonian and state dimensions differ");
  if (t < 0.0) throw ConfigError("evolution time must be >= 0");
  Eigen::MatrixXcd h_nh = h;
  for (const CollapseOp& op : ops)
    h_nh(op.from, op.from) -= std::complex<double>(0.0, 0.5) * op.rate;
  const Eigen::MatrixXcd u = (std::complex<double>(0.0, -1.0) * t * h_nh).exp();
  return u * psi0;
}

// Unrenormalized overlap <psi|rho|psi>, clamped only for float noise.
inline double state_fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size())
    throw ConfigError("density matrix and state dimensions differ");
  const std::complex<double> val = (psi.adjoint() * rho * psi)(0, 0);
  if (std::abs(val.imag()) > 1e-8)
    throw NumericalError("fidelity has imaginary part " + std::to_string(val.imag()));
  if (val.real() < -1e-8 || val.real() > 1.0 + 1e-8)
    throw NumericalError("fidelity " + std::to_string(val.real()) + " outside [0,1]");
  return std::clamp(val.real(), 0.0, 1.0);
}

}  // namespace zenoclone
