#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <random>

#include "zenoclone/model.hpp"
#include "zenoclone/observables.hpp"
#include "zenoclone/zeno.hpp"

using namespace zenoclone;
using Catch::Approx;

namespace {

StateVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  StateVector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = std::complex<double>(dist(rng), dist(rng));
  psi.normalize();
  return psi;
}

// Independent reduction: embed the subspace into logical qubit x environment
// with an isometry that drops the node's e excitation, pairs the global
// ground and the node's f excitation on the same environment label, and
// gives every remaining level its own label. Tracing out the environment of
// the embedded density matrix must reproduce reduce_to_logical_qubit.
Eigen::Matrix2cd reduction_oracle(const DensityMatrix& rho, const SubspaceBasis& basis,
                                  int node) {
  const int dim = basis.dim();
  const int f = basis.f_exc(node);
  const int e = basis.e_exc(node);
  const int denv = dim - 2;
  Eigen::MatrixXcd isometry = Eigen::MatrixXcd::Zero(2 * denv, dim);
  isometry(0 * denv + 0, basis.ground()) = 1.0;
  isometry(1 * denv + 0, f) = 1.0;
  int env = 1;
  for (int i = 0; i < dim; ++i) {
    if (i == basis.ground() || i == f || i == e) continue;
    isometry(0 * denv + env, i) = 1.0;
    ++env;
  }
  const Eigen::MatrixXcd embedded = isometry * rho * isometry.adjoint();
  Eigen::Matrix2cd red = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < denv; ++k) red(a, b) += embedded(a * denv + k, b * denv + k);
  return red;
}

}  // namespace

TEST_CASE("W target vector") {
  const SubspaceBasis basis(4);
  const StateVector w = w_state_vector(basis);
  CHECK(w.norm() == Approx(1.0).epsilon(1e-15));
  for (int x = 1; x <= 4; ++x) CHECK(w(basis.f_exc(x)).real() == Approx(0.5));
  CHECK(std::abs(w(basis.ground())) == 0.0);
  CHECK(std::abs(w(basis.fiber())) == 0.0);
}

TEST_CASE("W fidelity of reference states") {
  const SubspaceBasis basis(3);
  const StateVector w = w_state_vector(basis);
  CHECK(w_state_fidelity(w, 3) == Approx(1.0).epsilon(1e-15));

  StateVector ground = StateVector::Zero(basis.dim());
  ground(basis.ground()) = 1.0;
  CHECK(w_state_fidelity(ground, 3) == 0.0);

  // Lopsided single-node excitation overlaps at 1/N.
  StateVector one = StateVector::Zero(basis.dim());
  one(basis.f_exc(2)) = 1.0;
  CHECK(w_state_fidelity(one, 3) == Approx(1.0 / 3.0).epsilon(1e-15));

  const DensityMatrix mixed =
      DensityMatrix::Identity(basis.dim(), basis.dim()) / static_cast<double>(basis.dim());
  CHECK(w_state_fidelity(mixed, 3) == Approx(1.0 / 11.0).epsilon(1e-12));
  CHECK(w_state_fidelity(DensityMatrix(w * w.adjoint()), 3) == Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(w_state_fidelity(w, 4), ConfigError);
}

TEST_CASE("logical qubit reduction matches the embedding oracle") {
  std::mt19937_64 rng(21);
  for (int n : {2, 3, 5}) {
    const SubspaceBasis basis(n);
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector psi = random_state(basis.dim(), rng);
      const DensityMatrix rho = psi * psi.adjoint();
      for (int node = 1; node <= n; ++node) {
        const Eigen::Matrix2cd expected = reduction_oracle(rho, basis, node);
        const LogicalQubitMatrix from_rho = reduce_to_logical_qubit(rho, basis, node);
        const LogicalQubitMatrix from_psi = reduce_to_logical_qubit(psi, basis, node);
        CHECK((from_rho.m - expected).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((from_psi.m - expected).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(from_rho.trace() == Approx(1.0 - std::norm(psi(basis.e_exc(node)))));
      }
    }
  }
}

TEST_CASE("reduction of the half-cycle clone state") {
  SystemParams p;
  p.omega = 0.5;
  const ProtocolSchedule s = protocol_schedule(p);
  p.omega1 = s.omega1_required;

  const SubspaceBasis basis(3);
  const ZenoAmplitudes z = amplitudes_abcd(p, s.t_n);
  const double c = std::cos(std::numbers::pi / 4.0);
  StateVector psi = StateVector::Zero(basis.dim());
  psi(basis.ground()) = c;
  psi(basis.f_exc(1)) = c * z.a;
  psi(basis.f_exc(2)) = c * z.b;
  psi(basis.f_exc(3)) = c * z.b;

  const LogicalQubitMatrix q = reduce_to_logical_qubit(psi, basis, 2);
  CHECK(q.m(0, 0).real() == Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(q.m(1, 1).real() == Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(q.m(1, 0).real() == Approx(-0.5 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::abs(q.m(1, 0).imag()) <= 1e-15);

  const double f = clone_fidelity(q, std::numbers::pi / 2.0, 0.0, true);
  CHECK(f == Approx(clone_fidelity_formula(std::numbers::pi / 2.0, 3)).epsilon(1e-12));
  const double raw = clone_fidelity(q, std::numbers::pi / 2.0, 0.0, false);
  CHECK(f + raw == Approx(5.0 / 6.0 * 0.5 + 1.0 / 6.0 * 0.5 + 0.5).epsilon(1e-12));
}

TEST_CASE("input phase drops out of the readout") {
  SystemParams p;
  p.omega = 0.5;
  const ProtocolSchedule s = protocol_schedule(p);
  p.omega1 = s.omega1_required;
  const SubspaceBasis basis(3);
  const ZenoAmplitudes z = amplitudes_abcd(p, s.t_n);

  const double theta = 0.9;
  const double cth = std::cos(theta / 2.0);
  const double sth = std::sin(theta / 2.0);
  double reference = -1.0;
  for (int i = 0; i < 16; ++i) {
    const double delta = 2.0 * std::numbers::pi * i / 16.0;
    const std::complex<double> phase(std::cos(delta), std::sin(delta));
    StateVector psi = StateVector::Zero(basis.dim());
    psi(basis.ground()) = cth;
    psi(basis.f_exc(1)) = sth * phase * z.a;
    psi(basis.f_exc(2)) = sth * phase * z.b;
    psi(basis.f_exc(3)) = sth * phase * z.b;
    const double f =
        clone_fidelity(reduce_to_logical_qubit(psi, basis, 2), theta, delta, true);
    if (reference < 0.0) reference = f;
    CHECK(std::abs(f - reference) <= 1e-12);
  }
  CHECK(reference == Approx(clone_fidelity_formula(theta, 3)).epsilon(1e-12));
}

TEST_CASE("clone fidelity rejects unphysical reductions") {
  LogicalQubitMatrix q;
  q.m(0, 0) = 1.5;
  q.m(1, 1) = 1.5;
  CHECK_THROWS_AS(clone_fidelity(q, 1.0, 0.0, true), NumericalError);
}

TEST_CASE("population listing") {
  const SubspaceBasis basis(3);
  StateVector psi = StateVector::Zero(basis.dim());
  psi(basis.ground()) = std::sqrt(0.5);
  psi(basis.fiber()) = std::sqrt(0.3);
  psi(basis.f_exc(2)) = std::sqrt(0.2);

  const auto pops = populations(psi, basis);
  REQUIRE(pops.size() == static_cast<size_t>(basis.dim()));
  CHECK(pops[0].first == "global_ground");
  CHECK(pops[0].second == Approx(0.5));
  CHECK(pops[4].first == "fiber_photon");
  CHECK(pops[4].second == Approx(0.3));
  CHECK(pops[basis.f_exc(2)].first == "f_exc_2");
  CHECK(pops[basis.f_exc(2)].second == Approx(0.2));

  const auto from_rho = populations((psi * psi.adjoint()).eval(), basis);
  for (size_t i = 0; i < pops.size(); ++i) {
    CHECK(from_rho[i].first == pops[i].first);
    CHECK(from_rho[i].second == Approx(pops[i].second).margin(1e-15));
  }
}
