#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zenoclone/checks.hpp"
#include "zenoclone/model.hpp"

using namespace zenoclone;

// The reference Hamiltonian in checks.hpp is built on the unprojected
// N*M-atom space from per-atom couplings and projected onto the symmetric
// sector afterwards. Agreement pins down both the sqrt(M) cavity enhancement
// and the absence of any enhancement on the laser drive.
TEST_CASE("collective Hamiltonian matches the atom-by-atom construction") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coupling(0.1, 5.0);
  for (int m : {1, 2, 3}) {
    for (int n : {2, 3, 4}) {
      SystemParams p;
      p.n_cavities = n;
      p.m_atoms = m;
      p.g = coupling(rng);
      p.v = coupling(rng);
      p.omega = coupling(rng);
      p.omega1 = coupling(rng);
      p.g_override[2] = coupling(rng);
      p.v_override[n] = coupling(rng);
      p.omega_override[2] = coupling(rng);

      const Eigen::MatrixXcd ref = reference::dicke_projected_hamiltonian(p);
      const Eigen::MatrixXcd sub = build_h_total(p);
      REQUIRE(ref.rows() == sub.rows());
      CHECK((ref - sub).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());

      StateVector s = StateVector::Random(sub.rows());
      s.normalize();
      CHECK(reference::symmetric_sector_leakage(p, s) <=
            1e-12 * ref.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("Hamiltonian matrix elements at the standard working point") {
  SystemParams p;  // N=3, M=100, g=1, v=5, omega=0.5, omega1... set explicitly
  p.omega1 = 1.25;
  const SubspaceBasis b(3);
  const Eigen::MatrixXcd h = build_h_total(p);

  CHECK(h(b.e_exc(1), b.f_exc(1)).real() == Catch::Approx(1.25));
  CHECK(h(b.e_exc(2), b.f_exc(2)).real() == Catch::Approx(0.5));
  CHECK(h(b.e_exc(1), b.cavity(1)).real() == Catch::Approx(10.0));  // sqrt(100) * g
  CHECK(h(b.fiber(), b.cavity(2)).real() == Catch::Approx(5.0));
  CHECK(h(b.f_exc(1), b.cavity(1)) == std::complex<double>(0.0));
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.row(b.ground()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.col(b.ground()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laser and coupling parts add up to the total") {
  SystemParams p;
  p.v_override[3] = 2.5;
  p.omega_override[2] = 0.75;
  const Eigen::MatrixXcd sum = build_h_laser(p) + build_h_i(p);
  CHECK((sum - build_h_total(p)).cwiseAbs().maxCoeff() == 0.0);

  // The laser part carries only f<->e terms, the coupling part only
  // e<->cavity and cavity<->fiber terms.
  const SubspaceBasis b(3);
  const Eigen::MatrixXcd hl = build_h_laser(p);
  const Eigen::MatrixXcd hi = build_h_i(p);
  CHECK(hl(b.e_exc(1), b.cavity(1)) == std::complex<double>(0.0));
  CHECK(hi(b.e_exc(1), b.f_exc(1)) == std::complex<double>(0.0));
  CHECK(hl(b.e_exc(2), b.f_exc(2)).real() == Catch::Approx(0.75));
  CHECK(hi(b.fiber(), b.cavity(3)).real() == Catch::Approx(2.5));
}

TEST_CASE("per-node overrides change only their node") {
  SystemParams p;
  SystemParams q = p;
  q.g_override[2] = 2.0 * p.g;
  const SubspaceBasis b(3);
  const Eigen::MatrixXcd dh = build_h_total(q) - build_h_total(p);
  CHECK(dh(b.e_exc(2), b.cavity(2)).real() == Catch::Approx(10.0));
  CHECK(dh(b.e_exc(1), b.cavity(1)) == std::complex<double>(0.0));
  CHECK(dh(b.e_exc(3), b.cavity(3)) == std::complex<double>(0.0));
}

TEST_CASE("collapse channel table at full decay") {
  SystemParams p;
  p.kappa = 0.3;
  p.gamma = 0.2;
  p.beta = 0.1;
  const SubspaceBasis b(3);

  const std::vector<CollapseOp> ops = build_collapse_ops(p);
  REQUIRE(ops.size() == 7);
  for (int x = 0; x < 3; ++x) {
    CHECK(ops[x].rate == Catch::Approx(0.3));
    CHECK(ops[x].from == b.cavity(x + 1));
    CHECK(ops[x].to == b.ground());
    CHECK(ops[3 + x].rate == Catch::Approx(0.2));
    CHECK(ops[3 + x].from == b.e_exc(x + 1));
    CHECK(ops[3 + x].to == b.ground());
  }
  CHECK(ops[6].rate == Catch::Approx(0.1));
  CHECK(ops[6].from == b.fiber());
  CHECK(ops[6].to == b.ground());

  const Eigen::MatrixXcd l = ops[6].matrix(b.dim());
  CHECK(l(b.ground(), b.fiber()) == std::complex<double>(1.0));
  CHECK(l.cwiseAbs().sum() == 1.0);
}

TEST_CASE("zero rates produce no channels") {
  CHECK(build_collapse_ops(SystemParams{}).empty());
}

TEST_CASE("branching splits the e-decay between ground and f") {
  SystemParams p;
  p.gamma = 0.2;
  p.gamma_branching = 0.25;
  const SubspaceBasis b(3);
  const std::vector<CollapseOp> ops = build_collapse_ops(p);
  REQUIRE(ops.size() == 6);
  double to_ground = 0, to_f = 0;
  for (const CollapseOp& op : ops) {
    REQUIRE(op.from == b.e_exc(b.label(op.from).node));
    if (op.to == b.ground()) to_ground += op.rate;
    else {
      CHECK(op.to == b.f_exc(b.label(op.from).node));
      to_f += op.rate;
    }
  }
  CHECK(to_ground == Catch::Approx(3 * 0.15));
  CHECK(to_f == Catch::Approx(3 * 0.05));
}

TEST_CASE("initial states") {
  SystemParams p;
  p.theta = 1.1;
  p.delta = 0.7;
  const SubspaceBasis b(3);

  const StateVector seed = initial_state(p, InitialStateKind::WSeed);
  CHECK(seed.norm() == Catch::Approx(1.0));
  CHECK(std::abs(seed(b.f_exc(1)) - 1.0) == 0.0);

  const StateVector in = initial_state(p, InitialStateKind::CloneInput);
  CHECK(in.norm() == Catch::Approx(1.0));
  CHECK(in(b.ground()).real() == Catch::Approx(std::cos(0.55)));
  CHECK(std::arg(in(b.f_exc(1))) == Catch::Approx(0.7));
  CHECK(std::abs(in(b.f_exc(1))) == Catch::Approx(std::sin(0.55)));
}

TEST_CASE("parameter validation names the offending field") {
  SystemParams p;
  p.n_cavities = 1;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("n_cavities"));

  p = SystemParams{};
  p.kappa = -0.1;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("kappa"));

  p = SystemParams{};
  p.gamma_branching = 1.5;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("gamma_branching"));

  p = SystemParams{};
  p.theta = 4.0;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("theta"));

  p = SystemParams{};
  p.g_override[9] = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);

  p = SystemParams{};
  p.g = 0.0;
  p.v = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("advisory flags for stretched regimes") {
  SystemParams p;
  CHECK(p.flags().empty());
  p.n_cavities = 2;
  p.theta = 2.0;
  const std::vector<std::string> f = p.flags();
  REQUIRE(f.size() == 2);
  CHECK(f[0] == "n-equals-2-extrapolated");
  CHECK(f[1] == "theta-beyond-pi-over-2");
}

TEST_CASE("ensemble geometry feasibility") {
  const GeometryCheck g100 = ensemble_geometry_check(100);
  CHECK(g100.distance_um == Catch::Approx(0.41));
  CHECK(g100.feasible);
  CHECK_FALSE(ensemble_geometry_check(200).feasible);
  CHECK(ensemble_geometry_check(199).feasible);
}
