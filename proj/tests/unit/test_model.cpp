#include <random>

#include "doctest.h"
#include "qdwg/error.hpp"
#include "qdwg/hamiltonians.hpp"
#include "qdwg/operators.hpp"
#include "qdwg/regime.hpp"

using namespace qdwg;

namespace {

DotParams dot(double g, double omega, double delta, double delta_cav) {
  DotParams d;
  d.g = g;
  d.omega = d.omega_prime = omega;
  d.delta = d.delta_prime = delta;
  d.delta_cav = delta_cav;
  return d;
}

// λ written out independently of the library
cplx lambda_oracle(cplx g, cplx omega, double delta, double delta_cav) {
  return std::conj(omega) * g * 0.25 * (delta + delta_cav) / (delta * delta_cav);
}

const Index F = 0;  // bare-register indices
const Index FG = 1, GF = 2, GG = 3;

}  // namespace

TEST_CASE("lambda coefficient") {
  CHECK(std::abs(lambda_coeff(dot(0.10, 10, 200, 200.30))) == doctest::Approx(0.0024981).epsilon(2e-5));
  CHECK(lambda_coeff(dot(0.10, 0, 200, 200.30)) == cplx(0.0));
  CHECK(std::abs(lambda_coeff(dot(0.08, 13.75, 220, 220.30))) == doctest::Approx(0.0024981).epsilon(2e-5));
  const DotParams d = dot(0.1, 3, 150, 151);
  CHECK(std::abs(lambda_coeff(d) - lambda_oracle(0.1, 3, 150, 151)) < 1e-18);
  DotParams z = dot(0.1, 10, 0.0, 200);
  CHECK_THROWS_AS(lambda_coeff(z), std::invalid_argument);
}

TEST_CASE("eta coefficient") {
  const double l0 = 0.0024981;
  CHECK(eta_coeff(l0, 0.30, l0, 0.30) == doctest::Approx(2.080e-5).epsilon(5e-4));
  CHECK(eta_coeff(0.0, 0.30, l0, 0.30) == 0.0);
  const double l2 = std::sqrt(2.0) * l0;
  CHECK(eta_coeff(l2, 0.60, l2, 0.60) == doctest::Approx(2.080e-5).epsilon(5e-4));
  CHECK(eta_coeff(l0, 0.30, l0, 0.30) == doctest::Approx(eta_coeff(l2, 0.60, l2, 0.60)).epsilon(1e-12));
  CHECK_THROWS_AS(eta_coeff(l0, 0.30, l0, -0.30), std::invalid_argument);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 20; ++i) {
    const cplx a(u(rng) * 1e-3, u(rng) * 1e-3), b(u(rng) * 1e-3, -u(rng) * 1e-3);
    const double da = u(rng), db = u(rng);
    const double ab = eta_coeff(a, da, b, db), ba = eta_coeff(b, db, a, da);
    CHECK(std::abs(ab - ba) <= 1e-15 * std::abs(ab));
    CHECK(std::abs(eta_coeff(a, da, a, da) - std::norm(a) / da) <= 1e-15 * std::norm(a) / da);
  }
}

TEST_CASE("derived couplings") {
  const std::vector<DotParams> dots{dot(0.1, 10, 200, 200.3), dot(0.1, 10, 220, 220.5)};
  const DerivedCouplings dc = derive_couplings(dots);
  CHECK(dc.delta_small[0] == doctest::Approx(0.3));
  CHECK(dc.delta_jk(0, 1) == -dc.delta_jk(1, 0));
  CHECK(dc.eta(0, 1) == dc.eta(1, 0));
  CHECK_FALSE(dc.epsilon.has_value());
  const std::vector<DotParams> same{dot(0.1, 10, 200, 200.3), dot(0.1, 10, 200, 200.3)};
  REQUIRE(derive_couplings(same).epsilon.has_value());
  CHECK(*derive_couplings(same).epsilon == derive_couplings(same).eta(0, 0));
}

TEST_CASE("full Hamiltonian matrix elements") {
  const HilbertSpace s(1, 3, 2);
  DotParams d = dot(0.1, 10, 200, 200.3);
  d.omega_prime = 7.0;
  const std::vector<DotParams> dots{d};
  const LinearOperator h = build_full_hamiltonian(dots, s, 0.0);
  const std::vector<Level> e{Level::e}, g{Level::g};
  CHECK(std::abs(h.element(s.index(e, 0), s.index(g, 1)) - d.g) < 1e-15);
  CHECK(std::abs(h.element(s.index(e, 0), s.index(g, 0)) - (d.omega + d.omega_prime) / 2.0) < 1e-15);

  const std::vector<DotParams> off{dot(0.0, 0.0, 200, 200.3)};
  CHECK(build_full_hamiltonian(off, s, 1.0).dense().norm() == 0.0);

  CHECK_THROWS_AS(build_full_hamiltonian(dots, HilbertSpace(1, 2, 2), 0.0), DimensionError);
  CHECK_THROWS_AS(build_full_hamiltonian(dots, HilbertSpace(1, 3, 0), 0.0), DimensionError);
}

TEST_CASE("every builder is Hermitian") {
  const std::vector<DotParams> nominal{dot(0.10, 10, 200, 200.30), dot(0.08, 13.75, 220, 220.30)};
  const HilbertSpace full(2, 3, 4);
  CHECK(build_full_hamiltonian(nominal, full, 0.37).hermiticity_defect() < 1e-12);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    std::vector<DotParams> dots;
    for (int j = 0; j < 2; ++j) {
      DotParams d;
      d.g = cplx(0.1 * u(rng), 0.1 * u(rng));
      d.omega = cplx(5 * u(rng), 5 * u(rng));
      d.omega_prime = cplx(5 * u(rng), 5 * u(rng));
      d.delta = 200 + u(rng);
      d.delta_prime = 200 + u(rng);
      d.delta_cav = d.delta + 0.3 + 0.1 * u(rng);
      dots.push_back(d);
    }
    const double t = 100 * (u(rng) + 1);
    CHECK(build_full_hamiltonian(dots, full, t).hermiticity_defect() < 1e-12);
    CHECK(build_eff1_hamiltonian(dots, HilbertSpace(2, 2, 3), t).hermiticity_defect() < 1e-12);
    CHECK(build_eff_hamiltonian(dots, HilbertSpace::qubits(2), t).hermiticity_defect() < 1e-12);
  }
}

TEST_CASE("eff1 Hamiltonian structure") {
  const DotParams d = dot(0.1, 10, 200, 200.3);
  const std::vector<DotParams> one{d};
  const HilbertSpace s(1, 2, 3);
  const DenseMatrix h = build_eff1_hamiltonian(one, s, 0.0).dense();
  // f-block vanishes
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) CHECK(h(n, m) == cplx(0.0));
  // g-block: −χ a†a − λ a − λ* a†
  const Index off = 4;
  const double chi = 0.01 / 200.3;
  const cplx lam = lambda_coeff(d);
  for (int n = 0; n <= 3; ++n) CHECK(std::abs(h(off + n, off + n) + chi * n) < 1e-16);
  CHECK(std::abs(h(off + 0, off + 1) + lam) < 1e-16);
  CHECK(std::abs(h(off + 1, off + 0) + std::conj(lam)) < 1e-16);

  // no qubit flips: commutes with every projector at random times
  const std::vector<DotParams> two{d, dot(0.08, 13.75, 220, 220.3)};
  const HilbertSpace s2(2, 2, 2);
  for (double t : {0.0, 1.3, 77.0}) {
    const DenseMatrix ht = build_eff1_hamiltonian(two, s2, t).dense();
    for (int j = 0; j < 2; ++j) {
      const DenseMatrix p = dot_operator(s2, j, DotOp::proj_g).dense();
      CHECK((ht * p - p * ht).cwiseAbs().maxCoeff() < 1e-18);
    }
  }
  CHECK_THROWS_AS(build_eff1_hamiltonian(one, HilbertSpace::qubits(1), 0.0), DimensionError);
}

TEST_CASE("eff Hamiltonian") {
  const std::vector<DotParams> eq{dot(0.1, 10, 200, 200.3), dot(0.1, 11, 220, 220.3)};
  const HilbertSpace q = HilbertSpace::qubits(2);
  const DerivedCouplings dc = derive_couplings(eq);
  const DenseMatrix h = build_eff_hamiltonian(eq, q, 12.0).dense();
  CHECK(h(GG, GG).real() == doctest::Approx(dc.eta(0, 0) + dc.eta(1, 1) + 2 * dc.eta(0, 1)).epsilon(1e-14));
  CHECK(h(FG, FG).real() == doctest::Approx(dc.eta(1, 1)).epsilon(1e-14));
  CHECK(h(F, F) == cplx(0.0));
  // exactly diagonal
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (i != j) CHECK(h(i, j) == cplx(0.0));

  // uniform η: |gg⟩ rate is four times |fg⟩
  const std::vector<DotParams> same{dot(0.1, 10, 200, 200.3), dot(0.1, 10, 200, 200.3)};
  const DenseMatrix hs = build_eff_hamiltonian(same, q, 0.0).dense();
  CHECK(hs(GG, GG).real() == doctest::Approx(4 * hs(FG, FG).real()).epsilon(1e-14));

  // unequal δ: cross term vanishes when δ₁₂ t/ħ = π/2
  const std::vector<DotParams> diff{dot(0.1, 10, 200, 200.3), dot(0.1, 10, 200, 200.6)};
  const double d12 = 0.3 - 0.6;
  const double t = kPi / 2 * kHbar / std::abs(d12);
  const DenseMatrix hd = build_eff_hamiltonian(diff, q, t).dense();
  const DerivedCouplings dd = derive_couplings(diff);
  CHECK(std::abs(hd(GG, GG).real() - dd.eta(0, 0) - dd.eta(1, 1)) < 1e-12 * dd.eta(0, 0));
  CHECK(eff_model(std::vector<EffDot>{to_eff(diff[0]), to_eff(diff[1])}, q).is_diagonal());
  CHECK_THROWS_AS(build_eff_hamiltonian(eq, HilbertSpace(2, 2, 1), 0.0), DimensionError);
}

TEST_CASE("uniform Stark construction") {
  const double l0 = 0.0024981, d0 = 0.24981;
  std::vector<EffDot> dots;
  for (int J = 1; J <= 6; ++J) dots.push_back({std::sqrt(double(J)) * l0, J * d0});
  const Eigen::MatrixXd eta = eta_matrix(dots);
  for (int j = 1; j < 6; ++j) CHECK(std::abs(eta(j, j) - eta(0, 0)) <= 1e-12 * eta(0, 0));
}

TEST_CASE("rotating frame representation") {
  const std::vector<DotParams> dots{dot(0.1, 10, 200, 200.3)};
  const HilbertSpace s(1, 3, 2);
  const ModulatedHamiltonian lab = full_model(dots, s);
  CHECK(lab.frequencies().size() == 2);  // Δ and −Δ′ collapse to one frequency
  const ModulatedHamiltonian rot = full_model(dots, s, 0.3);
  CHECK(rot.frame() == 0.3);
  // scaled copy: H_s(t/s) = s·H(t)
  const ModulatedHamiltonian sc = lab.scaled(100.0);
  CHECK((DenseMatrix(sc.matrix_at(0.0123)) - 100.0 * DenseMatrix(lab.matrix_at(1.23))).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("regime validation") {
  const std::vector<DotParams> nominal{dot(0.1, 10, 200, 200.30)};
  const RegimeReport ok = validate_regime(nominal);
  CHECK(ok.pass());
  auto find = [](const RegimeReport& r, const std::string& name) {
    for (const auto& c : r.checks)
      if (c.name == name) return c;
    FAIL("missing check " << name);
    return ConditionCheck{};
  };
  CHECK(find(ok, "large_detuning").measured == doctest::Approx(20.0));
  CHECK(find(ok, "dispersive").measured == doctest::Approx(0.30 / 0.0024981).epsilon(1e-4));
  CHECK(ok.checks.size() == 5);  // every ratio reported while passing

  DotParams mismatch = dot(0.1, 10, 200, 200.30);
  mismatch.omega_prime = 9.0;
  const RegimeReport bad = validate_regime(std::vector<DotParams>{mismatch});
  CHECK_FALSE(bad.pass());
  CHECK_FALSE(find(bad, "omega_magnitude_match").pass);

  // δ = 0.001 meV against λ = 0.0025 meV
  DotParams tight = dot(0.1, 10, 200, 200.001);
  const double lam = std::abs(lambda_coeff(tight));
  const RegimeReport r = validate_regime(std::vector<DotParams>{tight});
  CHECK_FALSE(find(r, "dispersive").pass);
  CHECK(find(r, "dispersive").measured == doctest::Approx(0.001 / lam).epsilon(1e-6));
  CHECK(find(r, "dispersive").measured == doctest::Approx(0.4).epsilon(0.01));

  // mixed δ signs
  const std::vector<DotParams> mixed{dot(0.1, 10, 200, 200.3), dot(0.1, 10, 200, 199.7)};
  CHECK_FALSE(find(validate_regime(mixed), "two_photon_detuning_sign").pass);
}
