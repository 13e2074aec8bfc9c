#include <random>

#include "doctest.h"
#include "qdwg/diagonal.hpp"
#include "qdwg/error.hpp"
#include "qdwg/gates.hpp"

using namespace qdwg;

namespace {

const double kLambda0 = 0.0024981;

double angle_to(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

// φ_gg − φ_fg − φ_gf + φ_ff of amplitudes e^{−iφ/ħ} for dots (p, q), others in f
double pair_phase(const Eigen::VectorXd& phi, int n, int p, int q) {
  auto idx = [&](bool gp, bool gq) {
    std::uint64_t s = 0;
    if (gp) s |= std::uint64_t{1} << (n - 1 - p);
    if (gq) s |= std::uint64_t{1} << (n - 1 - q);
    return static_cast<Index>(s);
  };
  return -(phi(idx(true, true)) - phi(idx(true, false)) - phi(idx(false, true)) + phi(idx(false, false))) / kHbar;
}

DriveSchedule manual(double lambda_a, double lambda_b, double delta, double t) {
  DriveSchedule s;
  s.num_dots = 2;
  s.segments = {{0.0, t, {{true, lambda_a, delta, 1}, {true, lambda_b, delta, 1}}}};
  return s;
}

DotParams nominal_dot() {
  DotParams d;
  d.g = 0.10;
  d.omega = d.omega_prime = 10;
  d.delta = d.delta_prime = 200;
  return d;
}

}  // namespace

TEST_CASE("single-pair schedule") {
  const std::vector<std::pair<int, int>> pair{{0, 1}};
  const DriveSchedule s = plan_scz(pair, 2, kLambda0);
  REQUIRE(s.k_integer.has_value());
  CHECK(*s.k_integer == 5000);
  CHECK(s.delta0 == doctest::Approx(0.24981).epsilon(1e-12));
  CHECK(s.duration() == doctest::Approx(41388.13).epsilon(1e-6));
  CHECK(std::abs(s.delta0 * s.duration() / kHbar - 5000 * kPi) < 1e-12 * 5000 * kPi);
  REQUIRE(s.segments.size() == 1);
  for (const DotDrive& d : s.segments[0].drives) {
    CHECK(d.active);
    CHECK(d.group == 1);
    CHECK(d.lambda == cplx(kLambda0));
    CHECK(d.delta == s.delta0);
  }
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("scheduler arithmetic") {
  CHECK(scz_k(100) == 5000);
  CHECK(scz_k(1) == 1);
  CHECK(scz_k(30) == 450);
  CHECK(scz_k(30.01) == 451);

  const std::vector<std::pair<int, int>> pair{{0, 1}};
  const DriveSchedule loose = plan_scz(pair, 2, kLambda0, 1.0);
  CHECK(*loose.k_integer == 1);
  CHECK(loose.delta0 == doctest::Approx(std::sqrt(2.0) * kLambda0).epsilon(1e-14));

  for (double ratio : {1.0, 7.5, 50.0, 100.0, 250.0})
    for (double l0 : {kLambda0, 0.01, 1e-4}) {
      const DriveSchedule s = plan_scz(pair, 2, l0, ratio);
      const double t = s.duration();
      const double eta = eta_coeff(l0, s.delta0, l0, s.delta0);
      CHECK(std::abs(2 * eta * t / kHbar - kPi) < 1e-12 * kPi);
      CHECK(std::abs(s.delta0 * t / kHbar - *s.k_integer * kPi) < 1e-12 * *s.k_integer * kPi);
    }

  CHECK_THROWS_AS(plan_scz(pair, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(plan_scz(pair, 2, kLambda0, 0.5), std::invalid_argument);
  const std::vector<std::pair<int, int>> shared{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(plan_scz(shared, 3, kLambda0), std::invalid_argument);
  const std::vector<std::pair<int, int>> outside{{0, 5}};
  CHECK_THROWS_AS(plan_scz(outside, 3, kLambda0), std::out_of_range);
}

TEST_CASE("two groups at once") {
  const std::vector<DotGroup> groups{{0, 1}, {2, 3}};
  const DriveSchedule s = plan_scz(groups, 5, kLambda0);
  const auto& d = s.segments[0].drives;
  CHECK(d[2].delta == doctest::Approx(2 * s.delta0).epsilon(1e-15));
  CHECK(std::abs(d[3].lambda) == doctest::Approx(std::sqrt(2.0) * kLambda0).epsilon(1e-15));
  CHECK_FALSE(d[4].active);
  CHECK(d[4].lambda == cplx(0.0));
  CHECK(d[4].delta == s.delta0);

  const ModulatedHamiltonian h = eff_model(eff_segment(s.segments[0]), HilbertSpace::qubits(5));
  const Eigen::VectorXd phi = diagonal_phases(h, 0.0, s.duration());
  CHECK(angle_to(pair_phase(phi, 5, 0, 1), -kPi) < 1e-9);
  CHECK(angle_to(pair_phase(phi, 5, 2, 3), -kPi) < 1e-9);
  for (auto [p, q] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}, {3, 4}})
    CHECK(angle_to(pair_phase(phi, 5, p, q), 0.0) < 1e-9);
}

TEST_CASE("local phase correction") {
  const HilbertSpace q = HilbertSpace::qubits(2);
  const QuantumState plus = QuantumState::plus_state(q);
  const std::vector<double> eta{2.1e-5, 1.3e-5};
  CHECK((local_phase_correction(plus, eta, 0.0).vector() - plus.vector()).norm() == 0.0);
  const QuantumState back = local_phase_correction(local_phase_correction(plus, eta, 777.0), eta, -777.0);
  CHECK((back.vector() - plus.vector()).norm() < 1e-12);

  // equal δ: leftover phases are (0, 0, 0, −2ηt/ħ)
  const double d0 = 0.24981, t = 12345.0;
  const std::vector<EffDot> dots{{kLambda0, d0}, {kLambda0, d0}};
  const double e = eta_coeff(kLambda0, d0, kLambda0, d0);
  const std::vector<double> diag{e, e};
  const QuantumState out = local_phase_correction(diagonal_propagate(eff_model(dots, q), plus, t), diag, t);
  const std::array<double, 4> expected{0, 0, 0, -2 * e * t / kHbar};
  for (Index s = 0; s < 4; ++s) CHECK(angle_to(std::arg(out.vector()(s) / 0.5), expected[s]) < 1e-12);

  CHECK_THROWS_AS(local_phase_correction(plus, std::vector<double>{e}, t), DimensionError);
}

TEST_CASE("conditional phase extraction") {
  const double a = 0.7, b = -1.9;
  auto amps = [](double p0, double p1, double p2, double p3) {
    return std::array<cplx, 4>{std::polar(1.0, p0), std::polar(1.0, p1), std::polar(1.0, p2), std::polar(1.0, p3)};
  };
  CHECK(std::abs(extract_conditional_phase(amps(0, -a, -b, -a - b))) < 1e-15);
  const double pi_case = extract_conditional_phase(amps(0, -a, -b, -a - b - kPi));
  CHECK(angle_to(pi_case, -kPi) < 1e-14);
  CHECK(pi_case > -kPi);  // reported in (−π, π]
  const double et = 0.4;
  CHECK(extract_conditional_phase(amps(0, -et, -et, -4 * et)) == doctest::Approx(-2 * et).epsilon(1e-14));

  std::array<cplx, 4> leaky = amps(0, 0, 0, 0);
  leaky[2] *= 0.99;  // 98% population left
  CHECK_THROWS_AS(extract_conditional_phase(leaky), LeakageError);
  leaky[2] = std::sqrt(0.995);
  CHECK_NOTHROW(extract_conditional_phase(leaky));
}

TEST_CASE("eff-tier truth table") {
  const std::vector<std::pair<int, int>> pair{{0, 1}};
  const GateResult r = cz_truth_table(plan_scz(pair, 2, kLambda0));
  CHECK(r.tier == Tier::eff);
  CHECK(angle_to(r.conditional_phase, -kPi) < 1e-9);
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
  for (double p : r.populations) CHECK(p == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(angle_to(r.phases[3], kPi) < 1e-9);

  // a pair inside a larger register
  const std::vector<std::pair<int, int>> inner{{1, 3}};
  CHECK(cz_truth_table(plan_scz(inner, 4, kLambda0)).fidelity == doctest::Approx(1.0).epsilon(1e-9));

  // zero duration: identity against CZ
  DriveSchedule idle = manual(kLambda0, kLambda0, 0.25, 0.0);
  const GateResult id = cz_truth_table(idle);
  CHECK(std::abs(id.conditional_phase) < 1e-15);
  CHECK(id.fidelity == doctest::Approx(0.5).epsilon(1e-15));

  const std::vector<DotGroup> three{{0, 1, 2}};
  CHECK_THROWS_AS(cz_truth_table(plan_scz(three, 3, kLambda0)), std::invalid_argument);
}

TEST_CASE("correction works for unequal single-dot shifts") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double la = kLambda0 * u(rng), lb = kLambda0 * u(rng), delta = 0.25 * u(rng);
    const double t = kPi * kHbar / (2 * eta_coeff(la, delta, lb, delta));
    const GateResult r = cz_truth_table(manual(la, lb, delta, t));
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(angle_to(r.conditional_phase, -kPi) < 1e-9);
  }
}

TEST_CASE("null gate between groups") {
  const double d0 = 0.24981;
  CHECK(std::abs(null_gate_check(2, 1, 1, kLambda0, d0)) < 1e-12);
  CHECK(std::abs(null_gate_check(4, 1, 2, kLambda0, d0)) < 1e-12);
  CHECK(std::abs(null_gate_check(1, 3, 5000, kLambda0, d0)) < 1e-12);

  for (auto [m, n] : {std::pair{2, 1}, {4, 1}, {3, 5}}) {
    const long k = 2;
    const double t = (k + 0.25) * kPi * kHbar / d0;
    const double lm = std::sqrt(double(m)) * kLambda0, ln = std::sqrt(double(n)) * kLambda0;
    const double eta = lm * ln / 2 * (1 / (m * d0) + 1 / (n * d0));
    const double oracle = -2 * eta / ((m - n) * d0) * std::sin((m - n) * (k + 0.25) * kPi);
    const double got = null_gate_residual(m, n, t, kLambda0, d0);
    CHECK(std::abs(oracle) > 1e-5);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
  }
  CHECK_THROWS_AS(null_gate_check(2, 2, 1, kLambda0, d0), std::invalid_argument);
  CHECK_THROWS_AS(null_gate_check(2, 1, 0, kLambda0, d0), std::invalid_argument);
}

TEST_CASE("cavity tiers agree with the diagonal model") {
  const std::vector<std::pair<int, int>> pair{{0, 1}};
  const DriveSchedule s = plan_scz(pair, 2, kLambda0);
  const Device dev = Device::from_dots({nominal_dot(), nominal_dot()}, s.delta0);
  CHECK(dev.dots[0].delta_cav == doctest::Approx(200 + s.delta0));

  const GateResult eff = cz_truth_table(s);
  const GateResult eff1 = cz_truth_table(s, Tier::eff1, dev);
  const GateResult full = cz_truth_table(s, Tier::full, dev);
  const double ref = -kPi;
  CHECK(angle_to(full.conditional_phase, ref) <= 0.05 * kPi);
  CHECK(angle_to(eff1.conditional_phase, ref) <= 0.02 * kPi);
  CHECK(angle_to(eff.conditional_phase, ref) < 1e-9);
  CHECK(full.fidelity > 0.99);
  CHECK(eff1.fidelity > 0.999);
  CHECK(eff1.tier == Tier::eff1);

  // realized lasers reproduce the targets
  const std::vector<DotParams> lasers = realize_segment(dev, s.segments[0]);
  for (const DotParams& p : lasers) {
    CHECK(std::abs(lambda_coeff(p) - cplx(kLambda0)) < 1e-15);
    CHECK(p.small_delta() == doctest::Approx(s.delta0).epsilon(1e-12));
    CHECK(p.delta == p.delta_prime);
  }
}
