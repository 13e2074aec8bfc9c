#include "qdwg/gates.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "qdwg/couplings.hpp"
#include "qdwg/error.hpp"

namespace qdwg {

long scz_k(double ratio_min) {
  if (!(ratio_min >= 1.0)) throw std::invalid_argument("plan_scz: ratio_min must be ≥ 1");
  auto k = static_cast<long>(std::ceil(ratio_min * ratio_min / 2.0 - 1e-9));
  k = std::max(k, 1L);
  while (std::sqrt(2.0 * static_cast<double>(k)) < ratio_min) ++k;
  while (k > 1 && std::sqrt(2.0 * static_cast<double>(k - 1)) >= ratio_min) --k;
  return k;
}

DriveSchedule plan_scz(std::span<const DotGroup> groups, int num_dots, double lambda0,
                       double ratio_min) {
  if (!(lambda0 > 0)) throw std::invalid_argument("plan_scz: lambda0 must be > 0");
  if (num_dots < 1) throw std::invalid_argument("plan_scz: num_dots must be ≥ 1");
  const long k = scz_k(ratio_min);
  const double delta0 = lambda0 * std::sqrt(2.0 * static_cast<double>(k));
  const double t = kPi * kHbar * delta0 / (2.0 * lambda0 * lambda0);

  ScheduleSegment seg;
  seg.t_start = 0.0;
  seg.t_end = t;
  seg.drives.assign(static_cast<std::size_t>(num_dots), DotDrive{false, 0.0, delta0, 0});
  std::set<int> used;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const int J = static_cast<int>(g) + 1;
    for (int dot : groups[g]) {
      if (dot < 0 || dot >= num_dots)
        throw std::out_of_range("plan_scz: dot " + std::to_string(dot) + " out of range");
      if (!used.insert(dot).second)
        throw std::invalid_argument("plan_scz: dot " + std::to_string(dot) + " appears in two groups");
      seg.drives[dot] = {true, std::sqrt(static_cast<double>(J)) * lambda0, J * delta0, J};
    }
  }
  DriveSchedule out;
  out.num_dots = num_dots;
  out.segments.push_back(std::move(seg));
  out.k_integer = k;
  out.lambda0 = lambda0;
  out.delta0 = delta0;
  return out;
}

DriveSchedule plan_scz(std::span<const std::pair<int, int>> pairs, int num_dots, double lambda0,
                       double ratio_min) {
  std::vector<DotGroup> groups;
  for (const auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("plan_scz: pair with a repeated dot");
    groups.push_back({a, b});
  }
  return plan_scz(groups, num_dots, lambda0, ratio_min);
}

QuantumState local_phase_correction(const QuantumState& state, std::span<const double> eta_jj,
                                    double t) {
  const HilbertSpace& space = state.space();
  if (space.has_cavity() || space.has_excited_level())
    throw DimensionError("local_phase_correction: expects a bare two-level register");
  const int n = space.num_dots();
  if (static_cast<int>(eta_jj.size()) != n) throw DimensionError("local_phase_correction: η count");
  Vector ph(space.dimension());
  for (Index s = 0; s < space.dimension(); ++s) {
    double e = 0.0;
    for (int j = 0; j < n; ++j)
      if (dot_in_g(static_cast<std::uint64_t>(s), j, n)) e += eta_jj[j];
    ph(s) = std::polar(1.0, phase(e, t));
  }
  if (state.is_pure()) return QuantumState::pure(space, ph.cwiseProduct(state.vector()));
  DenseMatrix rho = ph.asDiagonal() * state.density_matrix() * ph.conjugate().asDiagonal();
  return QuantumState::density(space, std::move(rho), QuantumState::Validation::structural);
}

namespace {

constexpr double kLeakagePopulation = 0.99;
constexpr std::array<const char*, 4> kLabels{"ff", "fg", "gf", "gg"};

void check_leakage(std::span<const cplx, 4> amps) {
  for (std::size_t i = 0; i < 4; ++i)
    if (std::norm(amps[i]) < kLeakagePopulation)
      throw LeakageError(std::string("basis state |") + kLabels[i] + "> kept population " +
                         std::to_string(std::norm(amps[i])) + " < 0.99; regime violated");
}

}  // namespace

double extract_conditional_phase(std::span<const cplx, 4> amps) {
  check_leakage(amps);
  return wrap_phase(std::arg(amps[3]) - std::arg(amps[1]) - std::arg(amps[2]) + std::arg(amps[0]));
}

double extract_conditional_phase(std::span<const QuantumState> states) {
  if (states.size() != 4) throw std::invalid_argument("extract_conditional_phase: need four states");
  std::array<cplx, 4> amps;
  for (std::size_t i = 0; i < 4; ++i) {
    const QuantumState& st = states[i];
    if (st.space().num_dots() != 2) throw DimensionError("extract_conditional_phase: two dots expected");
    if (!st.is_pure()) throw std::invalid_argument("extract_conditional_phase: pure states expected");
    amps[i] = st.vector()(st.space().register_index(i));
  }
  return extract_conditional_phase(std::span<const cplx, 4>(amps));
}

GateResult cz_truth_table(const DriveSchedule& schedule, Tier tier, const Device& device,
                          const RunOptions& options) {
  schedule.validate();
  // The two dots that are ever active; all others idle in |f⟩ and drop out.
  std::set<int> active;
  for (const ScheduleSegment& seg : schedule.segments)
    for (int j : seg.active_dots()) active.insert(j);
  if (active.size() > 2) throw std::invalid_argument("cz_truth_table: more than two active dots");
  std::vector<int> dots(active.begin(), active.end());
  for (int j = 0; dots.size() < 2 && j < schedule.num_dots; ++j)
    if (!active.count(j)) dots.push_back(j);
  if (dots.size() < 2) throw std::invalid_argument("cz_truth_table: schedule has fewer than two dots");
  std::sort(dots.begin(), dots.end());

  DriveSchedule sub = schedule;
  sub.num_dots = 2;
  for (ScheduleSegment& seg : sub.segments) seg.drives = {seg.drives[dots[0]], seg.drives[dots[1]]};
  Device sub_device;
  if (tier != Tier::eff) {
    if (device.num_dots() != schedule.num_dots) throw DimensionError("cz_truth_table: device size");
    sub_device.dots = {device.dots[dots[0]], device.dots[dots[1]]};
  }

  const HilbertSpace space = tier_space(tier, 2, options.fock_cutoff);
  const DenseMatrix u = schedule_unitary(sub, tier, sub_device, options);
  std::array<cplx, 4> amps;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Index i = space.register_index(s);
    amps[s] = u(i, i);
  }

  GateResult res;
  res.tier = tier;
  res.t_gate = schedule.duration();
  for (std::size_t s = 0; s < 4; ++s) res.populations[s] = std::norm(amps[s]);
  res.conditional_phase = extract_conditional_phase(std::span<const cplx, 4>(amps));

  // Local correction exp(i(s₀φ₀ + s₁φ₁)), φ measured relative to |ff⟩.
  std::array<double, 2> local{};
  if (tier == Tier::eff) {
    for (const ScheduleSegment& seg : sub.segments) {
      const std::vector<EffDot> eff = eff_segment(seg);
      const Eigen::MatrixXd eta = eta_matrix(eff);
      for (int j = 0; j < 2; ++j) local[j] += phase(eta(j, j), seg.duration());
    }
  } else {
    local[0] = -std::arg(amps[2] / amps[0]);  // |gf⟩: dot 0 in g
    local[1] = -std::arg(amps[1] / amps[0]);
  }
  const cplx global = tier == Tier::eff ? cplx(1.0) : std::polar(1.0, -std::arg(amps[0]));
  const std::array<cplx, 4> ideal{1.0, 1.0, 1.0, -1.0};
  cplx overlap = 0.0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const double corr = (s & 2 ? local[0] : 0.0) + (s & 1 ? local[1] : 0.0);
    const cplx v = global * amps[s] * std::polar(1.0, corr);
    res.phases[s] = wrap_phase(std::arg(v));
    overlap += std::conj(ideal[s]) * v;
  }
  res.fidelity = std::abs(overlap) / 4.0;
  return res;
}

double null_gate_residual(int m, int n, double t, double lambda0, double delta0) {
  if (m == n) throw std::invalid_argument("null_gate_check: groups must differ");
  if (m < 1 || n < 1) throw std::invalid_argument("null_gate_check: groups are 1-based");
  const double dm = m * delta0, dn = n * delta0;
  const double eta = eta_coeff(std::sqrt(static_cast<double>(m)) * lambda0, dm,
                               std::sqrt(static_cast<double>(n)) * lambda0, dn);
  const double dmn = dm - dn;
  return -2.0 * eta / dmn * std::sin(phase(dmn, t));
}

double null_gate_check(int m, int n, long k, double lambda0, double delta0) {
  if (k < 1) throw std::invalid_argument("null_gate_check: k must be ≥ 1");
  return null_gate_residual(m, n, static_cast<double>(k) * kPi * kHbar / delta0, lambda0, delta0);
}

}  // namespace qdwg
