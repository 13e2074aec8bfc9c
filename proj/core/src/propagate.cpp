#include "qdwg/propagate.hpp"

#include <spdlog/spdlog.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdwg/diagonal.hpp"
#include "qdwg/error.hpp"

namespace qdwg {

namespace {

constexpr double kDriftLog = 1e-7;
constexpr double kDriftAbort = 1e-5;

Vector cavity_phases(const HilbertSpace& space, double nu, double t) {
  Vector ph(space.dimension());
  for (Index i = 0; i < space.dimension(); ++i) ph(i) = std::polar(1.0, -phase(nu, t) * space.photons(i));
  return ph;
}

DenseMatrix matrix_power(DenseMatrix base, long n) {
  DenseMatrix result = DenseMatrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = (base * result).eval();
    n >>= 1;
    if (n) base = (base * base).eval();
  }
  return result;
}

// Nearest unitary in the Frobenius norm: removes integrator drift before
// the map is raised to a large power.
DenseMatrix nearest_unitary(const DenseMatrix& u) {
  Eigen::JacobiSVD<DenseMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

DenseMatrix integrate_unitary(const ModulatedHamiltonian& h, double t0, double t1,
                              const PropagatorOptions& opt) {
  const Index d = h.space().dimension();
  DenseMatrix u = DenseMatrix::Identity(d, d);
  if (t1 == t0) return u;
  const cplx factor(0.0, -1.0 / kHbar);
  Dopri5<DenseMatrix> solver(
      [&](double t, const DenseMatrix& y, DenseMatrix& dy) {
        h.apply(t, y, dy);
        dy *= factor;
      },
      StepControl{opt.rel_tol, opt.abs_tol, opt.max_step});
  solver.integrate(u, t0, {t1});
  return u;
}

DenseMatrix static_unitary(const ModulatedHamiltonian& h, double dt) {
  const DenseMatrix hm = DenseMatrix(h.static_part());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hm);
  const Vector ph = (es.eigenvalues().cast<cplx>() * cplx(0.0, -dt / kHbar)).array().exp().matrix();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void EvolutionSpec::validate() const {
  if (!(t_final > 0)) throw std::invalid_argument("EvolutionSpec: t_final must be > 0");
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw std::invalid_argument("EvolutionSpec: tolerances must be > 0");
  if (max_step < 0) throw std::invalid_argument("EvolutionSpec: max_step must be ≥ 0");
  for (double t : sample_times)
    if (t < 0 || t > t_final)
      throw std::invalid_argument("EvolutionSpec: sample time outside [0, t_final]");
}

std::vector<double> EvolutionSpec::stops() const {
  std::vector<double> out(sample_times);
  out.push_back(t_final);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vector frame_to_lab(const HilbertSpace& space, double nu, double t, const Vector& psi) {
  if (nu == 0.0 || !space.has_cavity()) return psi;
  return cavity_phases(space, nu, t).cwiseProduct(psi);
}

DenseMatrix frame_to_lab(const HilbertSpace& space, double nu, double t, const DenseMatrix& rho) {
  if (nu == 0.0 || !space.has_cavity()) return rho;
  const Vector ph = cavity_phases(space, nu, t);
  return ph.asDiagonal() * rho * ph.conjugate().asDiagonal();
}

Trajectory schrodinger_evolve(const ModulatedHamiltonian& h, const QuantumState& psi0,
                              const EvolutionSpec& spec) {
  spec.validate();
  if (!psi0.is_pure()) throw std::invalid_argument("schrodinger_evolve: pure initial state required");
  if (!(psi0.space() == h.space()))
    throw DimensionError("schrodinger_evolve: state and Hamiltonian spaces differ");

  Trajectory traj;
  const HilbertSpace& space = h.space();
  Vector y = psi0.vector();
  const cplx factor(0.0, -1.0 / kHbar);
  Dopri5<Vector> solver(
      [&](double t, const Vector& v, Vector& dv) {
        h.apply(t, v, dv);
        dv *= factor;
      },
      StepControl{spec.rel_tol, spec.abs_tol, spec.max_step});

  std::vector<double> stops = spec.stops();
  if (stops.front() == 0.0) {
    traj.times.push_back(0.0);
    traj.states.push_back(psi0);
    stops.erase(stops.begin());
  }
  const IntegrationStats stats = solver.integrate(y, 0.0, stops, [&](double t, const Vector& v) {
    const double norm = v.norm();
    const double drift = std::abs(norm - 1.0);
    if (drift > kDriftAbort)
      throw NumericalError("schrodinger_evolve: norm drift " + std::to_string(drift) +
                           " at t = " + std::to_string(t) + " ns");
    if (drift > kDriftLog)
      spdlog::warn("schrodinger_evolve: norm drift {:.3e} at t = {} ns, renormalizing", drift, t);
    traj.times.push_back(t);
    traj.states.push_back(QuantumState::pure(space, frame_to_lab(space, h.frame(), t, Vector(v / norm))));
  });
  traj.steps = stats.accepted;
  return traj;
}

std::optional<double> common_period(std::span<const double> freqs, double horizon) {
  std::vector<double> f;
  for (double x : freqs)
    if (x != 0.0) f.push_back(std::abs(x));
  if (f.empty()) return std::nullopt;
  std::sort(f.begin(), f.end());
  const double f0 = f.front();
  constexpr long kMaxDenominator = 100'000;
  constexpr long kMaxHarmonic = 1'000'000;
  constexpr double kPhaseBudget = 1e-6;

  long lcm = 1;
  std::vector<std::pair<long, long>> ratios;  // p/q per frequency
  for (double fi : f) {
    const double r = fi / f0;
    // continued fraction convergents of r
    long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    double x = r;
    bool found = false;
    for (int iter = 0; iter < 64; ++iter) {
      const double a = std::floor(x);
      if (a > static_cast<double>(kMaxHarmonic)) break;
      const long ai = static_cast<long>(a);
      const long hn = ai * h_prev + h_prev2;
      const long kn = ai * k_prev + k_prev2;
      if (kn > kMaxDenominator) break;
      h_prev2 = h_prev; h_prev = hn;
      k_prev2 = k_prev; k_prev = kn;
      const double mismatch = std::abs(fi - f0 * static_cast<double>(hn) / static_cast<double>(kn));
      if (mismatch * horizon / kHbar < kPhaseBudget) {
        found = true;
        break;
      }
      const double frac = x - a;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
    if (!found) return std::nullopt;
    ratios.emplace_back(h_prev, k_prev);
    lcm = std::lcm(lcm, k_prev);
    if (lcm > kMaxHarmonic) return std::nullopt;
  }
  const double base = f0 / static_cast<double>(lcm);
  for (const auto& [p, q] : ratios)
    if (p * (lcm / q) > kMaxHarmonic) return std::nullopt;
  return 2.0 * kPi * kHbar / base;
}

PropagatorResult propagator(const ModulatedHamiltonian& h, double t0, double t1,
                            const PropagatorOptions& opt) {
  if (t1 < t0) throw std::invalid_argument("propagator: t1 < t0");
  const HilbertSpace& space = h.space();
  const double dt = t1 - t0;
  PropagatorResult res;
  PropagationMethod method = opt.method;
  if (method == PropagationMethod::automatic) {
    if (h.is_diagonal())
      method = PropagationMethod::diagonal;
    else if (h.is_static())
      method = PropagationMethod::exact_static;
    else {
      const std::vector<double> freqs = h.frequencies();
      const auto period = common_period(freqs, dt);
      method = (period && dt >= 2.0 * *period) ? PropagationMethod::floquet : PropagationMethod::adaptive;
    }
  }

  DenseMatrix u;
  switch (method) {
    case PropagationMethod::diagonal: {
      const Eigen::VectorXd phi = diagonal_phases(h, t0, t1);
      u = (phi.cast<cplx>() * cplx(0.0, -1.0 / kHbar)).array().exp().matrix().asDiagonal();
      break;
    }
    case PropagationMethod::exact_static:
      if (!h.is_static()) throw std::invalid_argument("propagator: Hamiltonian is time dependent");
      u = static_unitary(h, dt);
      break;
    case PropagationMethod::floquet: {
      const std::vector<double> freqs = h.frequencies();
      const auto period = common_period(freqs, dt);
      if (!period) throw std::invalid_argument("propagator: no common period for Floquet propagation");
      const double T = *period;
      const auto n = static_cast<long>(std::floor(dt / T));
      const double rest = dt - static_cast<double>(n) * T;
      const DenseMatrix one_period = nearest_unitary(integrate_unitary(h, t0, t0 + T, opt));
      // H(t + T) = H(t), so the remainder can start at t0.
      u = integrate_unitary(h, t0, t0 + rest, opt) * matrix_power(one_period, n);
      res.period = T;
      res.periods = n;
      break;
    }
    case PropagationMethod::adaptive:
      u = integrate_unitary(h, t0, t1, opt);
      break;
    case PropagationMethod::automatic:
      break;
  }
  res.method = method;
  if (h.frame() != 0.0 && space.has_cavity()) {
    const Vector r1 = cavity_phases(space, h.frame(), t1);
    const Vector r0 = cavity_phases(space, h.frame(), t0);
    u = r1.asDiagonal() * u * r0.conjugate().asDiagonal();
  }
  res.unitary = std::move(u);
  return res;
}

QuantumState propagate(const ModulatedHamiltonian& h, const QuantumState& state, double t0,
                       double t1, const PropagatorOptions& options) {
  if (!(h.space() == state.space()))
    throw DimensionError("propagate: state and Hamiltonian spaces differ");
  const DenseMatrix u = propagator(h, t0, t1, options).unitary;
  if (state.is_pure()) {
    Vector v = u * state.vector();
    const double norm = v.norm();
    const double drift = std::abs(norm - 1.0);
    if (drift > kDriftAbort) throw NumericalError("propagate: norm drift " + std::to_string(drift));
    if (drift > kDriftLog) spdlog::warn("propagate: norm drift {:.3e}, renormalizing", drift);
    return QuantumState::pure(state.space(), v / norm);
  }
  DenseMatrix rho = u * state.density_matrix() * u.adjoint();
  rho /= rho.trace();
  return QuantumState::density(state.space(), std::move(rho), QuantumState::Validation::structural);
}

}  // namespace qdwg
