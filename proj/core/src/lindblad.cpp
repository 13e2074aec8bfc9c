#include "qdwg/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <stdexcept>
#include <string>

#include "qdwg/error.hpp"
#include "qdwg/operators.hpp"

namespace qdwg {

DecayModel DecayModel::from_tau(double tau_w_ns) {
  if (!(tau_w_ns > 0)) throw std::invalid_argument("DecayModel: tau_w must be > 0");
  DecayModel d;
  d.gamma_ = 1.0 / tau_w_ns;
  return d;
}

DecayModel DecayModel::from_gamma(double gamma_per_ns) {
  if (!(gamma_per_ns >= 0) || !std::isfinite(gamma_per_ns))
    throw std::invalid_argument("DecayModel: gamma must be finite and ≥ 0");
  DecayModel d;
  d.gamma_ = gamma_per_ns;
  return d;
}

double DecayModel::tau_w() const {
  return gamma_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / gamma_;
}

Trajectory lindblad_evolve(const ModulatedHamiltonian& h, const QuantumState& rho0,
                           const DecayModel& decay, const EvolutionSpec& spec) {
  spec.validate();
  const HilbertSpace& space = h.space();
  if (!(rho0.space() == space)) throw DimensionError("lindblad_evolve: state and Hamiltonian spaces differ");
  if (!space.has_cavity()) throw DimensionError("lindblad_evolve: space has no cavity factor");

  const CavityOperators cav = cavity_ops(space);
  const SparseMatrix a = cav.a.sparse();
  const SparseMatrix ad = cav.a_dagger.sparse();
  const SparseMatrix n = cav.number.sparse();
  const double gamma = decay.gamma();
  const double inv_hbar = 1.0 / kHbar;

  DenseMatrix hr;  // scratch for H·ρ
  Dopri5<DenseMatrix> solver(
      [&](double t, const DenseMatrix& rho, DenseMatrix& drho) {
        h.apply(t, rho, hr);
        // [H, ρ] = Hρ − (Hρ)† for Hermitian H and ρ
        drho = cplx(0.0, -inv_hbar) * (hr - hr.adjoint());
        if (gamma != 0.0) {
          const DenseMatrix nr = n * rho;
          const DenseMatrix ar = a * rho;
          drho += gamma * (ar * ad);
          drho -= 0.5 * gamma * (nr + nr.adjoint());
        }
      },
      StepControl{spec.rel_tol, spec.abs_tol, spec.max_step});

  Trajectory traj;
  std::vector<double> stops = spec.stops();
  DenseMatrix rho = rho0.density_matrix();
  if (stops.front() == 0.0) {
    traj.times.push_back(0.0);
    traj.states.push_back(rho0.to_density());
    stops.erase(stops.begin());
  }
  const IntegrationStats stats = solver.integrate(rho, 0.0, stops, [&](double t, const DenseMatrix& r) {
    const double trace_err = std::abs(r.trace() - 1.0);
    if (trace_err > 1e-7)
      throw NumericalError("lindblad_evolve: trace drift " + std::to_string(trace_err) + " at t = " +
                           std::to_string(t) + " ns");
    const double herm = (r - r.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-8)
      throw NumericalError("lindblad_evolve: Hermiticity defect " + std::to_string(herm));
    DenseMatrix sym = 0.5 * (r + r.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::EigenvaluesOnly);
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < -1e-6)
      throw NumericalError("lindblad_evolve: positivity lost, eigenvalue " + std::to_string(lowest));
    sym /= sym.trace();
    traj.times.push_back(t);
    traj.states.push_back(QuantumState::density(space, frame_to_lab(space, h.frame(), t, sym),
                                                QuantumState::Validation::structural));
  });
  traj.steps = stats.accepted;
  return traj;
}

}  // namespace qdwg
