#include "qdwg/diagonal.hpp"

#include <stdexcept>

#include "qdwg/error.hpp"

namespace qdwg {

namespace {

// ∫_{t0}^{t1} e^{iωt/ħ} dt
cplx oscillation_integral(double freq, double t0, double t1) {
  const double w = freq / kHbar;
  return (std::polar(1.0, w * t1) - std::polar(1.0, w * t0)) / cplx(0.0, w);
}

}  // namespace

Eigen::VectorXd diagonal_phases(const ModulatedHamiltonian& h, double t0, double t1) {
  if (!h.is_diagonal()) throw std::invalid_argument("diagonal_phases: Hamiltonian is not diagonal");
  const double dt = t1 - t0;
  Eigen::VectorXd out = h.static_part().diagonal().real() * dt;
  for (const auto& term : h.terms()) {
    const cplx integral = term.coeff * oscillation_integral(term.freq, t0, t1);
    const Eigen::VectorXcd d = term.op.diagonal();
    out += 2.0 * (integral * d).real();
  }
  return out;
}

QuantumState diagonal_propagate(const ModulatedHamiltonian& h, const QuantumState& state,
                                double t0, double t1) {
  if (!(h.space() == state.space()))
    throw DimensionError("diagonal_propagate: state and Hamiltonian spaces differ");
  const Eigen::VectorXd phi = diagonal_phases(h, t0, t1);
  const Vector u = (phi.cast<cplx>() * cplx(0.0, -1.0 / kHbar)).array().exp().matrix();
  if (state.is_pure()) return QuantumState::pure(state.space(), u.cwiseProduct(state.vector()));
  DenseMatrix rho = state.density_matrix();
  rho = u.asDiagonal() * rho * u.conjugate().asDiagonal();
  return QuantumState::density(state.space(), std::move(rho),
                               QuantumState::Validation::structural);
}

}  // namespace qdwg
