#pragma once

#include "qdwg/hamiltonians.hpp"
#include "qdwg/quantum_state.hpp"

namespace qdwg {

/// ∫_{t0}^{t1} H_ii(t) dt for a diagonal modulated Hamiltonian, in meV·ns.
/// Oscillating terms integrate in closed form, so there is no step error.
Eigen::VectorXd diagonal_phases(const ModulatedHamiltonian& h, double t0, double t1);

/// Applies exp(−i ∫H dt / ħ). Throws std::invalid_argument for non-diagonal
/// input or a space mismatch.
QuantumState diagonal_propagate(const ModulatedHamiltonian& h, const QuantumState& state,
                                double t0, double t1);
inline QuantumState diagonal_propagate(const ModulatedHamiltonian& h, const QuantumState& state,
                                       double t_final) {
  return diagonal_propagate(h, state, 0.0, t_final);
}

}  // namespace qdwg
