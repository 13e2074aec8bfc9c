#pragma once

#include <vector>

#include "qdwg/linear_operator.hpp"

namespace qdwg {

/// A normalized pure vector or density matrix over a HilbertSpace.
///
/// Construction validates the invariants: pure states have unit norm within
/// 1e-9; density matrices are Hermitian and unit-trace within 1e-9 with
/// eigenvalues ≥ −1e-8.
class QuantumState {
 public:
  enum class Kind { pure, density };
  /// `structural` skips the eigenvalue test; callers that have already
  /// checked positivity (or hold matrices too large to diagonalize) use it.
  enum class Validation { full, structural };

  static QuantumState pure(HilbertSpace space, Vector amplitudes);
  static QuantumState density(HilbertSpace space, DenseMatrix rho,
                              Validation validation = Validation::full);
  /// Computational basis state |levels⟩ ⊗ |photons⟩.
  static QuantumState basis(HilbertSpace space, std::span<const Level> levels, int photons = 0);
  /// Register bitstring state, e-levels empty, cavity in |photons⟩.
  static QuantumState register_basis(HilbertSpace space, std::uint64_t bits, int photons = 0);
  /// |+⟩^⊗N ⊗ |0⟩ with |+⟩ = (|g⟩ + |f⟩)/√2.
  static QuantumState plus_state(HilbertSpace space);

  const HilbertSpace& space() const { return space_; }
  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::pure; }

  /// Amplitudes; throws for density-matrix states.
  const Vector& vector() const;
  /// The density matrix; pure states are promoted to |ψ⟩⟨ψ|.
  DenseMatrix density_matrix() const;
  QuantumState to_density() const;

  /// ⟨i|ψ⟩ for pure states, ρ_ii for densities.
  cplx amplitude(Index i) const;
  double trace() const;
  double purity() const;

 private:
  QuantumState(HilbertSpace space, Kind kind) : space_(space), kind_(kind) {}

  HilbertSpace space_;
  Kind kind_;
  Vector psi_;
  DenseMatrix rho_;
};

/// Reduced density matrix over the kept sites, in their original order.
/// Without the cavity in `keep` the result space has no cavity factor.
QuantumState partial_trace(const QuantumState& state, std::span<const Site> keep);

/// Traces out the cavity and returns the dot register state.
QuantumState trace_out_cavity(const QuantumState& state);

/// Overlap fidelity Tr(ρρ′). Not the Uhlmann fidelity.
double fidelity(const QuantumState& rho, const QuantumState& rho_prime);

/// ½‖ρ − σ‖₁.
double trace_distance(const QuantumState& rho, const QuantumState& sigma);
double trace_distance(const DenseMatrix& rho, const DenseMatrix& sigma);

/// Embeds a two-level register state into `space` (vacuum cavity, e empty).
QuantumState lift_register(const QuantumState& reg, const HilbertSpace& space);

}  // namespace qdwg
