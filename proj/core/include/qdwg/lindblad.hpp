#pragma once

#include "qdwg/hamiltonians.hpp"
#include "qdwg/propagate.hpp"

namespace qdwg {

/// Waveguide photon loss, γ = 1/τ_w.
class DecayModel {
 public:
  DecayModel() = default;
  static DecayModel from_tau(double tau_w_ns);
  static DecayModel from_gamma(double gamma_per_ns);
  static DecayModel none() { return {}; }

  double gamma() const { return gamma_; }
  /// +inf when γ = 0.
  double tau_w() const;

  friend bool operator==(const DecayModel&, const DecayModel&) = default;

 private:
  double gamma_ = 0.0;
};

/// ρ̇ = −(i/ħ)[H, ρ] + γ (aρa† − ½{a†a, ρ}).
///
/// Trace (1e-7), Hermiticity (1e-8) and the smallest eigenvalue (≥ −1e-6)
/// are checked at every sample time; violations throw NumericalError.
Trajectory lindblad_evolve(const ModulatedHamiltonian& h, const QuantumState& rho0,
                           const DecayModel& decay, const EvolutionSpec& spec);

}  // namespace qdwg
