#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qdwg/hamiltonians.hpp"
#include "qdwg/integrator.hpp"
#include "qdwg/quantum_state.hpp"

namespace qdwg {

struct EvolutionSpec {
  Tier tier = Tier::eff;
  double t_final = 0.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;             // 0: unbounded
  std::vector<double> sample_times;  // empty: only t_final

  /// Throws std::invalid_argument on t_final ≤ 0 or non-positive tolerances.
  void validate() const;
  /// Ascending, de-duplicated sample times ending at t_final.
  std::vector<double> stops() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  long steps = 0;

  const QuantumState& final_state() const { return states.back(); }
};

/// Rotating-frame bookkeeping: ψ_lab = exp(−iνt a†a/ħ) ψ_rot.
Vector frame_to_lab(const HilbertSpace& space, double nu, double t, const Vector& psi);
DenseMatrix frame_to_lab(const HilbertSpace& space, double nu, double t, const DenseMatrix& rho);

/// Adaptive integration of iħψ̇ = Hψ from t = 0. Output states are in the lab
/// frame. Norm drift above 1e-7 is logged and renormalized; above 1e-5 the
/// run aborts with NumericalError.
Trajectory schrodinger_evolve(const ModulatedHamiltonian& h, const QuantumState& psi0,
                              const EvolutionSpec& spec);

enum class PropagationMethod { automatic, exact_static, diagonal, floquet, adaptive };

struct PropagatorOptions {
  PropagationMethod method = PropagationMethod::automatic;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.0;
};

struct PropagatorResult {
  DenseMatrix unitary;  // lab frame, U(t1, t0)
  PropagationMethod method = PropagationMethod::automatic;
  std::optional<double> period;
  long periods = 0;
};

/// Common period of a set of frequencies (meV), as 2πħ/ω_b.
///
/// ω_b is found from continued-fraction approximations of f_i/f_0 with
/// denominators ≤ 1e5; harmonics above 1e6 or a phase mismatch above 1e-6 rad
/// accumulated over `horizon` ns reject the candidate.
std::optional<double> common_period(std::span<const double> freqs, double horizon);

/// U(t1, t0). Automatic selection: diagonal → closed form; static → eigen-
/// decomposition; periodic over ≥ 2 periods → Floquet powering; otherwise
/// adaptive integration.
PropagatorResult propagator(const ModulatedHamiltonian& h, double t0, double t1,
                            const PropagatorOptions& options = {});

/// Pure or mixed state pushed through propagator().
QuantumState propagate(const ModulatedHamiltonian& h, const QuantumState& state, double t0,
                       double t1, const PropagatorOptions& options = {});

}  // namespace qdwg
