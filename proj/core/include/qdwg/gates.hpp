#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdwg/quantum_state.hpp"
#include "qdwg/runner.hpp"
#include "qdwg/schedule.hpp"

namespace qdwg {

/// One gate segment over `num_dots` dots. Group J (1-based position in
/// `groups`) runs at δ_J = Jδ₀ with λ_J = √J λ₀. k is the smallest integer
/// with √(2k) ≥ ratio_min, δ₀ = λ₀√(2k) and t = πħδ₀/(2λ₀²), so that both
/// 2ηt/ħ = π and δ₀t/ħ = kπ hold at once.
DriveSchedule plan_scz(std::span<const DotGroup> groups, int num_dots, double lambda0,
                       double ratio_min = 100.0);
/// Each pair becomes its own group.
DriveSchedule plan_scz(std::span<const std::pair<int, int>> pairs, int num_dots, double lambda0,
                       double ratio_min = 100.0);

/// Smallest k with √(2k) ≥ ratio_min.
long scz_k(double ratio_min);

/// Multiplies each register amplitude by exp(i Σ_j s_j φ_j) with φ_j = η_jj t/ħ.
QuantumState local_phase_correction(const QuantumState& state, std::span<const double> eta_jj,
                                    double t);

/// φ_gg − φ_fg − φ_gf + φ_ff in (−π, π] from the amplitudes ⟨s|ψ_s⟩ in the
/// order ff, fg, gf, gg. Throws LeakageError when |amp|² < 0.99.
double extract_conditional_phase(std::span<const cplx, 4> amplitudes);
/// Same, from four evolved states started in |ff⟩, |fg⟩, |gf⟩, |gg⟩ (cavity vacuum).
double extract_conditional_phase(std::span<const QuantumState> states);

struct GateResult {
  Tier tier = Tier::eff;
  double t_gate = 0.0;
  std::array<double, 4> phases{};       // after local correction, wrapped
  std::array<double, 4> populations{};  // |⟨s|ψ_s⟩|²
  double conditional_phase = 0.0;
  double fidelity = 0.0;                // |Tr(V†U)|/4 against diag(1, 1, 1, −1)
};

/// Truth table of the two active dots. The eff tier is corrected with the
/// analytic η_jj; cavity tiers with the single-dot phases they actually
/// accumulated (laser Stark shifts included), which is still a local fix.
GateResult cz_truth_table(const DriveSchedule& schedule, Tier tier, const Device& device,
                          const RunOptions& options = {});
inline GateResult cz_truth_table(const DriveSchedule& schedule) {
  return cz_truth_table(schedule, Tier::eff, Device::stark_free(schedule.num_dots));
}

/// Residual conditional phase −(2η_mn/δ_mn) sin(δ_mn t/ħ) between groups m ≠ n
/// at t = kπħ/δ₀ (radians).
double null_gate_check(int m, int n, long k, double lambda0, double delta0);
/// Same at an arbitrary t.
double null_gate_residual(int m, int n, double t, double lambda0, double delta0);

}  // namespace qdwg
