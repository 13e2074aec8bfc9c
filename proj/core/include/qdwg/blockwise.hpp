#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qdwg/hamiltonians.hpp"
#include "qdwg/lindblad.hpp"
#include "qdwg/quantum_state.hpp"

namespace qdwg {

/// One constant-configuration stretch of eff1 dynamics. Drive phases run on
/// a clock that restarts at the beginning of each segment.
struct BlockSegment {
  double duration = 0.0;  // ns
  std::vector<Eff1Dot> dots;
};

enum class BlockSolver {
  automatic,  // coherent
  coherent,   // closed-form Gaussian solution, no Fock truncation
  fock,       // (cutoff+1)² cavity block per class pair, integrated numerically
};

struct BlockwiseOptions {
  BlockSolver solver = BlockSolver::automatic;
  int fock_cutoff = 4;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Capacity guard: class-pair equations (fock) or class²·N² integrals (coherent).
  std::size_t max_block_equations = 200'000;
  std::size_t max_coherent_terms = 50'000'000;
};

/// How far identical blocks were merged.
struct GroupingAudit {
  std::size_t bitstrings = 0;
  std::size_t classes = 0;
  std::size_t block_equations = 0;  // distinct (class, class') pairs actually solved
  BlockSolver solver = BlockSolver::coherent;
};

/// Evolved register with the cavity traced out, stored as a Schur multiplier:
/// ρ(T)[s, s′] = ρ₀[s, s′] · K[s, s′] for any register ρ₀ with the cavity
/// starting in vacuum.
class BlockwiseResult {
 public:
  struct Impl;
  explicit BlockwiseResult(std::shared_ptr<const Impl> impl);

  int num_dots() const;
  const GroupingAudit& audit() const;

  cplx kernel(std::uint64_t s, std::uint64_t s_prime) const;
  /// ρ₀ ∘ K; N ≤ 12.
  DenseMatrix register_matrix(const DenseMatrix& rho0) const;
  /// Same, for ρ₀ = |+⟩⟨+|^⊗N.
  DenseMatrix register_matrix_plus() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

BlockwiseResult blockwise_evolve(std::span<const BlockSegment> segments, const DecayModel& decay,
                                 const BlockwiseOptions& options = {});

/// Register state after the segments, starting from rho0 ⊗ |0⟩⟨0|.
QuantumState blockwise_decoherence_evolve(std::span<const BlockSegment> segments,
                                          const DecayModel& decay, const QuantumState& rho0,
                                          const BlockwiseOptions& options = {});

/// Tr(ρρ′) for two runs from |+⟩^⊗N without materializing either matrix.
double overlap_from_plus(const BlockwiseResult& a, const BlockwiseResult& b);

}  // namespace qdwg
