#pragma once

#include <span>
#include <string>
#include <vector>

#include "qdwg/blockwise.hpp"

namespace qdwg {

/// eff1 dynamics from |+⟩^⊗N ⊗ |0⟩ through a list of segments.
struct FockScenario {
  std::vector<BlockSegment> segments;
  DecayModel decay;
};

struct FockConvergenceReport {
  std::vector<int> cutoffs;
  std::vector<double> change;  // trace distance between register states at successive cutoffs
  double tolerance = 1e-8;
  bool converged = false;      // last change below tolerance

  std::string to_string() const;
};

/// Re-runs the scenario with the Fock-block solver at each cutoff.
FockConvergenceReport fock_convergence_check(const FockScenario& scenario,
                                             std::span<const int> cutoffs,
                                             double tolerance = 1e-8);

}  // namespace qdwg
