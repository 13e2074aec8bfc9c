#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qdwg/quantum_state.hpp"
#include "qdwg/schedule.hpp"

namespace qdwg {

using Edge = std::pair<int, int>;

struct GraphSpec {
  int num_qubits = 0;
  std::vector<Edge> edges;

  /// Orders each edge (a < b) and drops duplicates; throws on self-loops or
  /// out-of-range endpoints.
  GraphSpec normalized() const;

  static GraphSpec complete(int n);
  static GraphSpec cycle(int n);
  static GraphSpec path(int n);
};

/// Π_edges CZ |+⟩^⊗N, N ≤ 20.
QuantumState ideal_graph_state(const GraphSpec& spec);

/// Greedy edge colouring: each layer is a set of vertex-disjoint edges.
std::vector<std::vector<Edge>> greedy_matchings(const GraphSpec& spec);

/// One SCZ layer per matching; the pairs of a layer run in parallel groups.
std::vector<DriveSchedule> graph_state_schedule(const GraphSpec& spec, double lambda0,
                                                double ratio_min = 100.0);

/// Every pair among `dots` in a single group: CZ on all of them at once.
DriveSchedule all_pairs_schedule(std::span<const int> dots, int num_dots, double lambda0,
                                 double ratio_min = 100.0);

/// Noiseless eff-tier execution of consecutive layers, each segment followed
/// by its local phase correction.
QuantumState execute_eff(std::span<const DriveSchedule> layers, const QuantumState& initial);

/// Diagonal of the corrected eff-tier unitary of the layers.
Vector eff_diagonal(std::span<const DriveSchedule> layers, int num_dots);

}  // namespace qdwg
