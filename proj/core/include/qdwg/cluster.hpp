#pragma once

#include <string>
#include <vector>

#include "qdwg/graph.hpp"

namespace qdwg {

/// rows × cols dots, row-major (dot index r·cols + c). A chain is 1 × N.
struct LatticeSpec {
  int rows = 1;
  int cols = 1;

  int size() const { return rows * cols; }
  int index(int r, int c) const { return r * cols + c; }
  LatticeSpec transposed() const { return {cols, rows}; }
  std::string label() const;  // "MxN"
};

GraphSpec lattice_graph(const LatticeSpec& lattice);

/// ABAB… chain: A–B pairs, then B–A pairs (a length-2 chain has one layer).
std::vector<DriveSchedule> cluster_1d_schedule(int n, double lambda0, double ratio_min = 100.0);

/// ABCD lattice: horizontal pairs on even columns, horizontal pairs on odd
/// columns, vertical pairs on even rows, vertical pairs on odd rows; empty
/// layers are dropped. The layers are built for the orientation with
/// rows ≤ cols and relabelled for the transpose, so M×N and N×M run the
/// same operator sequence.
std::vector<DriveSchedule> cluster_2d_schedule(int rows, int cols, double lambda0,
                                               double ratio_min = 100.0);

/// Dispatches 1×N / N×1 to the chain and everything else to the lattice.
std::vector<DriveSchedule> cluster_schedule(const LatticeSpec& lattice, double lambda0,
                                            double ratio_min = 100.0);

}  // namespace qdwg
