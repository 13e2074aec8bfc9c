#include "qdwg/cluster.hpp"

#include <stdexcept>

#include "qdwg/gates.hpp"

namespace qdwg {

std::string LatticeSpec::label() const { return std::to_string(rows) + "x" + std::to_string(cols); }

GraphSpec lattice_graph(const LatticeSpec& l) {
  if (l.rows < 1 || l.cols < 1) throw std::invalid_argument("lattice_graph: sizes must be ≥ 1");
  GraphSpec g{l.size(), {}};
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < l.cols; ++c) {
      if (c + 1 < l.cols) g.edges.emplace_back(l.index(r, c), l.index(r, c + 1));
      if (r + 1 < l.rows) g.edges.emplace_back(l.index(r, c), l.index(r + 1, c));
    }
  return g;
}

namespace {

// Pair layers for rows ≤ cols, as (r, c) coordinates.
using Coord = std::pair<int, int>;
using CoordPair = std::pair<Coord, Coord>;

std::vector<std::vector<CoordPair>> lattice_layers(int rows, int cols) {
  std::vector<std::vector<CoordPair>> layers(4);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) layers[c % 2].push_back({{r, c}, {r, c + 1}});
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) layers[2 + r % 2].push_back({{r, c}, {r + 1, c}});
  std::erase_if(layers, [](const auto& l) { return l.empty(); });
  return layers;
}

std::vector<DriveSchedule> layers_to_schedules(const std::vector<std::vector<CoordPair>>& layers,
                                               const LatticeSpec& target, bool transpose,
                                               double lambda0, double ratio_min) {
  std::vector<DriveSchedule> out;
  for (const auto& layer : layers) {
    std::vector<Edge> pairs;
    for (const auto& [p, q] : layer) {
      const Coord a = transpose ? Coord{p.second, p.first} : p;
      const Coord b = transpose ? Coord{q.second, q.first} : q;
      pairs.emplace_back(target.index(a.first, a.second), target.index(b.first, b.second));
    }
    out.push_back(plan_scz(std::span<const Edge>(pairs), target.size(), lambda0, ratio_min));
  }
  return out;
}

}  // namespace

std::vector<DriveSchedule> cluster_1d_schedule(int n, double lambda0, double ratio_min) {
  if (n < 2) throw std::invalid_argument("cluster_1d_schedule: need ≥ 2 dots");
  return layers_to_schedules(lattice_layers(1, n), {1, n}, false, lambda0, ratio_min);
}

std::vector<DriveSchedule> cluster_2d_schedule(int rows, int cols, double lambda0, double ratio_min) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("cluster_2d_schedule: lattice needs ≥ 2 dots");
  const bool transpose = rows > cols;
  const auto layers = transpose ? lattice_layers(cols, rows) : lattice_layers(rows, cols);
  return layers_to_schedules(layers, {rows, cols}, transpose, lambda0, ratio_min);
}

std::vector<DriveSchedule> cluster_schedule(const LatticeSpec& lattice, double lambda0,
                                            double ratio_min) {
  return cluster_2d_schedule(lattice.rows, lattice.cols, lambda0, ratio_min);
}

}  // namespace qdwg
