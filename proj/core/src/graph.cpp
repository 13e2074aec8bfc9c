#include "qdwg/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "qdwg/diagonal.hpp"
#include "qdwg/gates.hpp"
#include "qdwg/runner.hpp"

namespace qdwg {

GraphSpec GraphSpec::normalized() const {
  if (num_qubits < 1) throw std::invalid_argument("GraphSpec: num_qubits must be ≥ 1");
  std::set<Edge> seen;
  GraphSpec out{num_qubits, {}};
  for (auto [a, b] : edges) {
    if (a == b) throw std::invalid_argument("GraphSpec: self-loop on qubit " + std::to_string(a));
    if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits)
      throw std::out_of_range("GraphSpec: edge endpoint out of range");
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) out.edges.emplace_back(a, b);
  }
  return out;
}

GraphSpec GraphSpec::complete(int n) {
  GraphSpec g{n, {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.edges.emplace_back(a, b);
  return g;
}

GraphSpec GraphSpec::cycle(int n) {
  GraphSpec g = path(n);
  if (n > 2) g.edges.emplace_back(n - 1, 0);
  return g;
}

GraphSpec GraphSpec::path(int n) {
  GraphSpec g{n, {}};
  for (int a = 0; a + 1 < n; ++a) g.edges.emplace_back(a, a + 1);
  return g;
}

QuantumState ideal_graph_state(const GraphSpec& spec) {
  const GraphSpec g = spec.normalized();
  if (g.num_qubits > 20) throw std::invalid_argument("ideal_graph_state: at most 20 qubits");
  const HilbertSpace space = HilbertSpace::qubits(g.num_qubits);
  const int n = g.num_qubits;
  const double amp = std::pow(2.0, -0.5 * n);
  Vector v(space.dimension());
  for (Index s = 0; s < space.dimension(); ++s) {
    const auto bits = static_cast<std::uint64_t>(s);
    int parity = 0;
    for (const auto& [a, b] : g.edges) parity ^= static_cast<int>(dot_in_g(bits, a, n) && dot_in_g(bits, b, n));
    v(s) = parity ? -amp : amp;
  }
  return QuantumState::pure(space, std::move(v));
}

std::vector<std::vector<Edge>> greedy_matchings(const GraphSpec& spec) {
  const GraphSpec g = spec.normalized();
  std::vector<std::vector<Edge>> layers;
  std::vector<std::set<int>> busy;
  for (const Edge& e : g.edges) {
    std::size_t i = 0;
    while (i < layers.size() && (busy[i].count(e.first) || busy[i].count(e.second))) ++i;
    if (i == layers.size()) {
      layers.emplace_back();
      busy.emplace_back();
    }
    layers[i].push_back(e);
    busy[i].insert(e.first);
    busy[i].insert(e.second);
  }
  return layers;
}

std::vector<DriveSchedule> graph_state_schedule(const GraphSpec& spec, double lambda0,
                                                double ratio_min) {
  std::vector<DriveSchedule> out;
  for (const auto& layer : greedy_matchings(spec))
    out.push_back(plan_scz(std::span<const Edge>(layer), spec.num_qubits, lambda0, ratio_min));
  return out;
}

DriveSchedule all_pairs_schedule(std::span<const int> dots, int num_dots, double lambda0,
                                 double ratio_min) {
  const std::vector<DotGroup> groups{DotGroup(dots.begin(), dots.end())};
  return plan_scz(groups, num_dots, lambda0, ratio_min);
}

Vector eff_diagonal(std::span<const DriveSchedule> layers, int num_dots) {
  const HilbertSpace space = HilbertSpace::qubits(num_dots);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(space.dimension());
  for (const DriveSchedule& layer : layers) {
    if (layer.num_dots != num_dots) throw std::invalid_argument("eff_diagonal: layer dot count");
    layer.validate();
    for (const ScheduleSegment& seg : layer.segments) {
      const std::vector<EffDot> dots = eff_segment(seg);
      const double T = seg.duration();
      phi -= diagonal_phases(eff_model(dots, space), 0.0, T);
      const Eigen::MatrixXd eta = eta_matrix(dots);
      for (Index s = 0; s < space.dimension(); ++s)
        for (int j = 0; j < num_dots; ++j)
          if (dot_in_g(static_cast<std::uint64_t>(s), j, num_dots)) phi(s) += eta(j, j) * T;
    }
  }
  return (phi.cast<cplx>() * cplx(0.0, 1.0 / kHbar)).array().exp().matrix();
}

QuantumState execute_eff(std::span<const DriveSchedule> layers, const QuantumState& initial) {
  const HilbertSpace& space = initial.space();
  if (space.has_cavity() || space.has_excited_level())
    throw std::invalid_argument("execute_eff: bare two-level register expected");
  const Vector d = eff_diagonal(layers, space.num_dots());
  if (initial.is_pure()) return QuantumState::pure(space, d.cwiseProduct(initial.vector()));
  DenseMatrix rho = d.asDiagonal() * initial.density_matrix() * d.conjugate().asDiagonal();
  return QuantumState::density(space, std::move(rho), QuantumState::Validation::structural);
}

}  // namespace qdwg
