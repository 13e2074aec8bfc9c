#include <bit>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "qdwg/cluster.hpp"
#include "qdwg/decoherence.hpp"
#include "qdwg/gates.hpp"
#include "qdwg/graph.hpp"
#include "qdwg/lindblad.hpp"
#include "qdwg/ncz.hpp"
#include "qdwg/propagate.hpp"

using namespace qdwg;

namespace {

const double kLambda0 = 0.0024981;

int popcount(std::uint64_t x) { return static_cast<int>(std::popcount(x)); }

// sign of |s⟩ in the graph state: one −1 per edge inside the g-support
double sign_oracle(const GraphSpec& g, std::uint64_t s) {
  int inside = 0;
  for (auto [a, b] : g.edges)
    if (dot_in_g(s, a, g.num_qubits) && dot_in_g(s, b, g.num_qubits)) ++inside;
  return inside % 2 ? -1.0 : 1.0;
}

double run_fidelity(std::span<const DriveSchedule> layers, const GraphSpec& target) {
  const QuantumState plus = QuantumState::plus_state(HilbertSpace::qubits(target.num_qubits));
  return fidelity(execute_eff(layers, plus), ideal_graph_state(target));
}

std::set<Edge> layer_pairs(const DriveSchedule& layer) {
  std::set<int> active;
  for (int j : layer.segments[0].active_dots()) active.insert(j);
  std::map<int, std::vector<int>> by_group;
  for (int j : active) by_group[layer.segments[0].drives[j].group].push_back(j);
  std::set<Edge> pairs;
  for (auto& [J, dots] : by_group) {
    REQUIRE(dots.size() == 2);
    pairs.insert({dots[0], dots[1]});
  }
  return pairs;
}

GraphSpec random_graph(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.4);
  GraphSpec g{n, {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.edges.emplace_back(a, b);
  return g;
}

}  // namespace

TEST_CASE("graph specs") {
  const GraphSpec g = GraphSpec{3, {{2, 0}, {0, 2}, {1, 2}}}.normalized();
  CHECK(g.edges == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK_THROWS_AS((GraphSpec{3, {{1, 1}}}.normalized()), std::invalid_argument);
  CHECK_THROWS_AS((GraphSpec{3, {{0, 3}}}.normalized()), std::out_of_range);
  CHECK(GraphSpec::complete(5).edges.size() == 10);
  CHECK(GraphSpec::cycle(6).edges.size() == 6);
  CHECK(GraphSpec::path(6).edges.size() == 5);
}

TEST_CASE("ideal graph states") {
  const QuantumState pair = ideal_graph_state({2, {{0, 1}}});
  Vector expected(4);
  expected << 0.5, 0.5, 0.5, -0.5;
  CHECK((pair.vector() - expected).norm() < 1e-15);

  const QuantumState empty = ideal_graph_state({4, {}});
  CHECK((empty.vector() - QuantumState::plus_state(HilbertSpace::qubits(4)).vector()).norm() < 1e-15);

  const QuantumState path3 = ideal_graph_state(GraphSpec::path(3));
  CHECK(path3.vector()(7).real() == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));

  for (int n = 2; n <= 10; ++n) {
    const GraphSpec g = random_graph(n, 100 + n);
    const Vector v = ideal_graph_state(g).vector();
    const double mag = std::pow(2.0, -n / 2.0);
    for (Index s = 0; s < v.size(); ++s) CHECK(std::abs(v(s) - sign_oracle(g, std::uint64_t(s)) * mag) < 1e-14);
  }
  CHECK_THROWS_AS(ideal_graph_state({21, {}}), std::invalid_argument);
}

TEST_CASE("graph-state schedules") {
  CHECK(graph_state_schedule({2, {{0, 1}}}, kLambda0).size() == 1);

  const GraphSpec c4 = GraphSpec::cycle(4);
  const auto matchings = greedy_matchings(c4);
  REQUIRE(matchings.size() == 2);
  for (const auto& m : matchings) CHECK(m.size() == 2);
  const std::vector<DriveSchedule> layers = graph_state_schedule(c4, kLambda0);
  REQUIRE(layers.size() == 2);
  for (const DriveSchedule& l : layers) CHECK(layer_pairs(l).size() == 2);
  CHECK(run_fidelity(layers, c4) == doctest::Approx(1.0).epsilon(1e-9));

  for (const GraphSpec& g : {GraphSpec::complete(5), GraphSpec::path(6), random_graph(7, 9), random_graph(8, 4)}) {
    const auto ls = graph_state_schedule(g, kLambda0);
    // every edge exactly once, matchings vertex-disjoint
    std::set<Edge> seen;
    for (const auto& l : ls) {
      std::set<int> used;
      for (const Edge& e : layer_pairs(l)) {
        CHECK(used.insert(e.first).second);
        CHECK(used.insert(e.second).second);
        CHECK(seen.insert(e).second);
      }
    }
    CHECK(seen.size() == g.normalized().edges.size());
    CHECK(run_fidelity(ls, g) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("1D cluster schedules") {
  const auto two = cluster_1d_schedule(2, kLambda0);
  REQUIRE(two.size() == 1);
  CHECK(layer_pairs(two[0]) == std::set<Edge>{{0, 1}});

  const auto four = cluster_1d_schedule(4, kLambda0);
  REQUIRE(four.size() == 2);
  CHECK(layer_pairs(four[0]) == std::set<Edge>{{0, 1}, {2, 3}});
  CHECK(layer_pairs(four[1]) == std::set<Edge>{{1, 2}});

  for (int n : {3, 5, 8}) {
    const auto layers = cluster_1d_schedule(n, kLambda0);
    CHECK(layers.size() == 2);
    CHECK(run_fidelity(layers, GraphSpec::path(n)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(cluster_1d_schedule(1, kLambda0), std::invalid_argument);
}

TEST_CASE("2D cluster schedules") {
  const auto sq = cluster_2d_schedule(2, 2, kLambda0);
  REQUIRE(sq.size() == 2);
  CHECK(layer_pairs(sq[0]) == std::set<Edge>{{0, 1}, {2, 3}});
  CHECK(layer_pairs(sq[1]) == std::set<Edge>{{0, 2}, {1, 3}});
  const GraphSpec ring = lattice_graph({2, 2});
  CHECK(ring.normalized().edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});  // a 4-cycle
  CHECK(run_fidelity(sq, ring) == doctest::Approx(1.0).epsilon(1e-9));

  for (auto [r, c] : {std::pair{2, 3}, {3, 2}, {3, 3}, {3, 4}, {4, 3}, {2, 5}}) {
    const LatticeSpec lat{r, c};
    const auto layers = cluster_schedule(lat, kLambda0);
    CHECK(layers.size() == cluster_schedule(lat.transposed(), kLambda0).size());
    CHECK(run_fidelity(layers, lattice_graph(lat)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(cluster_schedule({1, 12}, kLambda0).size() == 2);
  CHECK(cluster_schedule({2, 6}, kLambda0).size() == 3);
  CHECK(cluster_schedule({3, 4}, kLambda0).size() == 4);
  CHECK(cluster_schedule({12, 1}, kLambda0).size() == 2);
  CHECK(LatticeSpec{3, 4}.label() == "3x4");
}

TEST_CASE("NCZ construction report") {
  const NczPlan plan = ncz_schedule(2);
  CHECK(plan.layers.size() == 2);
  const NczReport& r = plan.report;
  REQUIRE(r.produced.size() == 8);
  for (Index s = 0; s < 8; ++s) {
    // all pairs over three qubits, then the pair of controls
    const int w = popcount(std::uint64_t(s)), wc = popcount(std::uint64_t(s) >> 1);
    const double sign = ((w * (w - 1) / 2 + wc * (wc - 1) / 2) % 2) ? -1.0 : 1.0;
    CHECK(std::abs(r.produced(s) - sign) < 1e-9);
    CHECK(r.ideal(s) == cplx(s == 7 ? -1.0 : 1.0));
  }
  CHECK_FALSE(r.equivalent);
  CHECK(r.deviation > 0.1);
  const std::string table = r.table();
  CHECK(std::count(table.begin(), table.end(), '\n') == 9);
  CHECK(table.rfind("state,", 0) == 0);

  const NczPlan again = ncz_schedule(2);
  CHECK((again.report.produced - r.produced).norm() == 0.0);
  CHECK(again.report.deviation == r.deviation);

  // CZ twice is the identity
  const std::vector<int> dots{0, 1, 2, 3};
  const DriveSchedule all = all_pairs_schedule(dots, 4, kLambda0);
  const std::vector<DriveSchedule> twice{all, all};
  const Vector d = eff_diagonal(twice, 4);
  CHECK((d - Vector::Ones(16)).cwiseAbs().maxCoeff() < 1e-9);

  for (int n : {3, 4}) {
    const NczReport rep = ncz_schedule(n).report;
    CHECK(rep.produced.size() == (Index{1} << (n + 1)));
    CHECK(rep.equivalent == (rep.deviation < 1e-9));
  }
  CHECK_THROWS_AS(ncz_schedule(1), std::invalid_argument);
}

TEST_CASE("decoherence fidelity") {
  const double d0 = 0.24981;
  SUBCASE("no loss") {
    const auto layers = cluster_schedule({2, 3}, kLambda0);
    CHECK(decoherence_fidelity(layers, DecayModel::none(), Device::stark_free(6)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // with the waveguide Stark shift the lossless state is itself slightly mixed
    const Device dev = Device::uniform(6, 0.1, 200 + d0);
    const DriveSchedule whole = concatenate(layers);
    const BlockwiseResult ref = blockwise_evolve(block_segments(dev, whole), DecayModel::none());
    const DenseMatrix rho = ref.register_matrix_plus();
    CHECK(decoherence_fidelity(layers, DecayModel::none(), dev) ==
          doctest::Approx((rho * rho).trace().real()).epsilon(1e-10));
  }
  SUBCASE("transposed lattices") {
    for (auto [r, c] : {std::pair{2, 3}, {2, 4}, {3, 4}}) {
      const Device dev = Device::uniform(r * c, 0.1, 200 + d0);
      const DecayModel decay = DecayModel::from_tau(1.0);
      const double a = decoherence_fidelity(cluster_schedule({r, c}, kLambda0), decay, dev);
      const double b = decoherence_fidelity(cluster_schedule({c, r}, kLambda0), decay, dev);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
  SUBCASE("more layers, lower fidelity") {
    const Device dev = Device::uniform(6, 0.1, 200 + d0);
    const DecayModel decay = DecayModel::from_tau(1.0);
    const double chain = decoherence_fidelity(cluster_schedule({1, 6}, kLambda0), decay, dev);
    const double grid = decoherence_fidelity(cluster_schedule({2, 3}, kLambda0), decay, dev);
    CHECK(grid <= chain);
  }
  SUBCASE("two-dot CZ against the full master equation") {
    const std::vector<std::pair<int, int>> pair{{0, 1}};
    const std::vector<DriveSchedule> layers{plan_scz(pair, 2, kLambda0)};
    const Device dev = Device::uniform(2, 0.1, 200 + d0);
    const DecayModel decay = DecayModel::from_tau(1.0);
    const std::vector<BlockSegment> segs = block_segments(dev, layers[0]);
    REQUIRE(segs.size() == 1);
    const HilbertSpace space(2, 2, 4);
    const QuantumState rho0 = lift_register(QuantumState::plus_state(HilbertSpace::qubits(2)), space).to_density();
    EvolutionSpec spec;
    spec.t_final = segs[0].duration;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-12;
    const ModulatedHamiltonian h = eff1_model(segs[0].dots, space, d0);
    const DenseMatrix lossy = trace_out_cavity(lindblad_evolve(h, rho0, decay, spec).final_state()).density_matrix();
    const DenseMatrix clean =
        trace_out_cavity(lindblad_evolve(h, rho0, DecayModel::none(), spec).final_state()).density_matrix();
    const double brute = (lossy * clean).trace().real();
    CHECK(decoherence_fidelity(layers, decay, dev) == doctest::Approx(brute).epsilon(1e-4));
  }
  SUBCASE("size cap") {
    const auto layers = cluster_schedule({1, 15}, kLambda0);
    CHECK_THROWS_AS(decoherence_fidelity(layers, DecayModel::from_tau(1.0), Device::stark_free(15)), std::length_error);
  }
}
