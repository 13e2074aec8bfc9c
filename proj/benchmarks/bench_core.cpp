// Hot paths of the gate and decoherence studies.

#include <benchmark/benchmark.h>

#include "qdwg/blockwise.hpp"
#include "qdwg/cluster.hpp"
#include "qdwg/decoherence.hpp"
#include "qdwg/diagonal.hpp"
#include "qdwg/gates.hpp"
#include "qdwg/propagate.hpp"
#include "qdwg/runner.hpp"

using namespace qdwg;

namespace {

constexpr double kLambda0 = 0.0024981;

DriveSchedule one_cz() {
  const std::vector<std::pair<int, int>> pair{{0, 1}};
  return plan_scz(pair, 2, kLambda0);
}

DotParams dot(double g, double omega, double delta) {
  DotParams d;
  d.g = g;
  d.omega = d.omega_prime = omega;
  d.delta = d.delta_prime = delta;
  return d;
}

}  // namespace

// Eff-tier truth table: closed-form diagonal phases.
static void BM_CzEff(benchmark::State& st) {
  const DriveSchedule s = one_cz();
  for (auto _ : st) benchmark::DoNotOptimize(cz_truth_table(s).fidelity);
}
BENCHMARK(BM_CzEff);

static void BM_DiagonalPropagate(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const HilbertSpace space = HilbertSpace::qubits(n);
  std::vector<EffDot> dots(static_cast<std::size_t>(n), EffDot{kLambda0, 0.25});
  for (int i = 0; i < n; i += 2) dots[static_cast<std::size_t>(i)].delta = 0.5;
  const ModulatedHamiltonian h = eff_model(dots, space);
  const QuantumState plus = QuantumState::plus_state(space);
  for (auto _ : st) benchmark::DoNotOptimize(diagonal_propagate(h, plus, 41388.13).vector().data());
}
BENCHMARK(BM_DiagonalPropagate)->Arg(4)->Arg(8)->Arg(12);

// eff1 CZ over the full 41 µs gate, cavity kept.
static void BM_CzEff1Floquet(benchmark::State& st) {
  const DriveSchedule s = one_cz();
  const Device dev = Device::from_dots({dot(0.10, 10, 200), dot(0.10, 11, 220)}, s.delta0);
  for (auto _ : st) benchmark::DoNotOptimize(cz_truth_table(s, Tier::eff1, dev).fidelity);
  st.SetLabel("fock cutoff 4");
}
BENCHMARK(BM_CzEff1Floquet)->Unit(benchmark::kMillisecond);

static void BM_BlockwiseCluster(benchmark::State& st) {
  const int cols = static_cast<int>(st.range(0));
  const auto layers = cluster_schedule({2, cols}, kLambda0);
  const Device dev = Device::uniform(2 * cols, 0.10, 200.0 + layers.front().delta0);
  const DecayModel decay = DecayModel::from_tau(5.0);
  for (auto _ : st) benchmark::DoNotOptimize(decoherence_fidelity(layers, decay, dev));
  st.SetLabel(std::to_string(2 * cols) + " dots");
}
BENCHMARK(BM_BlockwiseCluster)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_BlockwiseFockSolver(benchmark::State& st) {
  const DriveSchedule s = one_cz();
  const Device dev = Device::from_dots({dot(0.10, 10, 200), dot(0.08, 13.75, 220)}, s.delta0);
  const auto segs = block_segments(dev, s);
  BlockwiseOptions opt;
  opt.solver = BlockSolver::fock;
  opt.fock_cutoff = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(blockwise_evolve(segs, DecayModel::from_tau(1.0), opt).kernel(0, 3));
}
BENCHMARK(BM_BlockwiseFockSolver)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
