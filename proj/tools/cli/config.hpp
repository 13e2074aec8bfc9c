#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdwg/dot_params.hpp"
#include "qdwg/hamiltonians.hpp"
#include "qdwg/lindblad.hpp"

namespace qdwg::cli {

/// Malformed or inconsistent configuration; `what()` names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SchedulerConfig {
  double lambda0_meV = 0.0024981;
  double ratio_min = 100.0;
  friend bool operator==(const SchedulerConfig&, const SchedulerConfig&) = default;
};

struct CzConfig {
  std::pair<int, int> pair{0, 1};
  friend bool operator==(const CzConfig&, const CzConfig&) = default;
};

struct NullGateConfig {
  std::vector<std::pair<int, int>> groups{{2, 1}, {3, 1}, {3, 2}};
  std::vector<long> k{1, 2, 3};
  friend bool operator==(const NullGateConfig&, const NullGateConfig&) = default;
};

struct GraphConfig {
  std::string kind = "cycle";  // cycle | path | complete | random | explicit
  int num_qubits = 4;
  std::vector<std::pair<int, int>> edges;  // explicit only
  double edge_probability = 0.5;           // random only
  friend bool operator==(const GraphConfig&, const GraphConfig&) = default;
};

struct NczConfig {
  int num_controls = 2;
  friend bool operator==(const NczConfig&, const NczConfig&) = default;
};

struct ClusterConfig {
  int rows = 2;
  int cols = 3;
  friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;
};

struct DecaySweepConfig {
  double tau_ratio_min = 0.05;
  double tau_ratio_max = 1.0;
  int points = 20;
  std::vector<double> delta_shifts_meV{0.0};  // one curve per shift of every Δ
  friend bool operator==(const DecaySweepConfig&, const DecaySweepConfig&) = default;
};

struct ScalingConfig {
  std::vector<std::pair<int, int>> lattices{{1, 12}, {2, 6}, {3, 4}};
  bool transposes = true;
  std::vector<int> graph_sizes;  // complete-graph states
  std::vector<int> ncz_controls;
  friend bool operator==(const ScalingConfig&, const ScalingConfig&) = default;
};

struct FockCheckConfig {
  std::vector<int> cutoffs{2, 3, 4};
  double tolerance = 1e-8;
  friend bool operator==(const FockCheckConfig&, const FockCheckConfig&) = default;
};

struct OutputConfig {
  std::string dir = "qdwg-out";
  bool plot = false;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// Everything one run needs. Energies meV, times ns, rates 1/ns; the JSON
/// field names carry the unit.
struct ExperimentConfig {
  std::string name;
  std::vector<DotParams> dots;
  DecayModel decay;
  Tier tier = Tier::eff;
  int fock_cutoff = 4;
  SchedulerConfig scheduler;
  std::uint64_t rng_seed = 0;
  OutputConfig output;

  CzConfig cz;
  NullGateConfig null_gate;
  GraphConfig graph;
  NczConfig ncz;
  ClusterConfig cluster;
  DecaySweepConfig decay_sweep;
  ScalingConfig scaling;
  FockCheckConfig fock_check;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
/// `source` only labels diagnostics.
ExperimentConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace qdwg::cli
