#pragma once

#include <span>
#include <string>
#include <vector>

#include "qdwg/dot_params.hpp"

namespace qdwg {

struct RegimeThresholds {
  double detuning_ratio = 20.0;    // min(|Δ|,|Δ′|) / max(|g|,|Ω|,|Ω′|)
  double dispersive_ratio = 50.0;  // δ / max(|g|²/Δ^C, |λ|)
  double match_tolerance = 1e-9;   // relative, for |Ω| = |Ω′| and Δ = Δ′
};

struct ConditionCheck {
  std::string name;
  int dot = -1;  // -1 for conditions over the whole device
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Every condition is evaluated and reported; nothing short-circuits.
struct RegimeReport {
  std::vector<ConditionCheck> checks;

  bool pass() const;
  std::vector<ConditionCheck> failures() const;
  std::string to_string() const;
};

RegimeReport validate_regime(std::span<const DotParams> dots, const RegimeThresholds& thresholds = {});

}  // namespace qdwg
