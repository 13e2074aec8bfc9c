#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdwg/units.hpp"

namespace qdwg {

/// What one dot is asked to do during a segment. Inactive dots have λ = 0.
struct DotDrive {
  bool active = false;
  cplx lambda{0.0};   // target λ, meV
  double delta = 0.0; // target δ, meV
  int group = 0;      // J ≥ 1 when active

  friend bool operator==(const DotDrive&, const DotDrive&) = default;
};

struct ScheduleSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<DotDrive> drives;

  double duration() const { return t_end - t_start; }
  std::vector<int> active_dots() const;
  friend bool operator==(const ScheduleSegment&, const ScheduleSegment&) = default;
};

struct DriveSchedule {
  int num_dots = 0;
  std::vector<ScheduleSegment> segments;
  std::optional<long> k_integer;  // δ₀ t = kπħ per segment
  double lambda0 = 0.0;
  double delta0 = 0.0;

  double duration() const;
  /// Throws std::invalid_argument when segments overlap or run backwards,
  /// when a group mixes δ values, or when the kπ condition fails (1e-12).
  void validate() const;

  friend bool operator==(const DriveSchedule&, const DriveSchedule&) = default;
};

/// Layers executed back to back, shifted onto one time axis.
DriveSchedule concatenate(std::span<const DriveSchedule> layers);

/// Dots sharing a group J share δ_J = Jδ₀ and λ_J = √J λ₀.
using DotGroup = std::vector<int>;

}  // namespace qdwg
