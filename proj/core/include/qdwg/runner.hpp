#pragma once

#include <span>
#include <vector>

#include "qdwg/blockwise.hpp"
#include "qdwg/dot_params.hpp"
#include "qdwg/hamiltonians.hpp"
#include "qdwg/propagate.hpp"
#include "qdwg/schedule.hpp"

namespace qdwg {

/// Fixed hardware: per-dot g and Δ^C. Lasers (Ω, Δ) are chosen per segment
/// so that each dot hits its λ and δ targets.
struct Device {
  std::vector<DotParams> dots;

  /// Fills a missing Δ^C (zero) with Δ + δ₀.
  static Device from_dots(std::vector<DotParams> dots, double delta0);
  /// Identical dots; handy for the eff tiers where only g²/Δ^C matters.
  static Device uniform(int num_dots, cplx g, double delta_cav);
  /// No Stark shift and no realizable lasers: eff and Stark-free eff1 only.
  static Device stark_free(int num_dots);

  int num_dots() const { return static_cast<int>(dots.size()); }
};

/// Δ = Δ′ = Δ^C − δ and Ω = Ω′ = (4λ / (g(1/Δ + 1/Δ^C)))*; inactive dots
/// get Ω = Ω′ = 0 at the nominal δ.
std::vector<DotParams> realize_segment(const Device& device, const ScheduleSegment& segment);
std::vector<Eff1Dot> eff1_segment(const Device& device, const ScheduleSegment& segment);
std::vector<EffDot> eff_segment(const ScheduleSegment& segment);

/// Blockwise segments of a schedule on the eff1 tier.
std::vector<BlockSegment> block_segments(const Device& device, const DriveSchedule& schedule);

struct RunOptions {
  int fock_cutoff = 4;
  PropagatorOptions propagator;
};

/// State space a tier runs in for `num_dots` dots.
HilbertSpace tier_space(Tier tier, int num_dots, int fock_cutoff);

/// The schedule's unitary on the tier space, lab frame. Each segment uses its
/// own clock; the cavity frame ν is the smallest active |δ|.
DenseMatrix schedule_unitary(const DriveSchedule& schedule, Tier tier, const Device& device,
                             const RunOptions& options = {});

/// Final lab-frame states for several initial register bitstrings (cavity in vacuum).
std::vector<QuantumState> run_schedule(const DriveSchedule& schedule, Tier tier,
                                       const Device& device,
                                       std::span<const std::uint64_t> initial_bits,
                                       const RunOptions& options = {});

}  // namespace qdwg
