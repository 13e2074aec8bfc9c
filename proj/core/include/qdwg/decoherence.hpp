#pragma once

#include <span>

#include "qdwg/blockwise.hpp"
#include "qdwg/runner.hpp"

namespace qdwg {

/// Tr(ρρ′) of the register (cavity traced out) after running the layers from
/// |+⟩^⊗N ⊗ |0⟩ with decay (ρ) and without (ρ′), on the eff1 tier through
/// the blockwise engine. Throws std::length_error beyond 14 dots.
double decoherence_fidelity(std::span<const DriveSchedule> layers, const DecayModel& decay,
                            const Device& device, const BlockwiseOptions& options = {});

}  // namespace qdwg
