#include "qdwg/decoherence.hpp"

#include <stdexcept>

namespace qdwg {

double decoherence_fidelity(std::span<const DriveSchedule> layers, const DecayModel& decay,
                            const Device& device, const BlockwiseOptions& options) {
  const DriveSchedule whole = concatenate(layers);
  if (whole.num_dots > 14)
    throw std::length_error("decoherence_fidelity: " + std::to_string(whole.num_dots) +
                            " dots exceed the engine capacity (14)");
  const std::vector<BlockSegment> segs = block_segments(device, whole);
  const BlockwiseResult noisy = blockwise_evolve(segs, decay, options);
  const BlockwiseResult clean = blockwise_evolve(segs, DecayModel::none(), options);
  return overlap_from_plus(noisy, clean);
}

}  // namespace qdwg
