#include "qdwg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdwg/diagonal.hpp"
#include "qdwg/error.hpp"

namespace qdwg {

Device Device::from_dots(std::vector<DotParams> dots, double delta0) {
  for (DotParams& d : dots)
    if (d.delta_cav == 0.0) d.delta_cav = d.delta + delta0;
  return Device{std::move(dots)};
}

Device Device::uniform(int num_dots, cplx g, double delta_cav) {
  DotParams d;
  d.g = g;
  d.delta_cav = delta_cav;
  return Device{std::vector<DotParams>(static_cast<std::size_t>(num_dots), d)};
}

Device Device::stark_free(int num_dots) { return Device{std::vector<DotParams>(static_cast<std::size_t>(num_dots))}; }

namespace {

void check_device(const Device& device, const ScheduleSegment& segment) {
  if (device.num_dots() != static_cast<int>(segment.drives.size()))
    throw DimensionError("device has " + std::to_string(device.num_dots()) + " dots, schedule " +
                         std::to_string(segment.drives.size()));
}

double nominal_delta(const ScheduleSegment& segment) {
  double d = 0.0;
  for (const DotDrive& drv : segment.drives)
    if (drv.delta != 0.0 && (d == 0.0 || std::abs(drv.delta) < std::abs(d))) d = drv.delta;
  return d;
}

double frame_of(const ScheduleSegment& segment) {
  double nu = 0.0;
  for (const DotDrive& drv : segment.drives)
    if (drv.active && drv.lambda != 0.0 && (nu == 0.0 || std::abs(drv.delta) < std::abs(nu))) nu = drv.delta;
  return nu;
}

}  // namespace

std::vector<DotParams> realize_segment(const Device& device, const ScheduleSegment& segment) {
  check_device(device, segment);
  const double fallback = nominal_delta(segment);
  std::vector<DotParams> out;
  for (std::size_t j = 0; j < segment.drives.size(); ++j) {
    const DotDrive& drv = segment.drives[j];
    DotParams p = device.dots[j];
    if (p.delta_cav == 0.0) throw std::invalid_argument("realize_segment: dot without Δ^C");
    const double delta = drv.delta != 0.0 ? drv.delta : fallback;
    p.delta = p.delta_prime = p.delta_cav - delta;
    if (p.delta == 0.0) throw std::invalid_argument("realize_segment: laser detuning would vanish");
    if (drv.active && drv.lambda != 0.0) {
      if (p.g == 0.0) throw std::invalid_argument("realize_segment: active dot with g = 0");
      const cplx omega = std::conj(4.0 * drv.lambda / (p.g * (1.0 / p.delta + 1.0 / p.delta_cav)));
      p.omega = p.omega_prime = omega;
    } else {
      p.omega = p.omega_prime = 0.0;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Eff1Dot> eff1_segment(const Device& device, const ScheduleSegment& segment) {
  check_device(device, segment);
  std::vector<Eff1Dot> out;
  for (std::size_t j = 0; j < segment.drives.size(); ++j) {
    const DotDrive& drv = segment.drives[j];
    const DotParams& p = device.dots[j];
    const double stark = p.delta_cav == 0.0 ? 0.0 : p.stark();
    out.push_back({drv.active ? drv.lambda : cplx(0.0), drv.delta, stark});
  }
  return out;
}

std::vector<EffDot> eff_segment(const ScheduleSegment& segment) {
  std::vector<EffDot> out;
  for (const DotDrive& drv : segment.drives) out.push_back({drv.active ? drv.lambda : cplx(0.0), drv.delta});
  return out;
}

std::vector<BlockSegment> block_segments(const Device& device, const DriveSchedule& schedule) {
  std::vector<BlockSegment> out;
  for (const ScheduleSegment& seg : schedule.segments)
    out.push_back({seg.duration(), eff1_segment(device, seg)});
  return out;
}

HilbertSpace tier_space(Tier tier, int num_dots, int fock_cutoff) {
  switch (tier) {
    case Tier::full: return {num_dots, 3, fock_cutoff};
    case Tier::eff1: return {num_dots, 2, fock_cutoff};
    case Tier::eff: return HilbertSpace::qubits(num_dots);
  }
  throw std::invalid_argument("tier_space: unknown tier");
}

DenseMatrix schedule_unitary(const DriveSchedule& schedule, Tier tier, const Device& device,
                             const RunOptions& options) {
  schedule.validate();
  if (tier != Tier::eff && options.fock_cutoff < 1)
    throw std::invalid_argument("schedule_unitary: tier needs a cavity (fock cutoff ≥ 1)");
  const HilbertSpace space = tier_space(tier, schedule.num_dots, options.fock_cutoff);
  DenseMatrix u = DenseMatrix::Identity(space.dimension(), space.dimension());
  for (const ScheduleSegment& seg : schedule.segments) {
    const double T = seg.duration();
    if (T == 0.0) continue;
    DenseMatrix step;
    switch (tier) {
      case Tier::eff: {
        const std::vector<EffDot> dots = eff_segment(seg);
        step = propagator(eff_model(dots, space), 0.0, T, options.propagator).unitary;
        break;
      }
      case Tier::eff1: {
        const std::vector<Eff1Dot> dots = eff1_segment(device, seg);
        step = propagator(eff1_model(dots, space, frame_of(seg)), 0.0, T, options.propagator).unitary;
        break;
      }
      case Tier::full: {
        const std::vector<DotParams> dots = realize_segment(device, seg);
        step = propagator(full_model(dots, space, frame_of(seg)), 0.0, T, options.propagator).unitary;
        break;
      }
    }
    u = (step * u).eval();
  }
  return u;
}

std::vector<QuantumState> run_schedule(const DriveSchedule& schedule, Tier tier, const Device& device,
                                       std::span<const std::uint64_t> initial_bits,
                                       const RunOptions& options) {
  const HilbertSpace space = tier_space(tier, schedule.num_dots, options.fock_cutoff);
  const DenseMatrix u = schedule_unitary(schedule, tier, device, options);
  std::vector<QuantumState> out;
  for (std::uint64_t bits : initial_bits) {
    Vector v = u.col(space.register_index(bits));
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-5) throw NumericalError("run_schedule: propagator lost unitarity");
    out.push_back(QuantumState::pure(space, v / norm));
  }
  return out;
}

}  // namespace qdwg
