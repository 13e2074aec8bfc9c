#include "qdwg/schedule.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qdwg {

std::vector<int> ScheduleSegment::active_dots() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < drives.size(); ++j)
    if (drives[j].active) out.push_back(static_cast<int>(j));
  return out;
}

double DriveSchedule::duration() const {
  return segments.empty() ? 0.0 : segments.back().t_end - segments.front().t_start;
}

void DriveSchedule::validate() const {
  double last_end = segments.empty() ? 0.0 : segments.front().t_start;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const ScheduleSegment& seg = segments[i];
    const std::string where = "DriveSchedule segment " + std::to_string(i) + ": ";
    if (static_cast<int>(seg.drives.size()) != num_dots)
      throw std::invalid_argument(where + "drive count does not match num_dots");
    if (seg.t_end < seg.t_start) throw std::invalid_argument(where + "ends before it starts");
    if (seg.t_start < last_end - 1e-12 * std::abs(last_end))
      throw std::invalid_argument(where + "overlaps the previous segment");
    last_end = seg.t_end;
    std::map<int, double> group_delta;
    for (const DotDrive& d : seg.drives) {
      if (!d.active) continue;
      auto [it, inserted] = group_delta.emplace(d.group, d.delta);
      if (!inserted && it->second != d.delta)
        throw std::invalid_argument(where + "group " + std::to_string(d.group) + " mixes δ values");
    }
    if (k_integer) {
      const double lhs = delta0 * seg.duration() / kHbar;
      const double rhs = static_cast<double>(*k_integer) * kPi;
      if (seg.duration() > 0 && std::abs(lhs - rhs) > 1e-12 * rhs)
        throw std::invalid_argument(where + "δ₀t/ħ is not kπ");
    }
  }
}

DriveSchedule concatenate(std::span<const DriveSchedule> layers) {
  DriveSchedule out;
  if (layers.empty()) return out;
  out.num_dots = layers.front().num_dots;
  out.lambda0 = layers.front().lambda0;
  out.delta0 = layers.front().delta0;
  out.k_integer = layers.front().k_integer;
  double t = 0.0;
  for (const DriveSchedule& layer : layers) {
    if (layer.num_dots != out.num_dots)
      throw std::invalid_argument("concatenate: layers disagree on the dot count");
    if (layer.k_integer != out.k_integer || layer.delta0 != out.delta0) out.k_integer.reset();
    for (const ScheduleSegment& seg : layer.segments) {
      ScheduleSegment s = seg;
      s.t_start = t;
      s.t_end = t + seg.duration();
      t = s.t_end;
      out.segments.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace qdwg
