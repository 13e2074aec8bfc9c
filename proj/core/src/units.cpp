#include "qdwg/units.hpp"

namespace qdwg {

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);  // in [−π, π]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

}  // namespace qdwg
