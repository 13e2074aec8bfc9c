#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace qdwg {

using cplx = std::complex<double>;

// Energies are meV, times ns, rates 1/ns. Every phase is E·t/ħ.
inline constexpr double kHbar = 0.6582119569;  // meV·ns
inline constexpr double kPi = std::numbers::pi;

constexpr double phase(double energy_meV, double time_ns) {
  return energy_meV * time_ns / kHbar;
}

/// Wraps an angle into (−π, π].
double wrap_phase(double angle);

/// Shortest angular separation |a − b| modulo 2π, in [0, π].
double angular_distance(double a, double b);

}  // namespace qdwg
