#pragma once

#include <vector>

#include "qdwg/units.hpp"

namespace qdwg {

/// Per-dot drive and coupling parameters, all in meV.
struct DotParams {
  cplx g{0.0};            // dot–waveguide coupling
  cplx omega{0.0};        // Rabi frequency of the first laser
  cplx omega_prime{0.0};  // second laser
  double delta = 0.0;        // laser detuning Δ
  double delta_prime = 0.0;  // Δ′
  double delta_cav = 0.0;    // waveguide detuning Δ^C

  /// Two-photon detuning δ = Δ^C − Δ.
  double small_delta() const { return delta_cav - delta; }
  /// Waveguide Stark coefficient |g|²/Δ^C.
  double stark() const { return std::norm(g) / delta_cav; }

  /// Throws std::invalid_argument when any detuning is zero or non-finite.
  void validate() const;

  friend bool operator==(const DotParams&, const DotParams&) = default;
};

using DotList = std::vector<DotParams>;

}  // namespace qdwg
