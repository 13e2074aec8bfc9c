#pragma once

#include <optional>
#include <span>

#include "qdwg/dot_params.hpp"
#include "qdwg/linear_operator.hpp"

namespace qdwg {

/// λ = (Ω* g / 4)(1/Δ + 1/Δ^C).
cplx lambda_coeff(const DotParams& dot);

/// η_jk = |λ_j λ_k|/2 · (1/δ_j + 1/δ_k). Zero if either λ vanishes.
/// Mixed-sign δ is rejected: the cross term is then outside the derivation.
double eta_coeff(cplx lambda_j, double delta_j, cplx lambda_k, double delta_k);
double eta_coeff(const DotParams& j, const DotParams& k);

struct DerivedCouplings {
  std::vector<cplx> lambda;         // λ_j
  std::vector<double> delta_small;  // δ_j
  Eigen::MatrixXd eta;              // η_jk, symmetric
  Eigen::MatrixXd delta_jk;         // δ_j − δ_k, antisymmetric
  std::optional<double> epsilon;    // common η_jj, when uniform to 1e-9 relative
};

DerivedCouplings derive_couplings(std::span<const DotParams> dots);

}  // namespace qdwg
