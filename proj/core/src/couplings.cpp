#include "qdwg/couplings.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdwg {

void DotParams::validate() const {
  auto check = [](double v, const char* name) {
    if (v == 0.0 || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "DotParams: " << name << " must be finite and nonzero (got " << v << ")";
      throw std::invalid_argument(msg.str());
    }
  };
  check(delta, "delta");
  check(delta_prime, "delta_prime");
  check(delta_cav, "delta_cav");
  for (cplx c : {g, omega, omega_prime})
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("DotParams: non-finite coupling");
}

cplx lambda_coeff(const DotParams& dot) {
  if (dot.delta == 0.0 || dot.delta_cav == 0.0)
    throw std::invalid_argument("lambda_coeff: zero detuning");
  return std::conj(dot.omega) * dot.g / 4.0 * (1.0 / dot.delta + 1.0 / dot.delta_cav);
}

double eta_coeff(cplx lambda_j, double delta_j, cplx lambda_k, double delta_k) {
  if (lambda_j == 0.0 || lambda_k == 0.0) return 0.0;
  if (delta_j == 0.0 || delta_k == 0.0) throw std::invalid_argument("eta_coeff: zero δ");
  if ((delta_j > 0) != (delta_k > 0)) {
    std::ostringstream msg;
    msg << "eta_coeff: δ of mixed sign (" << delta_j << ", " << delta_k
        << "); the dispersive cross term assumes a common sign";
    throw std::invalid_argument(msg.str());
  }
  return std::abs(lambda_j * lambda_k) / 2.0 * (1.0 / delta_j + 1.0 / delta_k);
}

double eta_coeff(const DotParams& j, const DotParams& k) {
  return eta_coeff(lambda_coeff(j), j.small_delta(), lambda_coeff(k), k.small_delta());
}

DerivedCouplings derive_couplings(std::span<const DotParams> dots) {
  const auto n = static_cast<Index>(dots.size());
  DerivedCouplings out;
  out.eta = Eigen::MatrixXd::Zero(n, n);
  out.delta_jk = Eigen::MatrixXd::Zero(n, n);
  for (const DotParams& d : dots) {
    d.validate();
    out.lambda.push_back(lambda_coeff(d));
    out.delta_small.push_back(d.small_delta());
  }
  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k) {
      const double e = eta_coeff(out.lambda[j], out.delta_small[j], out.lambda[k], out.delta_small[k]);
      out.eta(j, k) = out.eta(k, j) = e;
      out.delta_jk(j, k) = out.delta_small[j] - out.delta_small[k];
      out.delta_jk(k, j) = -out.delta_jk(j, k);
    }
  if (n > 0) {
    const double first = out.eta(0, 0);
    bool uniform = true;
    for (Index j = 1; j < n; ++j)
      if (std::abs(out.eta(j, j) - first) > 1e-9 * std::abs(first)) uniform = false;
    if (uniform) out.epsilon = first;
  }
  return out;
}

}  // namespace qdwg
