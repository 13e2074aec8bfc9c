#include "qdwg/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qdwg/couplings.hpp"

namespace qdwg {

namespace {

double relative_mismatch(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double safe_ratio(double num, double den) {
  return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
}

}  // namespace

bool RegimeReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.pass; });
}

std::vector<ConditionCheck> RegimeReport::failures() const {
  std::vector<ConditionCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const ConditionCheck& c) { return !c.pass; });
  return out;
}

std::string RegimeReport::to_string() const {
  std::ostringstream os;
  os.precision(6);
  for (const ConditionCheck& c : checks) {
    os << (c.pass ? "pass  " : "FAIL  ") << c.name;
    if (c.dot >= 0) os << " [dot " << c.dot << "]";
    os << "  measured=" << c.measured << "  threshold=" << c.threshold << '\n';
  }
  return os.str();
}

RegimeReport validate_regime(std::span<const DotParams> dots, const RegimeThresholds& th) {
  RegimeReport report;
  bool all_positive = true, all_negative = true, none_zero = true;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    const DotParams& d = dots[i];
    const int j = static_cast<int>(i);

    const double m1 = relative_mismatch(std::abs(d.omega), std::abs(d.omega_prime));
    report.checks.push_back({"omega_magnitude_match", j, m1, th.match_tolerance, m1 <= th.match_tolerance});

    const double m2 = relative_mismatch(d.delta, d.delta_prime);
    report.checks.push_back({"laser_detuning_match", j, m2, th.match_tolerance, m2 <= th.match_tolerance});

    const double coupling = std::max({std::abs(d.g), std::abs(d.omega), std::abs(d.omega_prime)});
    const double r3 = safe_ratio(std::min(std::abs(d.delta), std::abs(d.delta_prime)), coupling);
    report.checks.push_back({"large_detuning", j, r3, th.detuning_ratio, r3 >= th.detuning_ratio});

    const double small = d.small_delta();
    if (small == 0.0) none_zero = false;
    if (small <= 0.0) all_positive = false;
    if (small >= 0.0) all_negative = false;

    double r5 = 0.0;
    if (d.delta != 0.0 && d.delta_cav != 0.0) {
      const double scale = std::max(std::abs(d.stark()), std::abs(lambda_coeff(d)));
      r5 = safe_ratio(std::abs(small), scale);
    }
    report.checks.push_back({"dispersive", j, r5, th.dispersive_ratio, r5 >= th.dispersive_ratio});
  }
  // δ_j must be nonzero and share one sign across the device.
  double min_abs = std::numeric_limits<double>::infinity();
  for (const DotParams& d : dots) min_abs = std::min(min_abs, std::abs(d.small_delta()));
  if (dots.empty()) min_abs = 0.0;
  const bool consistent = !dots.empty() && none_zero && (all_positive || all_negative);
  report.checks.push_back({"two_photon_detuning_sign", -1, min_abs, 0.0, consistent});
  return report;
}

}  // namespace qdwg
