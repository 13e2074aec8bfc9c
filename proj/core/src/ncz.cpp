#include "qdwg/ncz.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdwg {

std::string NczReport::table() const {
  std::ostringstream os;
  const int n = num_controls + 1;
  os.precision(6);
  os << "state,produced_phase,ideal_phase\n";
  for (Index s = 0; s < produced.size(); ++s) {
    for (int j = 0; j < n; ++j) os << (dot_in_g(static_cast<std::uint64_t>(s), j, n) ? 'g' : 'f');
    os << ',' << wrap_phase(std::arg(produced(s))) << ',' << wrap_phase(std::arg(ideal(s))) << '\n';
  }
  return os.str();
}

NczPlan ncz_schedule(int num_controls, double lambda0, double ratio_min) {
  if (num_controls < 2) throw std::invalid_argument("ncz_schedule: need ≥ 2 controls");
  const int n = num_controls + 1;
  std::vector<int> all(n), controls(num_controls);
  std::iota(all.begin(), all.end(), 0);
  std::iota(controls.begin(), controls.end(), 0);

  NczPlan plan;
  plan.layers.push_back(all_pairs_schedule(all, n, lambda0, ratio_min));
  plan.layers.push_back(all_pairs_schedule(controls, n, lambda0, ratio_min));

  NczReport& r = plan.report;
  r.num_controls = num_controls;
  r.produced = eff_diagonal(plan.layers, n);
  r.ideal = Vector::Ones(r.produced.size());
  r.ideal(r.ideal.size() - 1) = -1.0;
  const auto d = static_cast<double>(r.produced.size());
  const cplx overlap = r.ideal.dot(r.produced);  // Tr(V†U) for diagonals
  r.deviation = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(overlap) / d));
  const cplx global = overlap == 0.0 ? cplx(1.0) : overlap / std::abs(overlap);
  r.max_entry_deviation = (r.produced - global * r.ideal).cwiseAbs().maxCoeff();
  r.equivalent = r.deviation < 1e-9;
  return plan;
}

}  // namespace qdwg
