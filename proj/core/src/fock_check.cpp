#include "qdwg/fock_check.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qdwg {

std::string FockConvergenceReport::to_string() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  for (std::size_t i = 0; i < change.size(); ++i)
    os << "cutoff " << cutoffs[i] << " -> " << cutoffs[i + 1] << ": change " << change[i] << '\n';
  os << (converged ? "converged" : "NOT converged") << " (tolerance " << tolerance << ")\n";
  return os.str();
}

FockConvergenceReport fock_convergence_check(const FockScenario& scenario,
                                             std::span<const int> cutoffs, double tolerance) {
  if (cutoffs.size() < 2) throw std::invalid_argument("fock_convergence_check: need ≥ 2 cutoffs");
  FockConvergenceReport report;
  report.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  std::sort(report.cutoffs.begin(), report.cutoffs.end());
  report.tolerance = tolerance;

  DenseMatrix previous;
  for (int cutoff : report.cutoffs) {
    BlockwiseOptions opt;
    opt.solver = BlockSolver::fock;
    opt.fock_cutoff = cutoff;
    const DenseMatrix rho =
        blockwise_evolve(scenario.segments, scenario.decay, opt).register_matrix_plus();
    if (previous.size()) report.change.push_back(trace_distance(previous, rho));
    previous = rho;
  }
  report.converged = report.change.back() < tolerance;
  return report;
}

}  // namespace qdwg
