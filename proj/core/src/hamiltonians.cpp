#include "qdwg/hamiltonians.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qdwg/error.hpp"
#include "qdwg/operators.hpp"

namespace qdwg {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::full: return "full";
    case Tier::eff1: return "eff1";
    case Tier::eff: return "eff";
  }
  return "?";
}

Tier parse_tier(std::string_view name) {
  if (name == "full") return Tier::full;
  if (name == "eff1") return Tier::eff1;
  if (name == "eff") return Tier::eff;
  throw std::invalid_argument("unknown tier '" + std::string(name) + "'");
}

ModulatedHamiltonian::ModulatedHamiltonian(HilbertSpace space)
    : space_(space), static_(space.dimension(), space.dimension()) {}

void ModulatedHamiltonian::add_static(const SparseMatrix& h) {
  if (h.rows() != space_.dimension() || h.cols() != space_.dimension())
    throw DimensionError("ModulatedHamiltonian: static operator has wrong shape");
  static_ += h;
  static_.prune(cplx(0.0));
}

void ModulatedHamiltonian::add_term(cplx coeff, double freq, const SparseMatrix& op) {
  if (op.rows() != space_.dimension() || op.cols() != space_.dimension())
    throw DimensionError("ModulatedHamiltonian: term operator has wrong shape");
  if (coeff == 0.0 || op.nonZeros() == 0) return;
  if (freq == 0.0) {
    SparseMatrix h = coeff * op;
    SparseMatrix hd = h.adjoint();
    add_static(h + hd);
    return;
  }
  for (Term& term : terms_) {
    // Same operator and frequency: merge coefficients.
    if (term.freq == freq && term.op.nonZeros() == op.nonZeros() &&
        (term.op - op).norm() == 0.0) {
      term.coeff += coeff;
      return;
    }
  }
  terms_.push_back({coeff, freq, op, op.adjoint()});
}

SparseMatrix ModulatedHamiltonian::matrix_at(double t) const {
  SparseMatrix h = static_;
  for (const Term& term : terms_) {
    const cplx c = term.coeff * std::polar(1.0, phase(term.freq, t));
    h += c * term.op + std::conj(c) * term.op_adj;
  }
  return h;
}

LinearOperator ModulatedHamiltonian::at(double t) const {
  return {space_, matrix_at(t), true};
}

void ModulatedHamiltonian::apply(double t, const Vector& x, Vector& y) const {
  y.noalias() = static_ * x;
  for (const Term& term : terms_) {
    const cplx c = term.coeff * std::polar(1.0, phase(term.freq, t));
    y.noalias() += c * (term.op * x);
    y.noalias() += std::conj(c) * (term.op_adj * x);
  }
}

void ModulatedHamiltonian::apply(double t, const DenseMatrix& x, DenseMatrix& y) const {
  y.noalias() = static_ * x;
  for (const Term& term : terms_) {
    const cplx c = term.coeff * std::polar(1.0, phase(term.freq, t));
    y.noalias() += c * (term.op * x);
    y.noalias() += std::conj(c) * (term.op_adj * x);
  }
}

namespace {

bool sparse_is_diagonal(const SparseMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      if (it.row() != it.col() && it.value() != 0.0) return false;
  return true;
}

}  // namespace

bool ModulatedHamiltonian::is_diagonal() const {
  if (!sparse_is_diagonal(static_)) return false;
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return sparse_is_diagonal(t.op); });
}

std::vector<double> ModulatedHamiltonian::frequencies() const {
  std::vector<double> out;
  for (const Term& t : terms_) out.push_back(std::abs(t.freq));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ModulatedHamiltonian ModulatedHamiltonian::scaled(double s) const {
  ModulatedHamiltonian out(space_);
  out.static_ = s * static_;
  out.frame_ = s * frame_;
  for (const Term& t : terms_) out.terms_.push_back({s * t.coeff, s * t.freq, t.op, t.op_adj});
  return out;
}

ModulatedHamiltonian full_model(std::span<const DotParams> dots, const HilbertSpace& space,
                                double frame) {
  if (!space.has_excited_level() || !space.has_cavity())
    throw DimensionError("full model needs three-level dots and a cavity");
  if (static_cast<int>(dots.size()) != space.num_dots())
    throw DimensionError("full model: " + std::to_string(dots.size()) + " dots for a " +
                         std::to_string(space.num_dots()) + "-dot space");
  ModulatedHamiltonian h(space);
  const CavityOperators cav = cavity_ops(space);
  const SparseMatrix a = cav.a.sparse();
  if (frame != 0.0) {
    h.add_static(-frame * cav.number.sparse());
    h.set_frame(frame);
  }
  for (int j = 0; j < space.num_dots(); ++j) {
    const DotParams& d = dots[j];
    const SparseMatrix raise = dot_operator(space, j, DotOp::raise).sparse();
    const SparseMatrix a_raise = a * raise;
    h.add_term(d.g, d.delta_cav - frame, a_raise);
    h.add_term(d.omega / 2.0, d.delta, raise);
    h.add_term(d.omega_prime / 2.0, -d.delta_prime, raise);
  }
  return h;
}

LinearOperator build_full_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                      double t) {
  return full_model(dots, space).at(t);
}

Eff1Dot to_eff1(const DotParams& dot) {
  return {lambda_coeff(dot), dot.small_delta(), dot.stark()};
}

EffDot to_eff(const DotParams& dot) { return {lambda_coeff(dot), dot.small_delta()}; }
EffDot to_eff(const Eff1Dot& dot) { return {dot.lambda, dot.delta}; }

ModulatedHamiltonian eff1_model(std::span<const Eff1Dot> dots, const HilbertSpace& space,
                                double frame) {
  if (space.has_excited_level() || !space.has_cavity())
    throw DimensionError("eff1 model needs two-level dots and a cavity");
  if (static_cast<int>(dots.size()) != space.num_dots())
    throw DimensionError("eff1 model: dot count does not match the space");
  ModulatedHamiltonian h(space);
  const CavityOperators cav = cavity_ops(space);
  const SparseMatrix a = cav.a.sparse();
  const SparseMatrix n = cav.number.sparse();
  if (frame != 0.0) {
    h.add_static(-frame * n);
    h.set_frame(frame);
  }
  for (int j = 0; j < space.num_dots(); ++j) {
    const SparseMatrix pg = dot_operator(space, j, DotOp::proj_g).sparse();
    if (dots[j].stark != 0.0) h.add_static(SparseMatrix(-dots[j].stark * (n * pg)));
    // −λ a e^{iδt} P − h.c.; a shifts by −ν in the frame
    h.add_term(-dots[j].lambda, dots[j].delta - frame, SparseMatrix(a * pg));
  }
  return h;
}

LinearOperator build_eff1_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                      double t) {
  std::vector<Eff1Dot> e;
  for (const DotParams& d : dots) e.push_back(to_eff1(d));
  return eff1_model(e, space).at(t);
}

Eigen::MatrixXd eta_matrix(std::span<const EffDot> dots) {
  const auto n = static_cast<Index>(dots.size());
  Eigen::MatrixXd eta(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k)
      eta(j, k) = eta(k, j) =
          eta_coeff(dots[j].lambda, dots[j].delta, dots[k].lambda, dots[k].delta);
  return eta;
}

ModulatedHamiltonian eff_model(std::span<const EffDot> dots, const HilbertSpace& space) {
  if (space.has_cavity() || space.has_excited_level())
    throw DimensionError("eff model lives on the bare two-level register");
  const int n = space.num_dots();
  if (static_cast<int>(dots.size()) != n)
    throw DimensionError("eff model: dot count does not match the space");
  const Eigen::MatrixXd eta = eta_matrix(dots);
  const Index dim = space.dimension();

  // Diagonal entries, built directly from bitstrings.
  Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(dim);
  std::vector<std::pair<std::pair<int, int>, double>> oscillating;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (eta(j, k) != 0.0 && dots[j].delta != dots[k].delta)
        oscillating.push_back({{j, k}, dots[j].delta - dots[k].delta});
  for (Index s = 0; s < dim; ++s) {
    const auto bits = static_cast<std::uint64_t>(s);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!dot_in_g(bits, j, n)) continue;
      e += eta(j, j);
      for (int k = j + 1; k < n; ++k)
        if (dot_in_g(bits, k, n) && dots[j].delta == dots[k].delta) e += 2.0 * eta(j, k);
    }
    diag(s) = e;
  }
  ModulatedHamiltonian h(space);
  SparseMatrix d(dim, dim);
  {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (Index s = 0; s < dim; ++s)
      if (diag(s) != 0.0) trip.emplace_back(s, s, diag(s));
    d.setFromTriplets(trip.begin(), trip.end());
  }
  h.add_static(d);
  // 2η cos(δ_jk t/ħ) P_j P_k = η e^{iδ_jk t/ħ} P_jP_k + h.c.
  for (const auto& [pair, djk] : oscillating) {
    const auto [j, k] = pair;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (Index s = 0; s < dim; ++s) {
      const auto bits = static_cast<std::uint64_t>(s);
      if (dot_in_g(bits, j, n) && dot_in_g(bits, k, n)) trip.emplace_back(s, s, 1.0);
    }
    SparseMatrix pp(dim, dim);
    pp.setFromTriplets(trip.begin(), trip.end());
    h.add_term(eta(j, k), djk, pp);
  }
  return h;
}

LinearOperator build_eff_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                     double t) {
  std::vector<EffDot> e;
  for (const DotParams& d : dots) e.push_back(to_eff(d));
  return eff_model(e, space).at(t);
}

}  // namespace qdwg
