#include "qdwg/quantum_state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <string>

#include "qdwg/error.hpp"

namespace qdwg {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kTraceTolerance = 1e-9;
constexpr double kHermitianTolerance = 1e-9;
constexpr double kEigenTolerance = 1e-8;
constexpr double kImaginaryResidue = 1e-10;

}  // namespace

QuantumState QuantumState::pure(HilbertSpace space, Vector amplitudes) {
  if (amplitudes.size() != space.dimension())
    throw DimensionError("QuantumState::pure: " + std::to_string(amplitudes.size()) +
                         " amplitudes for dimension " + std::to_string(space.dimension()));
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::invalid_argument("QuantumState::pure: norm " + std::to_string(norm) + " != 1");
  QuantumState s(space, Kind::pure);
  s.psi_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::density(HilbertSpace space, DenseMatrix rho, Validation validation) {
  if (rho.rows() != space.dimension() || rho.cols() != space.dimension())
    throw DimensionError("QuantumState::density: matrix does not match space dimension");
  const double herm = rho.size() ? (rho - rho.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (herm > kHermitianTolerance)
    throw std::invalid_argument("QuantumState::density: not Hermitian (defect " +
                                std::to_string(herm) + ")");
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw std::invalid_argument("QuantumState::density: trace " + std::to_string(tr.real()) +
                                " != 1");
  DenseMatrix sym = 0.5 * (rho + rho.adjoint());
  if (validation == Validation::full) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::EigenvaluesOnly);
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < -kEigenTolerance)
      throw std::invalid_argument("QuantumState::density: negative eigenvalue " +
                                  std::to_string(lowest));
  }
  QuantumState s(space, Kind::density);
  s.rho_ = std::move(sym);
  return s;
}

QuantumState QuantumState::basis(HilbertSpace space, std::span<const Level> levels, int photons) {
  Vector v = Vector::Zero(space.dimension());
  v(space.index(levels, photons)) = 1.0;
  return pure(space, std::move(v));
}

QuantumState QuantumState::register_basis(HilbertSpace space, std::uint64_t bits, int photons) {
  Vector v = Vector::Zero(space.dimension());
  v(space.register_index(bits, photons)) = 1.0;
  return pure(space, std::move(v));
}

QuantumState QuantumState::plus_state(HilbertSpace space) {
  Vector v = Vector::Zero(space.dimension());
  const Index n = space.register_dimension();
  const double amp = std::pow(2.0, -0.5 * space.num_dots());
  for (Index bits = 0; bits < n; ++bits) v(space.register_index(static_cast<std::uint64_t>(bits))) = amp;
  return pure(space, std::move(v));
}

const Vector& QuantumState::vector() const {
  if (kind_ != Kind::pure) throw std::logic_error("QuantumState::vector: state is a density matrix");
  return psi_;
}

DenseMatrix QuantumState::density_matrix() const {
  if (kind_ == Kind::density) return rho_;
  return psi_ * psi_.adjoint();
}

QuantumState QuantumState::to_density() const {
  if (kind_ == Kind::density) return *this;
  QuantumState s(space_, Kind::density);
  s.rho_ = psi_ * psi_.adjoint();
  return s;
}

cplx QuantumState::amplitude(Index i) const { return kind_ == Kind::pure ? psi_(i) : rho_(i, i); }

double QuantumState::trace() const {
  return kind_ == Kind::pure ? psi_.squaredNorm() : rho_.trace().real();
}

double QuantumState::purity() const {
  if (kind_ == Kind::pure) return std::pow(psi_.squaredNorm(), 2);
  return (rho_.cwiseProduct(rho_.transpose())).sum().real();
}

QuantumState partial_trace(const QuantumState& state, std::span<const Site> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const HilbertSpace& space = state.space();

  std::vector<bool> keep_dot(space.num_dots(), false);
  bool keep_cavity = false;
  for (const Site& s : keep) {
    space.site_dimension(s);  // range check
    if (s.is_cavity())
      keep_cavity = true;
    else
      keep_dot[s.dot_index()] = true;
  }
  const int kept_dots = static_cast<int>(std::count(keep_dot.begin(), keep_dot.end(), true));
  if (kept_dots == 0)
    throw std::invalid_argument("partial_trace: at least one dot must be kept");
  const HilbertSpace reduced(kept_dots, space.levels_per_dot(),
                             keep_cavity ? space.fock_cutoff() : 0);

  const Index dim = space.dimension();
  std::vector<Index> kept_index(dim), traced_index(dim);
  const int L = space.levels_per_dot();
  const Index cav = space.cavity_dimension();
  for (Index i = 0; i < dim; ++i) {
    Index k = 0, t = 0;
    for (int j = 0; j < space.num_dots(); ++j) {
      const auto lvl = static_cast<Index>(space.level(i, j));
      if (keep_dot[j])
        k = k * L + lvl;
      else
        t = t * L + lvl;
    }
    const Index n = space.photons(i);
    if (keep_cavity)
      k = k * cav + n;
    else
      t = t * cav + n;
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const Index traced_dim = dim / reduced.dimension();
  std::vector<std::vector<Index>> members(traced_dim);
  for (Index i = 0; i < dim; ++i) members[traced_index[i]].push_back(i);

  DenseMatrix out = DenseMatrix::Zero(reduced.dimension(), reduced.dimension());
  if (state.is_pure()) {
    const Vector& psi = state.vector();
    for (const auto& group : members)
      for (Index a : group)
        for (Index b : group) out(kept_index[a], kept_index[b]) += psi(a) * std::conj(psi(b));
  } else {
    const DenseMatrix rho = state.density_matrix();
    for (const auto& group : members)
      for (Index a : group)
        for (Index b : group) out(kept_index[a], kept_index[b]) += rho(a, b);
  }
  const auto check = reduced.dimension() > 512 ? QuantumState::Validation::structural
                                               : QuantumState::Validation::full;
  return QuantumState::density(reduced, std::move(out), check);
}

QuantumState trace_out_cavity(const QuantumState& state) {
  const HilbertSpace& space = state.space();
  if (!space.has_cavity()) return state;
  std::vector<Site> keep;
  for (int j = 0; j < space.num_dots(); ++j) keep.push_back(Site::dot(j));
  return partial_trace(state, keep);
}

double fidelity(const QuantumState& rho, const QuantumState& rho_prime) {
  if (!(rho.space() == rho_prime.space()))
    throw DimensionError("fidelity: states live in different spaces");
  if (rho.is_pure() && rho_prime.is_pure()) return std::norm(rho.vector().dot(rho_prime.vector()));
  cplx f;
  if (rho.is_pure()) {
    const Vector& v = rho.vector();
    f = v.dot(rho_prime.density_matrix() * v);
  } else if (rho_prime.is_pure()) {
    const Vector& v = rho_prime.vector();
    f = v.dot(rho.density_matrix() * v);
  } else {
    f = rho.density_matrix().cwiseProduct(rho_prime.density_matrix().transpose()).sum();
  }
  if (std::abs(f.imag()) > kImaginaryResidue)
    throw NumericalError("fidelity: Tr(rho rho') has imaginary residue " + std::to_string(f.imag()));
  return f.real();
}

double trace_distance(const DenseMatrix& rho, const DenseMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionError("trace_distance: shape mismatch");
  DenseMatrix diff = rho - sigma;
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const QuantumState& rho, const QuantumState& sigma) {
  if (!(rho.space() == sigma.space()))
    throw DimensionError("trace_distance: states live in different spaces");
  return trace_distance(rho.density_matrix(), sigma.density_matrix());
}

QuantumState lift_register(const QuantumState& reg, const HilbertSpace& space) {
  const HilbertSpace& rs = reg.space();
  if (rs.levels_per_dot() != 2 || rs.has_cavity() || rs.num_dots() != space.num_dots())
    throw DimensionError("lift_register: expected a two-level register over the same dots");
  const Index n = rs.dimension();
  if (reg.is_pure()) {
    Vector v = Vector::Zero(space.dimension());
    for (Index s = 0; s < n; ++s) v(space.register_index(static_cast<std::uint64_t>(s))) = reg.vector()(s);
    return QuantumState::pure(space, std::move(v));
  }
  const DenseMatrix r = reg.density_matrix();
  DenseMatrix out = DenseMatrix::Zero(space.dimension(), space.dimension());
  for (Index s = 0; s < n; ++s)
    for (Index t = 0; t < n; ++t)
      out(space.register_index(static_cast<std::uint64_t>(s)),
          space.register_index(static_cast<std::uint64_t>(t))) = r(s, t);
  return QuantumState::density(space, std::move(out));
}

}  // namespace qdwg
