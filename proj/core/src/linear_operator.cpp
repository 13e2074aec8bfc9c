#include "qdwg/linear_operator.hpp"

#include <string>

#include "qdwg/error.hpp"

namespace qdwg {

namespace {

constexpr double kHermitianTolerance = 1e-10;

}  // namespace

LinearOperator::LinearOperator(HilbertSpace space, SparseMatrix matrix, bool hermitian)
    : space_(space), hermitian_(hermitian) {
  if (space_.dimension() <= kSparseThreshold)
    rep_ = DenseMatrix(matrix);
  else {
    matrix.makeCompressed();
    rep_ = std::move(matrix);
  }
  check_shape();
}

LinearOperator::LinearOperator(HilbertSpace space, DenseMatrix matrix, bool hermitian)
    : space_(space), hermitian_(hermitian) {
  if (space_.dimension() > kSparseThreshold)
    rep_ = SparseMatrix(matrix.sparseView());
  else
    rep_ = std::move(matrix);
  check_shape();
}

LinearOperator LinearOperator::zero(const HilbertSpace& space) {
  return {space, SparseMatrix(space.dimension(), space.dimension()), true};
}

LinearOperator LinearOperator::identity(const HilbertSpace& space) {
  SparseMatrix id(space.dimension(), space.dimension());
  id.setIdentity();
  return {space, std::move(id), true};
}

void LinearOperator::check_shape() const {
  Index rows = 0, cols = 0;
  std::visit([&](const auto& m) { rows = m.rows(), cols = m.cols(); }, rep_);
  if (rows != cols || rows != space_.dimension())
    throw DimensionError("LinearOperator: matrix is " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", space dimension " +
                         std::to_string(space_.dimension()));
  if (hermitian_ && hermiticity_defect() >= kHermitianTolerance)
    throw std::invalid_argument("LinearOperator: hermitian flag set on a non-Hermitian matrix");
}

DenseMatrix LinearOperator::dense() const {
  if (auto* d = std::get_if<DenseMatrix>(&rep_)) return *d;
  return DenseMatrix(std::get<SparseMatrix>(rep_));
}

SparseMatrix LinearOperator::sparse() const {
  if (auto* s = std::get_if<SparseMatrix>(&rep_)) return *s;
  return std::get<DenseMatrix>(rep_).sparseView();
}

cplx LinearOperator::element(Index row, Index col) const {
  if (auto* d = std::get_if<DenseMatrix>(&rep_)) return (*d)(row, col);
  return std::get<SparseMatrix>(rep_).coeff(row, col);
}

Vector LinearOperator::apply(const Vector& v) const {
  if (v.size() != dimension()) throw DimensionError("LinearOperator::apply: vector size mismatch");
  return std::visit([&](const auto& m) -> Vector { return m * v; }, rep_);
}

LinearOperator LinearOperator::adjoint() const {
  return std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        return LinearOperator(space_, M(m.adjoint()), hermitian_);
      },
      rep_);
}

double LinearOperator::hermiticity_defect() const {
  if (auto* d = std::get_if<DenseMatrix>(&rep_))
    return d->size() == 0 ? 0.0 : (*d - d->adjoint()).cwiseAbs().maxCoeff();
  const auto& s = std::get<SparseMatrix>(rep_);
  SparseMatrix diff = s - SparseMatrix(s.adjoint());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double LinearOperator::max_off_diagonal() const {
  double worst = 0.0;
  if (auto* d = std::get_if<DenseMatrix>(&rep_)) {
    for (Index c = 0; c < d->cols(); ++c)
      for (Index r = 0; r < d->rows(); ++r)
        if (r != c) worst = std::max(worst, std::abs((*d)(r, c)));
    return worst;
  }
  const auto& s = std::get<SparseMatrix>(rep_);
  for (int k = 0; k < s.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s, k); it; ++it)
      if (it.row() != it.col()) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

LinearOperator& LinearOperator::operator+=(const LinearOperator& other) {
  if (!(other.space_ == space_)) throw DimensionError("LinearOperator: adding across spaces");
  if (auto* d = std::get_if<DenseMatrix>(&rep_))
    *d += other.dense();
  else
    std::get<SparseMatrix>(rep_) += other.sparse();
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

LinearOperator& LinearOperator::operator*=(cplx scale) {
  std::visit([&](auto& m) { m *= scale; }, rep_);
  hermitian_ = hermitian_ && scale.imag() == 0.0;
  return *this;
}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.space_ == b.space_)) throw DimensionError("LinearOperator: multiplying across spaces");
  if (a.is_sparse()) return {a.space_, SparseMatrix(a.sparse() * b.sparse()), false};
  return {a.space_, DenseMatrix(a.dense() * b.dense()), false};
}

}  // namespace qdwg
