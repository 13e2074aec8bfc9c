#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <variant>

#include "qdwg/hilbert_space.hpp"
#include "qdwg/units.hpp"

namespace qdwg {

using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// A square operator on a HilbertSpace. Storage is chosen by dimension:
/// dense up to kSparseThreshold, sparse above.
class LinearOperator {
 public:
  static constexpr Index kSparseThreshold = 512;

  LinearOperator(HilbertSpace space, SparseMatrix matrix, bool hermitian = false);
  LinearOperator(HilbertSpace space, DenseMatrix matrix, bool hermitian = false);

  static LinearOperator zero(const HilbertSpace& space);
  static LinearOperator identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  Index dimension() const { return space_.dimension(); }
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(rep_); }
  bool hermitian_flag() const { return hermitian_; }

  DenseMatrix dense() const;
  SparseMatrix sparse() const;
  cplx element(Index row, Index col) const;

  Vector apply(const Vector& v) const;
  LinearOperator adjoint() const;

  /// max |A − A†| over all entries.
  double hermiticity_defect() const;
  /// max |A_ij| over i ≠ j.
  double max_off_diagonal() const;

  LinearOperator& operator+=(const LinearOperator& other);
  LinearOperator& operator*=(cplx scale);

  friend LinearOperator operator+(LinearOperator a, const LinearOperator& b) { return a += b; }
  friend LinearOperator operator*(cplx s, LinearOperator a) { return a *= s; }
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);

 private:
  void check_shape() const;

  HilbertSpace space_;
  std::variant<DenseMatrix, SparseMatrix> rep_;
  bool hermitian_;
};

}  // namespace qdwg
