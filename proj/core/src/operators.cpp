#include "qdwg/operators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "qdwg/error.hpp"

namespace qdwg {

SparseMatrix embed_sparse(const HilbertSpace& space, Site site, const DenseMatrix& local) {
  const Index m = space.site_dimension(site);
  if (local.rows() != m || local.cols() != m)
    throw DimensionError("embed: local operator is " + std::to_string(local.rows()) + "x" +
                         std::to_string(local.cols()) + ", site dimension " + std::to_string(m));
  const Index inner = space.stride(site);
  const Index block = m * inner;
  const Index outer = space.dimension() / block;

  std::vector<Eigen::Triplet<cplx>> triplets;
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) {
      const cplx v = local(r, c);
      if (v == cplx{}) continue;
      for (Index hi = 0; hi < outer; ++hi)
        for (Index lo = 0; lo < inner; ++lo)
          triplets.emplace_back(hi * block + r * inner + lo, hi * block + c * inner + lo, v);
    }
  SparseMatrix out(space.dimension(), space.dimension());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

LinearOperator embed(const HilbertSpace& space, Site site, const DenseMatrix& local) {
  const bool hermitian = local.rows() == local.cols() && local.isApprox(local.adjoint(), 0.0);
  return {space, embed_sparse(space, site, local), hermitian};
}

DenseMatrix local_dot_matrix(int levels_per_dot, DotOp kind) {
  const auto f = static_cast<Index>(Level::f);
  const auto g = static_cast<Index>(Level::g);
  const auto e = static_cast<Index>(Level::e);
  const bool needs_e = kind == DotOp::raise || kind == DotOp::lower || kind == DotOp::proj_e;
  if (needs_e && levels_per_dot != 3)
    throw std::invalid_argument("dot_operator: raise/lower/proj_e need a three-level dot");
  DenseMatrix m = DenseMatrix::Zero(levels_per_dot, levels_per_dot);
  switch (kind) {
    case DotOp::raise: m(e, g) = 1.0; break;
    case DotOp::lower: m(g, e) = 1.0; break;
    case DotOp::proj_g: m(g, g) = 1.0; break;
    case DotOp::proj_f: m(f, f) = 1.0; break;
    case DotOp::proj_e: m(e, e) = 1.0; break;
  }
  return m;
}

DenseMatrix local_annihilation(int fock_cutoff) {
  DenseMatrix a = DenseMatrix::Zero(fock_cutoff + 1, fock_cutoff + 1);
  for (int n = 1; n <= fock_cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

LinearOperator dot_operator(const HilbertSpace& space, int dot, DotOp kind) {
  return embed(space, Site::dot(dot), local_dot_matrix(space.levels_per_dot(), kind));
}

CavityOperators cavity_ops(const HilbertSpace& space) {
  if (!space.has_cavity()) throw std::invalid_argument("cavity_ops: space has no cavity factor");
  const DenseMatrix a = local_annihilation(space.fock_cutoff());
  const DenseMatrix ad = a.adjoint();
  return {embed(space, Site::cavity(), a), embed(space, Site::cavity(), ad),
          embed(space, Site::cavity(), ad * a)};
}

}  // namespace qdwg
