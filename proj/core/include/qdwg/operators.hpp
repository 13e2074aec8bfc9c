#pragma once

#include "qdwg/linear_operator.hpp"

namespace qdwg {

/// I ⊗ … ⊗ local ⊗ … ⊗ I with `local` placed on `site`.
LinearOperator embed(const HilbertSpace& space, Site site, const DenseMatrix& local);
SparseMatrix embed_sparse(const HilbertSpace& space, Site site, const DenseMatrix& local);

enum class DotOp { raise, lower, proj_g, proj_f, proj_e };

/// Local matrix of a dot operator; raise = |e⟩⟨g|, lower = |g⟩⟨e|.
DenseMatrix local_dot_matrix(int levels_per_dot, DotOp kind);
/// Truncated annihilation operator on Fock states 0..cutoff.
DenseMatrix local_annihilation(int fock_cutoff);

LinearOperator dot_operator(const HilbertSpace& space, int dot, DotOp kind);

struct CavityOperators {
  LinearOperator a;
  LinearOperator a_dagger;
  LinearOperator number;
};

CavityOperators cavity_ops(const HilbertSpace& space);

}  // namespace qdwg
