#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qdwg/couplings.hpp"
#include "qdwg/dot_params.hpp"
#include "qdwg/linear_operator.hpp"

namespace qdwg {

enum class Tier { full, eff1, eff };

std::string_view to_string(Tier tier);
Tier parse_tier(std::string_view name);

/// H(t) = H₀ + Σ_k (c_k e^{iω_k t/ħ} A_k + h.c.)
///
/// Every tier fits this shape, which is what lets the propagators detect
/// periodicity and build Floquet maps. Terms with ω = 0 are folded into H₀.
///
/// `frame()` records a cavity rotating frame ν: the represented generator is
/// R†HR − ν a†a with R = exp(−iνt a†a/ħ), so lab states are ψ = Rψ_rot.
class ModulatedHamiltonian {
 public:
  struct Term {
    cplx coeff;
    double freq;  // meV
    SparseMatrix op;
    SparseMatrix op_adj;
  };

  explicit ModulatedHamiltonian(HilbertSpace space);

  void add_static(const SparseMatrix& h);
  void add_term(cplx coeff, double freq, const SparseMatrix& op);
  void set_frame(double nu) { frame_ = nu; }

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& static_part() const { return static_; }
  const std::vector<Term>& terms() const { return terms_; }
  double frame() const { return frame_; }

  SparseMatrix matrix_at(double t) const;
  LinearOperator at(double t) const;

  /// H(t)·x without assembling H(t).
  void apply(double t, const Vector& x, Vector& y) const;
  void apply(double t, const DenseMatrix& x, DenseMatrix& y) const;

  bool is_static() const { return terms_.empty(); }
  /// Every operator, static or modulated, is diagonal.
  bool is_diagonal() const;
  /// Distinct |ω_k| in ascending order.
  std::vector<double> frequencies() const;

  /// Multiplies every energy by `s`. Dynamics at time t/s is unchanged.
  ModulatedHamiltonian scaled(double s) const;

 private:
  HilbertSpace space_;
  SparseMatrix static_;
  std::vector<Term> terms_;
  double frame_ = 0.0;
};

/// Three-level interaction-picture Hamiltonian, optionally in a cavity frame ν.
ModulatedHamiltonian full_model(std::span<const DotParams> dots, const HilbertSpace& space,
                                double frame = 0.0);
LinearOperator build_full_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                      double t);

/// Dispersive parameters of one dot after eliminating |e⟩.
struct Eff1Dot {
  cplx lambda{0.0};
  double delta = 0.0;  // δ
  double stark = 0.0;  // |g|²/Δ^C
  friend bool operator==(const Eff1Dot&, const Eff1Dot&) = default;
};

/// Cavity-eliminated parameters.
struct EffDot {
  cplx lambda{0.0};
  double delta = 0.0;
  friend bool operator==(const EffDot&, const EffDot&) = default;
};

Eff1Dot to_eff1(const DotParams& dot);
EffDot to_eff(const DotParams& dot);
EffDot to_eff(const Eff1Dot& dot);

ModulatedHamiltonian eff1_model(std::span<const Eff1Dot> dots, const HilbertSpace& space,
                                double frame = 0.0);
LinearOperator build_eff1_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                      double t);

/// Pairwise coefficients of the diagonal model: c_jk = 2η_jk for equal δ,
/// otherwise the pair oscillates as 2η_jk cos(δ_jk t/ħ).
ModulatedHamiltonian eff_model(std::span<const EffDot> dots, const HilbertSpace& space);
LinearOperator build_eff_hamiltonian(std::span<const DotParams> dots, const HilbertSpace& space,
                                     double t);

/// Dense η_jk from dispersive parameters (δ sign rules as in eta_coeff).
Eigen::MatrixXd eta_matrix(std::span<const EffDot> dots);

}  // namespace qdwg
