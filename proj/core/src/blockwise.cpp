#include "qdwg/blockwise.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qdwg/error.hpp"
#include "qdwg/integrator.hpp"
#include "qdwg/operators.hpp"

namespace qdwg {

namespace {

// e^z − 1 without cancellation for small |z|
cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// ∫_0^T e^{zτ} dτ
cplx integral_exp(cplx z, double T) {
  if (z == 0.0) return T;
  if (std::abs(z) * T < 1e-8) return T * (1.0 + 0.5 * z * T);
  return expm1c(z * T) / z;
}

std::size_t pow2(int n) { return std::size_t{1} << n; }

bool bit(std::uint64_t s, int j, int n) { return dot_in_g(s, j, n); }

struct Segments {
  int n = 0;
  std::vector<BlockSegment> segs;
};

Segments check_segments(std::span<const BlockSegment> segments) {
  if (segments.empty()) throw std::invalid_argument("blockwise: no segments");
  Segments out;
  out.n = static_cast<int>(segments.front().dots.size());
  if (out.n < 1 || out.n > 20) throw std::invalid_argument("blockwise: dot count must be in [1, 20]");
  for (const BlockSegment& seg : segments) {
    if (static_cast<int>(seg.dots.size()) != out.n)
      throw DimensionError("blockwise: segments disagree on the dot count");
    if (!(seg.duration >= 0)) throw std::invalid_argument("blockwise: negative segment duration");
    out.segs.push_back(seg);
  }
  return out;
}

// Dots sharing their whole Stark sequence are interchangeable for the cavity
// frequency shift; a bitstring's Stark class is its count of g-dots per species.
struct StarkClasses {
  std::vector<int> cls;  // per bitstring
  std::vector<std::uint64_t> representative;
  std::size_t count() const { return representative.size(); }
};

StarkClasses stark_classes(const Segments& sg) {
  const int n = sg.n;
  std::map<std::vector<double>, int> species_index;
  std::vector<int> species(n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> seq;
    for (const BlockSegment& seg : sg.segs) seq.push_back(seg.dots[j].stark);
    species[j] = species_index.emplace(seq, static_cast<int>(species_index.size())).first->second;
  }
  StarkClasses out;
  out.cls.resize(pow2(n));
  std::map<std::vector<int>, int> index;
  for (std::uint64_t s = 0; s < pow2(n); ++s) {
    std::vector<int> counts(species_index.size(), 0);
    for (int j = 0; j < n; ++j)
      if (bit(s, j, n)) ++counts[species[j]];
    auto [it, inserted] = index.emplace(counts, static_cast<int>(index.size()));
    if (inserted) out.representative.push_back(s);
    out.cls[s] = it->second;
  }
  return out;
}

}  // namespace

struct BlockwiseResult::Impl {
  int n = 0;
  GroupingAudit audit;
  std::vector<int> cls;
  std::size_t classes = 0;
  bool coherent = true;
  double gamma = 0.0;
  // coherent
  std::vector<cplx> alpha, f, u;  // u[(s·W + w′)·n + k]
  // fock
  std::vector<cplx> table;  // W × W

  cplx kernel(std::uint64_t s, std::uint64_t sp) const {
    if (!coherent) return table[cls[s] * classes + cls[sp]];
    const cplx* us = &u[(s * classes + cls[sp]) * n];
    cplx g = 0.0;
    for (int k = 0; k < n; ++k)
      if (bit(sp, k, n)) g += us[k];
    return std::exp(f[s] + std::conj(f[sp]) + gamma * g + alpha[s] * std::conj(alpha[sp]));
  }
};

BlockwiseResult::BlockwiseResult(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
int BlockwiseResult::num_dots() const { return impl_->n; }
const GroupingAudit& BlockwiseResult::audit() const { return impl_->audit; }
cplx BlockwiseResult::kernel(std::uint64_t s, std::uint64_t sp) const { return impl_->kernel(s, sp); }

DenseMatrix BlockwiseResult::register_matrix(const DenseMatrix& rho0) const {
  const int n = impl_->n;
  if (n > 12) throw std::invalid_argument("register_matrix: more than 12 dots; use overlap_from_plus");
  const auto dim = static_cast<Index>(pow2(n));
  if (rho0.rows() != dim || rho0.cols() != dim) throw DimensionError("register_matrix: rho0 shape");
  DenseMatrix out(dim, dim);
  for (Index s = 0; s < dim; ++s)
    for (Index sp = 0; sp < dim; ++sp)
      out(s, sp) = rho0(s, sp) * impl_->kernel(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(sp));
  return out;
}

DenseMatrix BlockwiseResult::register_matrix_plus() const {
  const auto dim = static_cast<Index>(pow2(impl_->n));
  return register_matrix(DenseMatrix::Constant(dim, dim, 1.0 / static_cast<double>(dim)));
}

namespace {

void solve_coherent(const Segments& sg, double gamma, const BlockwiseOptions& opt,
                    BlockwiseResult::Impl& out) {
  const int n = sg.n;
  const StarkClasses sc = stark_classes(sg);
  const std::size_t W = sc.count();
  const std::size_t N = static_cast<std::size_t>(n);
  if (W * W * N * N > opt.max_coherent_terms || pow2(n) * W * N > opt.max_coherent_terms)
    throw std::length_error("blockwise: " + std::to_string(W) +
                            " Stark classes exceed the coherent solver capacity");

  std::vector<cplx> A(W * N, 0.0), F(W * N * N, 0.0), M(W * W * N * N, 0.0);
  std::vector<cplx> c0(W * N), b(W * N), kappa(W);
  for (const BlockSegment& seg : sg.segs) {
    const double T = seg.duration;
    for (std::size_t w = 0; w < W; ++w) {
      double chi = 0.0;
      for (int j = 0; j < n; ++j)
        if (bit(sc.representative[w], j, n)) chi += seg.dots[j].stark;
      kappa[w] = cplx(-0.5 * gamma, chi / kHbar);
    }
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t j = 0; j < N; ++j) {
        const Eff1Dot& d = seg.dots[j];
        cplx bj = 0.0;
        if (d.lambda != 0.0) {
          const cplx den = cplx(0.0, -d.delta / kHbar) - kappa[w];
          if (std::abs(den) < 1e-300)
            throw NumericalError("blockwise: drive resonant with a Stark-shifted undamped cavity");
          bj = cplx(0.0, 1.0 / kHbar) * std::conj(d.lambda) / den;
        }
        b[w * N + j] = bj;
        c0[w * N + j] = A[w * N + j] - bj;
      }
    // f: (i/ħ) λ_k ∫ e^{iδ_kτ/ħ} A_j^w(τ) dτ
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t k = 0; k < N; ++k) {
        const Eff1Dot& dk = seg.dots[k];
        if (dk.lambda == 0.0) continue;
        const cplx zk(0.0, dk.delta / kHbar);
        const cplx pre = cplx(0.0, 1.0 / kHbar) * dk.lambda;
        for (std::size_t j = 0; j < N; ++j) {
          const cplx zj(0.0, -seg.dots[j].delta / kHbar);
          F[(w * N + k) * N + j] += pre * (c0[w * N + j] * integral_exp(zk + kappa[w], T) +
                                           b[w * N + j] * integral_exp(zk + zj, T));
        }
      }
    // M: ∫ A_j^w conj(A_k^v) dτ
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t v = 0; v < W; ++v) {
        const cplx kk = kappa[w] + std::conj(kappa[v]);
        for (std::size_t j = 0; j < N; ++j) {
          const cplx ej(0.0, -seg.dots[j].delta / kHbar);
          const cplx cj = c0[w * N + j], bj = b[w * N + j];
          for (std::size_t k = 0; k < N; ++k) {
            const cplx ek(0.0, seg.dots[k].delta / kHbar);
            const cplx ck = std::conj(c0[v * N + k]), bk = std::conj(b[v * N + k]);
            cplx acc = cj * ck * integral_exp(kk, T);
            if (bk != 0.0) acc += cj * bk * integral_exp(kappa[w] + ek, T);
            if (bj != 0.0) acc += bj * ck * integral_exp(ej + std::conj(kappa[v]), T);
            if (bj != 0.0 && bk != 0.0) acc += bj * bk * integral_exp(ej + ek, T);
            M[((w * W + v) * N + j) * N + k] += acc;
          }
        }
      }
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t j = 0; j < N; ++j)
        A[w * N + j] = c0[w * N + j] * std::exp(kappa[w] * T) +
                       b[w * N + j] * std::polar(1.0, -seg.dots[j].delta * T / kHbar);
  }

  const std::size_t S = pow2(n);
  out.alpha.assign(S, 0.0);
  out.f.assign(S, 0.0);
  out.u.assign(S * W * N, 0.0);
  for (std::uint64_t s = 0; s < S; ++s) {
    const std::size_t w = static_cast<std::size_t>(sc.cls[s]);
    for (std::size_t j = 0; j < N; ++j) {
      if (!bit(s, static_cast<int>(j), n)) continue;
      out.alpha[s] += A[w * N + j];
      for (std::size_t k = 0; k < N; ++k)
        if (bit(s, static_cast<int>(k), n)) out.f[s] += F[(w * N + k) * N + j];
      for (std::size_t v = 0; v < W; ++v)
        for (std::size_t k = 0; k < N; ++k) out.u[(s * W + v) * N + k] += M[((w * W + v) * N + j) * N + k];
    }
  }
  out.cls = sc.cls;
  out.classes = W;
  out.coherent = true;
  out.audit = {S, W, W * W, BlockSolver::coherent};
}

struct FockClass {
  std::uint64_t representative;
  std::vector<double> stark;                              // per segment
  std::vector<std::vector<std::pair<cplx, double>>> drives;  // per segment: (λ, δ) of g-dots
};

void solve_fock(const Segments& sg, double gamma, const BlockwiseOptions& opt,
                BlockwiseResult::Impl& out) {
  const int n = sg.n;
  if (opt.fock_cutoff < 1) throw std::invalid_argument("blockwise: fock cutoff must be ≥ 1");
  const StarkClasses sc = stark_classes(sg);

  // Full signature: Stark class plus the per-segment multiset of drives.
  std::map<std::vector<double>, int> index;
  std::vector<FockClass> classes;
  out.cls.resize(pow2(n));
  for (std::uint64_t s = 0; s < pow2(n); ++s) {
    std::vector<double> key{static_cast<double>(sc.cls[s])};
    for (const BlockSegment& seg : sg.segs) {
      std::vector<std::array<double, 3>> items;
      for (int j = 0; j < n; ++j)
        if (bit(s, j, n) && seg.dots[j].lambda != 0.0)
          items.push_back({seg.dots[j].lambda.real(), seg.dots[j].lambda.imag(), seg.dots[j].delta});
      std::sort(items.begin(), items.end());
      key.push_back(static_cast<double>(items.size()));
      for (const auto& it : items) key.insert(key.end(), it.begin(), it.end());
    }
    auto [it, inserted] = index.emplace(std::move(key), static_cast<int>(classes.size()));
    if (inserted) {
      FockClass fc{s, {}, {}};
      for (const BlockSegment& seg : sg.segs) {
        double chi = 0.0;
        std::vector<std::pair<cplx, double>> drv;
        for (int j = 0; j < n; ++j)
          if (bit(s, j, n)) {
            chi += seg.dots[j].stark;
            if (seg.dots[j].lambda != 0.0) drv.emplace_back(seg.dots[j].lambda, seg.dots[j].delta);
          }
        fc.stark.push_back(chi);
        fc.drives.push_back(std::move(drv));
      }
      classes.push_back(std::move(fc));
    }
    out.cls[s] = it->second;
  }
  const std::size_t W = classes.size();
  const std::size_t equations = W * (W + 1) / 2;
  if (equations > opt.max_block_equations)
    throw std::length_error("blockwise: " + std::to_string(equations) +
                            " block equations exceed the Fock solver capacity");

  const Index D = opt.fock_cutoff + 1;
  const DenseMatrix a = local_annihilation(opt.fock_cutoff);
  const DenseMatrix ad = a.adjoint();
  const DenseMatrix num = ad * a;

  auto hamiltonian = [&](const FockClass& c, std::size_t seg, double tau) {
    cplx lam = 0.0;
    for (const auto& [l, d] : c.drives[seg]) lam += l * std::polar(1.0, d * tau / kHbar);
    DenseMatrix h = -c.stark[seg] * num - lam * a - std::conj(lam) * ad;
    return h;
  };

  out.table.assign(W * W, 0.0);
  const cplx mi(0.0, -1.0 / kHbar);
  for (std::size_t c = 0; c < W; ++c)
    for (std::size_t cp = c; cp < W; ++cp) {
      DenseMatrix rho = DenseMatrix::Zero(D, D);
      rho(0, 0) = 1.0;
      for (std::size_t si = 0; si < sg.segs.size(); ++si) {
        const double T = sg.segs[si].duration;
        if (T == 0.0) continue;
        // A single drive frequency turns static in the frame rotating with it:
        // one Liouvillian exponential replaces thousands of steps.
        std::optional<double> nu;
        bool single = true;
        for (const FockClass* fc : {&classes[c], &classes[cp]})
          for (const auto& [l, d] : fc->drives[si]) {
            if (nu && *nu != d) single = false;
            nu = d;
          }
        if (single) {
          const double w = nu.value_or(0.0);
          const DenseMatrix h1 = hamiltonian(classes[c], si, 0.0) - w * num;
          const DenseMatrix h2 = hamiltonian(classes[cp], si, 0.0) - w * num;
          const DenseMatrix id = DenseMatrix::Identity(D, D);
          DenseMatrix L = mi * (DenseMatrix(Eigen::kroneckerProduct(id, h1)) -
                                DenseMatrix(Eigen::kroneckerProduct(h2.transpose(), id)));
          if (gamma != 0.0)
            L += gamma * (DenseMatrix(Eigen::kroneckerProduct(ad.transpose(), a)) -
                          0.5 * DenseMatrix(Eigen::kroneckerProduct(id, num)) -
                          0.5 * DenseMatrix(Eigen::kroneckerProduct(num.transpose(), id)));
          const DenseMatrix prop = (L * T).exp();
          Vector v = prop * Eigen::Map<const Vector>(rho.data(), D * D);
          rho = Eigen::Map<const DenseMatrix>(v.data(), D, D);
          // back to the lab frame: ρ_nm picks up e^{−iω(n−m)T/ħ}
          for (Index i = 0; i < D; ++i)
            for (Index j = 0; j < D; ++j) rho(i, j) *= std::polar(1.0, -w * double(i - j) * T / kHbar);
          continue;
        }
        Dopri5<DenseMatrix> solver(
            [&](double tau, const DenseMatrix& r, DenseMatrix& dr) {
              const DenseMatrix h1 = hamiltonian(classes[c], si, tau);
              const DenseMatrix h2 = hamiltonian(classes[cp], si, tau);
              dr = mi * (h1 * r - r * h2);
              if (gamma != 0.0) dr += gamma * (a * r * ad - 0.5 * (num * r + r * num));
            },
            StepControl{opt.rel_tol, opt.abs_tol, 0.0});
        solver.integrate(rho, 0.0, {T});
      }
      const cplx tr = rho.trace();
      out.table[c * W + cp] = tr;
      out.table[cp * W + c] = std::conj(tr);
    }
  out.classes = W;
  out.coherent = false;
  out.audit = {pow2(n), W, equations, BlockSolver::fock};
}

}  // namespace

BlockwiseResult blockwise_evolve(std::span<const BlockSegment> segments, const DecayModel& decay,
                                 const BlockwiseOptions& options) {
  const Segments sg = check_segments(segments);
  auto impl = std::make_shared<BlockwiseResult::Impl>();
  impl->n = sg.n;
  impl->gamma = decay.gamma();
  if (options.solver == BlockSolver::fock)
    solve_fock(sg, decay.gamma(), options, *impl);
  else
    solve_coherent(sg, decay.gamma(), options, *impl);
  return BlockwiseResult(std::move(impl));
}

QuantumState blockwise_decoherence_evolve(std::span<const BlockSegment> segments,
                                          const DecayModel& decay, const QuantumState& rho0,
                                          const BlockwiseOptions& options) {
  const HilbertSpace& rs = rho0.space();
  if (rs.has_cavity() || rs.has_excited_level())
    throw DimensionError("blockwise: rho0 must be a bare two-level register state");
  const BlockwiseResult res = blockwise_evolve(segments, decay, options);
  if (res.num_dots() != rs.num_dots()) throw DimensionError("blockwise: rho0 dot count mismatch");
  DenseMatrix rho = res.register_matrix(rho0.density_matrix());
  const auto check = rs.dimension() > 256 ? QuantumState::Validation::structural
                                          : QuantumState::Validation::full;
  return QuantumState::density(rs, std::move(rho), check);
}

double overlap_from_plus(const BlockwiseResult& a, const BlockwiseResult& b) {
  if (a.num_dots() != b.num_dots()) throw DimensionError("overlap_from_plus: dot count mismatch");
  const std::uint64_t dim = pow2(a.num_dots());
  double acc = 0.0;
  for (std::uint64_t s = 0; s < dim; ++s) {
    // ρ Hermitian: the lower triangle mirrors the upper one.
    acc += (a.kernel(s, s) * std::conj(b.kernel(s, s))).real();
    for (std::uint64_t sp = s + 1; sp < dim; ++sp)
      acc += 2.0 * (a.kernel(s, sp) * std::conj(b.kernel(s, sp))).real();
  }
  return acc / static_cast<double>(dim) / static_cast<double>(dim);
}

}  // namespace qdwg
