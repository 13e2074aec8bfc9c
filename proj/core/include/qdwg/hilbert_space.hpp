#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qdwg {

using Index = Eigen::Index;

/// Local dot levels, in basis order. `e` exists only in three-level spaces.
enum class Level : int { f = 0, g = 1, e = 2 };

/// A tensor factor of a HilbertSpace: one of the dots, or the waveguide mode.
class Site {
 public:
  static Site dot(int j) { return Site(j); }
  static Site cavity() { return Site(-1); }

  bool is_cavity() const { return index_ < 0; }
  int dot_index() const { return index_; }

  friend bool operator==(const Site&, const Site&) = default;

 private:
  explicit Site(int index) : index_(index) {}
  int index_;
};

/// N dots with 2 or 3 levels each, optionally tensored with a truncated Fock
/// space. Basis ordering is fixed: dot 0 is the slowest index, the cavity the
/// fastest; each dot orders its levels (f, g, e).
///
/// Register bitstrings (`std::uint64_t`) use one bit per dot with dot 0 as
/// the most significant of the N bits; a set bit means the dot is in |g⟩.
/// For a two-level space without cavity the bitstring *is* the basis index.
class HilbertSpace {
 public:
  HilbertSpace(int num_dots, int levels_per_dot, int fock_cutoff);

  static HilbertSpace qubits(int num_dots) { return {num_dots, 2, 0}; }

  int num_dots() const { return num_dots_; }
  int levels_per_dot() const { return levels_; }
  int fock_cutoff() const { return cutoff_; }
  bool has_cavity() const { return cutoff_ > 0; }
  bool has_excited_level() const { return levels_ == 3; }
  Index cavity_dimension() const { return cutoff_ + 1; }

  Index dimension() const { return dimension_; }
  /// levels_per_dot^num_dots
  Index dots_dimension() const { return dimension_ / (cutoff_ + 1); }
  Index register_dimension() const { return Index{1} << num_dots_; }

  Index site_dimension(Site site) const;
  /// Distance in the flat index between neighbouring local states of `site`.
  Index stride(Site site) const;

  Index index(std::span<const Level> levels, int photons = 0) const;
  Level level(Index idx, int dot) const;
  int photons(Index idx) const;

  /// Flat index of the register bitstring `bits` with the cavity in |photons⟩.
  Index register_index(std::uint64_t bits, int photons = 0) const;

  /// Same dot count and level structure; the cavity factor may differ.
  HilbertSpace with_cutoff(int fock_cutoff) const { return {num_dots_, levels_, fock_cutoff}; }
  /// Two-level register space over the same dots, without cavity.
  HilbertSpace register_space() const { return qubits(num_dots_); }

  std::string describe() const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int num_dots_;
  int levels_;
  int cutoff_;
  Index dimension_;
};

inline bool dot_in_g(std::uint64_t bits, int dot, int num_dots) {
  return ((bits >> (num_dots - 1 - dot)) & 1U) != 0;
}

}  // namespace qdwg
