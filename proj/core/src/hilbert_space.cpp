#include "qdwg/hilbert_space.hpp"

#include <sstream>
#include <stdexcept>

#include "qdwg/error.hpp"

namespace qdwg {

HilbertSpace::HilbertSpace(int num_dots, int levels_per_dot, int fock_cutoff)
    : num_dots_(num_dots), levels_(levels_per_dot), cutoff_(fock_cutoff), dimension_(1) {
  if (num_dots < 1) throw std::invalid_argument("HilbertSpace: num_dots must be >= 1");
  if (levels_per_dot != 2 && levels_per_dot != 3)
    throw std::invalid_argument("HilbertSpace: levels_per_dot must be 2 or 3");
  if (fock_cutoff < 0) throw std::invalid_argument("HilbertSpace: fock_cutoff must be >= 0");
  if (num_dots > 40) throw std::invalid_argument("HilbertSpace: too many dots");
  for (int j = 0; j < num_dots; ++j) {
    dimension_ *= levels_per_dot;
    if (dimension_ > (Index{1} << 40))
      throw std::invalid_argument("HilbertSpace: dimension overflow");
  }
  dimension_ *= (fock_cutoff + 1);
}

Index HilbertSpace::site_dimension(Site site) const {
  if (site.is_cavity()) {
    if (!has_cavity()) throw std::out_of_range("HilbertSpace: space has no cavity factor");
    return cavity_dimension();
  }
  if (site.dot_index() < 0 || site.dot_index() >= num_dots_)
    throw std::out_of_range("HilbertSpace: dot index " + std::to_string(site.dot_index()) +
                            " out of range");
  return levels_;
}

Index HilbertSpace::stride(Site site) const {
  if (site.is_cavity()) return 1;
  site_dimension(site);  // range check
  Index s = cavity_dimension();
  for (int j = num_dots_ - 1; j > site.dot_index(); --j) s *= levels_;
  return s;
}

Index HilbertSpace::index(std::span<const Level> levels, int photons) const {
  if (static_cast<int>(levels.size()) != num_dots_)
    throw DimensionError("HilbertSpace::index: expected one level per dot");
  if (photons < 0 || photons > cutoff_)
    throw std::out_of_range("HilbertSpace::index: photon number beyond cutoff");
  Index idx = 0;
  for (Level l : levels) {
    int v = static_cast<int>(l);
    if (v >= levels_) throw std::out_of_range("HilbertSpace::index: level e absent");
    idx = idx * levels_ + v;
  }
  return idx * cavity_dimension() + photons;
}

Level HilbertSpace::level(Index idx, int dot) const {
  return static_cast<Level>((idx / stride(Site::dot(dot))) % levels_);
}

int HilbertSpace::photons(Index idx) const { return static_cast<int>(idx % cavity_dimension()); }

Index HilbertSpace::register_index(std::uint64_t bits, int photons) const {
  if (photons < 0 || photons > cutoff_)
    throw std::out_of_range("HilbertSpace::register_index: photon number beyond cutoff");
  Index idx = 0;
  for (int j = 0; j < num_dots_; ++j) idx = idx * levels_ + (dot_in_g(bits, j, num_dots_) ? 1 : 0);
  return idx * cavity_dimension() + photons;
}

std::string HilbertSpace::describe() const {
  std::ostringstream os;
  os << num_dots_ << " dots x " << levels_ << " levels";
  if (has_cavity()) os << " (x) Fock[0.." << cutoff_ << "]";
  os << ", dim " << dimension_;
  return os.str();
}

}  // namespace qdwg
