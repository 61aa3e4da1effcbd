#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"

namespace wittforge {

/// Integer coordinate vector; small fixed capacity keeps it allocation-free.
using LatticePoint = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;

inline LatticePoint lattice_point(std::initializer_list<std::int64_t> coords) {
  LatticePoint x(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (auto c : coords) x(i++) = c;
  return x;
}

inline LatticePoint lattice_point(const std::vector<std::int64_t>& coords) {
  LatticePoint x(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) x(static_cast<Eigen::Index>(i)) = coords[i];
  return x;
}

inline bool lattice_equal(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

/// Lexicographic comparison, first coordinate most significant.
/// Translation invariant, hence a total group order.
inline int lattice_compare(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i) ? -1 : 1;
  return 0;
}

struct LatticeLess {
  bool operator()(const LatticePoint& a, const LatticePoint& b) const { return lattice_compare(a, b) < 0; }
};

inline std::string coords_to_string(const LatticePoint& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x(i));
  }
  return out;
}

/// Z^rank with named generators. A generator may be a concrete axis ("1", "d1")
/// or a formal symbol ("k", "s", ...) standing for a generic index.
class IndexLattice {
 public:
  IndexLattice() = default;
  explicit IndexLattice(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty() || names_.size() > 8) throw PreconditionError("lattice rank must be in 1..8");
  }

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const { return names_; }
  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  LatticePoint zero() const { return LatticePoint::Zero(rank()); }
  LatticePoint unit(int i) const {
    LatticePoint x = zero();
    x(i) = 1;
    return x;
  }
  LatticePoint generator(const std::string& name) const {
    const int i = generator_index(name);
    if (i < 0) throw MissingSymbol(name);
    return unit(i);
  }

  bool contains(const LatticePoint& x) const { return x.size() == rank(); }

  friend bool operator==(const IndexLattice& a, const IndexLattice& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

}  // namespace wittforge
