#pragma once

#include "gmtkit/complex.hpp"
#include "gmtkit/geom.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace gmt {

/// Coefficients in Z/2.
struct Mod2 {
  static constexpr std::string_view name = "mod2";
  static long reduce(long v) { return v & 1; }
};

/// Coefficients in Z.
struct Integer {
  static constexpr std::string_view name = "int";
  static long reduce(long v) { return v; }
};

struct Term {
  CellId cell;
  long coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of oriented cells of one level of a complex. Terms are sorted by
/// cell id, reduced in the ring, and never zero.
template <class Ring>
class Chain {
 public:
  using ring = Ring;

  /// Zero chain on level `level` (defaults to the complex's chain dimension).
  explicit Chain(ComplexPtr complex, int level = -1);
  /// Duplicate cells are summed; out-of-range ids throw InvalidInput.
  Chain(ComplexPtr complex, int level, std::vector<Term> terms);

  const ComplexPtr& complex() const { return complex_; }
  int level() const { return level_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  long coeff(CellId cell) const;

  Chain operator+(const Chain& other) const;
  Chain operator-(const Chain& other) const;
  Chain operator-() const;
  Chain scaled(long k) const;

  /// Same complex, level and terms.
  friend bool operator==(const Chain& a, const Chain& b) {
    return a.complex_->id() == b.complex_->id() && a.level_ == b.level_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_carrier(const Chain& other) const;

  ComplexPtr complex_;
  int level_;
  std::vector<Term> terms_;
};

using Mod2Chain = Chain<Mod2>;
using IntChain = Chain<Integer>;

template <class Ring>
Chain<Ring> boundary(const Chain<Ring>& a);

/// M_W: sum of |coeff| times the measure of the cell inside w. Points are
/// weighted by counting measure.
template <class Ring>
double mass_W(const Chain<Ring>& a, const Window& w);

template <class Ring>
double mass(const Chain<Ring>& a) {
  return mass_W(a, Window::all());
}

/// Cells with nonzero coefficient.
template <class Ring>
std::vector<CellId> support(const Chain<Ring>& a);

/// Subdivides the support to cells of diameter <= maxDiam and keeps those
/// whose centroid lies in w. The window `all` returns the chain unchanged.
template <class Ring>
Chain<Ring> restrict(const Chain<Ring>& a, const Window& w, double maxDiam);

/// Chain on a fresh complex built from a soup of oriented simplices, with
/// overlapping pieces merged by arrangement and coefficients summed.
template <class Ring>
Chain<Ring> chain_from_soup(int ambientDim, int level,
                            const std::vector<std::vector<Point>>& cells,
                            const std::vector<long>& coeffs);

/// phi_# A. Cells with degenerate images are dropped; overlapping images are
/// merged (mod 2: parity, Z: signed sum).
template <class Ring>
Chain<Ring> pushforward_affine(const Chain<Ring>& a, const AffineMap& phi);

/// The same geometric chain expressed on the cells of `target` (same level).
/// Throws InvalidInput when a cell of the chain is not a union of cells of
/// the target carrying a common coefficient.
template <class Ring>
Chain<Ring> transfer_to(const Chain<Ring>& a, const ComplexPtr& target);

/// a - b as a chain on the arrangement of both supports.
template <class Ring>
Chain<Ring> geometric_difference(const Chain<Ring>& a, const Chain<Ring>& b);

/// Equality of the underlying geometric chains, independent of the carriers.
template <class Ring>
bool geometrically_equal(const Chain<Ring>& a, const Chain<Ring>& b) {
  return geometric_difference(a, b).is_zero();
}

/// The chain with the same cells and coefficients reduced mod 2.
Mod2Chain to_mod2(const IntChain& a);

/// Complex one dimension down whose fill cells are the m-cells of `c`; used to
/// fill (m-1)-chains such as boundaries.
ComplexPtr lower_complex(const CellComplex& c);

}  // namespace gmt
