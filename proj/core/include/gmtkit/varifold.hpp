#pragma once

#include "gmtkit/chain.hpp"
#include "gmtkit/complex.hpp"
#include "gmtkit/geom.hpp"

#include <optional>
#include <vector>

namespace gmt {

/// Positive integer multiplicities on the m-cells of a complex.
class IntegralVarifold {
 public:
  explicit IntegralVarifold(ComplexPtr complex);
  /// Duplicate cells are summed; multiplicities must be >= 1 after summing
  /// (zero entries are dropped, negative ones throw InvalidInput).
  IntegralVarifold(ComplexPtr complex, std::vector<Term> mult);

  const ComplexPtr& complex() const { return complex_; }
  int dim() const { return complex_->chain_dim(); }
  std::span<const Term> terms() const { return mult_; }
  long mult(CellId cell) const;
  bool is_zero() const { return mult_.empty(); }
  std::size_t size() const { return mult_.size(); }

  IntegralVarifold operator+(const IntegralVarifold& other) const;
  IntegralVarifold scaled(long k) const;

  friend bool operator==(const IntegralVarifold& a, const IntegralVarifold& b) {
    return a.complex_->id() == b.complex_->id() && a.mult_ == b.mult_;
  }

 private:
  ComplexPtr complex_;
  std::vector<Term> mult_;
};

/// mu_V(W).
double mass_W(const IntegralVarifold& v, const Window& w);
inline double mass(const IntegralVarifold& v) { return mass_W(v, Window::all()); }

/// Sum over cells containing x of mult times the local density: 1 inside a
/// cell, 1/2 at a segment end or on a triangle edge, angle/2pi at a triangle
/// corner.
double density_at(const IntegralVarifold& v, const Point& x);

/// [V]: the cells of odd multiplicity.
Mod2Chain to_mod2(const IntegralVarifold& v);

/// v(A): multiplicity |coeff|.
IntegralVarifold v_of_chain(const IntChain& a);

/// Varifold on a fresh complex from a soup of simplices; overlapping pieces are
/// merged and their multiplicities added.
IntegralVarifold varifold_from_soup(int ambientDim, int dim,
                                    const std::vector<std::vector<Point>>& cells,
                                    const std::vector<long>& mult);

struct Compatibility {
  bool ok = false;
  /// W with V = v(A) + 2W, on the common refinement (when ok).
  std::optional<IntegralVarifold> witness;
  /// First refined cell where mult_V - |coeff_A| is negative or odd.
  std::optional<Point> offendingPoint;
  long offendingDifference = 0;
};

/// Whether V = v(A) + 2W for an integral varifold W.
Compatibility compatible(const IntChain& a, const IntegralVarifold& v);

/// Same geometric varifold regardless of carrier.
bool geometrically_equal(const IntegralVarifold& a, const IntegralVarifold& b);

IntegralVarifold pushforward_affine(const IntegralVarifold& v, const AffineMap& phi);

/// eta_{x,lambda}# V with eta_{x,lambda}(y) = (y - x) / lambda.
IntegralVarifold dilate(const IntegralVarifold& v, const Point& x, double lambda);

/// V restricted to w by subdivision to maxDiam and keeping cells whose
/// centroid lies in w.
IntegralVarifold restrict(const IntegralVarifold& v, const Window& w, double maxDiam);

struct FirstVariationAtom {
  CellId face;
  Point conormalSum;
  double faceMeasure;
};

/// ||delta V|| of a polyhedral varifold: atoms on the (m-1)-faces carrying the
/// summed outward unit conormals (flat cells have no mean curvature).
struct FirstVariationMeasure {
  ComplexPtr complex;
  std::vector<FirstVariationAtom> atoms;
};

FirstVariationMeasure first_variation(const IntegralVarifold& v);

/// ||delta V||(W): sum of |conormalSum| times the face measure inside w.
double total_first_variation_W(const FirstVariationMeasure& fv, const Window& w);
double total_first_variation_W(const IntegralVarifold& v, const Window& w);

struct VarifoldAtom {
  Point position;
  Plane plane;
  double weight;
};

/// Point-mass discretization of mu_V on U x G_m.
struct VarifoldAtoms {
  int ambientDim = 2;
  int dim = 1;
  std::vector<VarifoldAtom> atoms;
  double total_weight() const;
};

VarifoldAtoms atoms(const IntegralVarifold& v, double maxDiam);

inline constexpr std::size_t kDefaultAtomLimit = 2000;

/// Bounded-Lipschitz distance for the ground metric |x - y| + grassmann_dist.
/// Throws AtomBudget when either side has more than `limit` atoms.
double bl_distance(const VarifoldAtoms& a, const VarifoldAtoms& b,
                   std::size_t limit = kDefaultAtomLimit);

}  // namespace gmt
