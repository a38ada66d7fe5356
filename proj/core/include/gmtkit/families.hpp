#pragma once

#include "gmtkit/chain.hpp"
#include "gmtkit/complex.hpp"
#include "gmtkit/varifold.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmt {

/// Closed-form values a generated member must reproduce.
struct Expectations {
  std::optional<double> mass;
  /// ||delta V|| of the whole space.
  std::optional<double> fvTotal;
  /// ||delta V|| inside the family window.
  std::optional<double> fvWindow;
  /// Upper bound on the flat seminorm of [V] (window all).
  std::optional<double> flatUpper;
  /// Exact flat distance of [V] to the declared chain limit.
  std::optional<double> flatToLimit;
  /// Upper bound on the flat distance to the declared chain limit in the window.
  std::optional<double> flatToLimitUpper;
  /// Upper bound on the BL distance to the declared limit varifold, before
  /// discretization slack.
  std::optional<double> blToLimitUpper;
  std::optional<std::size_t> boundaryPoints;
  std::optional<double> enclosedArea;
};

struct FamilyMember {
  int index = 0;
  IntegralVarifold varifold;
  /// Oriented families only.
  std::optional<IntChain> current;
  /// Fill complex whose m-cells carry this member and the declared limits.
  ComplexPtr fill;
  Expectations expect;
};

struct Family {
  std::string id;
  std::string parameter;
  std::vector<int> defaultRange;
  std::vector<Window> windows{Window::all()};
  std::optional<IntegralVarifold> limitVarifold;
  /// Declared flat limit of [V(i)]; when absent the projection of the limit
  /// varifold is used.
  std::optional<Mod2Chain> limitChain;
  /// Declared limit of the currents for oriented families.
  std::optional<IntChain> limitCurrent;
  /// Declared limit of the boundaries (zero when absent).
  std::optional<Mod2Chain> gamma;
  /// Lemma setting: number of sheets and the window in which it is checked.
  std::optional<int> lemmaLayers;
  std::optional<Window> lemmaWindow;
  double tol = 0.02;
  std::function<FamilyMember(int)> member;
  /// Fill complex carrying all listed members and the limits.
  std::function<ComplexPtr(std::span<const int>)> fill;
};

/// Identifiers accepted by `family`.
const std::vector<std::string>& family_ids();

/// Throws InvalidInput for unknown ids. `layers` and `sides` parameterize the
/// layers and polygon families.
Family family(std::string_view id, int layers = 3, int sides = 64);

/// Triangulated grid over xs x ys in the plane; every edge is a 1-cell.
ComplexPtr grid_fill(std::vector<double> xs, std::vector<double> ys);

/// Varifold of a closed polygon (or open polyline) with constant multiplicity.
IntegralVarifold polygon_varifold(const std::vector<Point>& vertices, bool closed, long mult = 1);
std::vector<Point> regular_polygon(int k, double radius, const Point& center = Point::Zero());

/// The unit interval I = [0,1] x {0} in the plane with multiplicity k.
IntegralVarifold unit_interval_varifold(long k = 1);

FamilyMember gen_Sn(int n);
FamilyMember gen_Qn(int n);
FamilyMember gen_comb(int i);
/// sign 0: unoriented; +1 or -1: the upper segment has that coefficient.
FamilyMember gen_parallel_pair(int i, int sign = 0);
FamilyMember gen_layers(int i, int n);
FamilyMember gen_polygon_circles(int i, int k);

}  // namespace gmt
