#pragma once

#include "gmtkit/chain.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gmt {

enum class FlatMethod { PlanarMincut, Exhaustive, FrontierDp, BranchAndBound };

std::string_view to_string(FlatMethod m);
/// Throws InvalidInput on unknown names.
FlatMethod flat_method_from_string(std::string_view s);

struct SolverBudget {
  std::size_t maxNodes = 1'000'000;
  /// Bound on |q| for integer fillings.
  int maxCoeff = 4;
  /// Frontier DP gives up above this many live states.
  std::size_t maxStates = 1u << 20;
  /// Force one method for every component (throws if it does not apply).
  std::optional<FlatMethod> method;
};

/// Certificate of F_W(A) relative to the fill cells of one complex.
template <class Ring>
struct FlatNormCert {
  /// M_W(A - dQ) + M_W(Q) for the filling Q below; an upper bound always.
  double value = 0;
  /// Proven lower bound on the complex-relative value.
  double lowerBound = 0;
  Chain<Ring> filling;
  double residualMass = 0;
  double fillMass = 0;
  FlatMethod method = FlatMethod::Exhaustive;
  bool exact = true;
  std::string fillComplexId;
  std::size_t nodes = 0;
};

using Mod2FlatCert = FlatNormCert<Mod2>;
using IntFlatCert = FlatNormCert<Integer>;

/// min over fillings Q on the fill cells of `fill` of M_W(A - dQ) + M_W(Q).
/// A must lie on the fill complex's top-but-one level (it is transferred there
/// when carried by another complex). Integer fillings are bounded by
/// budget.maxCoeff; hitting the bound clears `exact`.
template <class Ring>
FlatNormCert<Ring> flat_seminorm(const Chain<Ring>& a, const ComplexPtr& fill, const Window& w,
                                 const SolverBudget& budget = {});

template <class Ring>
FlatNormCert<Ring> flat_dist(const Chain<Ring>& a, const Chain<Ring>& b, const ComplexPtr& fill,
                             const Window& w, const SolverBudget& budget = {});

/// Lower bound on the flat norm of a 1-chain in the plane: the largest mass of
/// its push-forward to a line under a few unit functionals (1-Lipschitz maps
/// cannot increase the flat norm, and a 1-chain on a line has flat norm equal
/// to its mass). Returns 0 when not applicable.
template <class Ring>
double projection_lower_bound(const Chain<Ring>& a);

}  // namespace gmt
