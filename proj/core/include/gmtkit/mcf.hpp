#pragma once

#include "gmtkit/varifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmt {

/// A closed polygon in the plane carrying a multiplicity.
struct Loop {
  std::vector<Point> vertices;
  long mult = 1;
};

struct StepRecord {
  std::size_t step = 0;
  double t = 0;
  double dt = 0;
  double mass = 0;
  /// Sum of |kappa|^2 ds dt over the vertices moved in this step.
  double dissipation = 0;
  double lengthDrop = 0;
  /// Number of points of the boundary of [V(t)].
  long boundaryMass = 0;
  /// Mass of the swept homotopy between consecutive polygons: an upper bound
  /// for flat_dist([V(t)], [V(t + dt)]).
  double flatSweep = 0;
  bool remeshed = false;
  bool extinct = false;
  bool monotone = true;
  bool dissipationOk = true;
  bool cyclic = true;
  bool flatContinuous = true;
  std::string flags() const;
};

struct FlowState {
  double t = 0;
  std::vector<Loop> loops;
  std::vector<StepRecord> history;
  std::optional<double> extinctionTime;

  IntegralVarifold varifold() const;
  double mass() const;
};

struct FlowParams {
  double dtSafety = 0.25;
  std::size_t maxSteps = 100000;
  double minEdge = 0.02;
  double maxEdge = 0.2;
  /// Loops are never coarsened below this many vertices.
  std::size_t minVertices = 8;
  double extinctionMassTol = 1e-2;
  /// Overrides c * minEdge^2 when set.
  std::optional<double> fixedDt;
};

/// Loops of a closed polygonal 1-varifold in R^2: every vertex of the support
/// must have exactly two incident cells of equal multiplicity. Throws
/// InvalidInput otherwise, and for loops with fewer than three distinct
/// vertices or no enclosed area.
std::vector<Loop> loops_of(const IntegralVarifold& v);
FlowState initial_state(const IntegralVarifold& v);
FlowState initial_state(std::vector<Loop> loops);

/// Discrete curvature 2 (u_next - u_prev) / (|e_prev| + |e_next|) at every vertex.
std::vector<std::vector<Point>> curvature(const std::vector<Loop>& loops);

/// One explicit step with dt = c * (min edge)^2. Throws FlowDiagnosticFailure
/// when the length drop misses 0.8 of the dissipation.
FlowState curvature_step(const FlowState& state, const FlowParams& params);

/// Removes vertices on edges shorter than minEdge and splits edges longer than
/// maxEdge. Returns true when anything changed.
bool remesh(std::vector<Loop>& loops, const FlowParams& params);

/// Steps until the mass drops below extinctionMassTol or maxSteps is reached.
/// On FlowDiagnosticFailure `state` keeps the history up to the failing step.
void run(FlowState& state, const FlowParams& params);
FlowState run(const IntegralVarifold& initial, const FlowParams& params);

inline constexpr const char* kFlowCsvHeader = "t,mass,dissipation,boundary_mass,flags";
std::string flow_csv(const FlowState& state);

struct Ray {
  Point direction;
  long mult = 1;
};

struct JunctionConfig {
  Point center = Point::Zero();
  std::vector<Ray> rays;
  double radius = 1;
};

struct JunctionVerdict {
  bool odd = false;
  long boundaryMass = 0;
  bool excluded = false;
  std::string verdict;
};

/// Parity of a static configuration of rays meeting at a point.
JunctionVerdict junction_parity(const JunctionConfig& cfg);
IntegralVarifold junction_varifold(const JunctionConfig& cfg);

/// eta_{x,lambda}# V(t) for each lambda (spatial dilation only).
std::vector<IntegralVarifold> blowup(const FlowState& state, const Point& x, const std::vector<double>& lambdas);

/// Rays of the support of v emanating from the origin within radius r.
JunctionConfig ray_structure(const IntegralVarifold& v, double r);

}  // namespace gmt
