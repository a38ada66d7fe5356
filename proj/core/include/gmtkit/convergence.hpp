#pragma once

#include "gmtkit/families.hpp"
#include "gmtkit/flatnorm.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gmt {

struct SequenceSpec {
  std::string family;
  int layers = 3;
  int sides = 64;
  /// Empty means the family's default range.
  std::vector<int> indices;
  /// Empty means the family's windows.
  std::vector<Window> windows;
  SolverBudget budget;
  double blMaxDiam = 0.02;
  /// Convergence tolerance; the family default when absent.
  std::optional<double> tol;
  bool allowInexact = false;
  int jobs = 1;
};

/// One row per index and window.
struct IndexRow {
  int index = 0;
  std::size_t windowId = 0;
  double mass = 0;
  double fvTotal = 0;
  std::optional<double> blDist;
  std::optional<double> flatDist;
  bool flatExact = true;
  std::optional<double> boundaryDist;
  std::string verdict;
};

struct HypothesisFlags {
  bool massBounded = false;
  bool fvBounded = false;
  bool boundariesConverge = false;
  bool all() const { return massBounded && fvBounded && boundariesConverge; }
};

/// Unset values could not be decided (inexact certificates or no declared limit).
struct ConclusionFlags {
  std::optional<bool> chainsConverge;
  std::optional<bool> limitsMatch;
  std::optional<bool> limitCompatible;
};

struct LemmaRow {
  int index = 0;
  /// Measure of {theta_i != n} inside the projected ball.
  double badMeasure = 0;
  /// Parity of theta_i on the largest part of the projected ball.
  int parity = 0;
  double blToSheets = 0;
  double fvInBall = 0;
};

struct DensityProbe {
  Point x;
  double r = 0;
  /// liminf over the tested indices of ||delta V(i)||(B(x, r)).
  double liminfFv = 0;
  double ratio = 0;  // liminfFv / r^m
};

struct ConvergenceReport {
  std::string family;
  std::string mode;
  std::vector<int> indices;
  std::vector<Window> windows;
  double tol = 0.02;
  std::vector<IndexRow> rows;
  HypothesisFlags hypotheses;
  ConclusionFlags conclusions;
  bool theoremViolation = false;
  std::vector<LemmaRow> lemma;
  std::optional<int> lemmaSheets;
  std::optional<int> recoveredParity;
  std::optional<bool> lemmaHolds;
  std::vector<DensityProbe> boundaryDensity;
  std::optional<double> witnessMass;
  std::optional<bool> cauchyLike;
  std::vector<std::string> notes;
};

/// bounded <=> every value of the last quarter is within 1.2 x the median.
bool looks_bounded(const std::vector<double>& values);

/// Last-quarter log-log slope negative (or values already zero) and final
/// value <= tol.
bool looks_convergent(const std::vector<int>& indices, const std::vector<double>& values, double tol);

ConvergenceReport check_hypotheses(const SequenceSpec& spec);
ConvergenceReport verify_mod2_theorem(const SequenceSpec& spec);
ConvergenceReport verify_lemma(const SequenceSpec& spec);
ConvergenceReport verify_integer_theorem(const SequenceSpec& spec);
ConvergenceReport cauchy_diagnostic(const SequenceSpec& spec);

/// Fixed CSV schema, one row per index and window.
inline constexpr const char* kReportCsvHeader =
    "index,window_id,mass,fv_total,bl_dist,flat_dist,flat_exact,boundary_dist,verdict";
std::string report_csv(const ConvergenceReport& r);
nlohmann::json report_summary(const ConvergenceReport& r);

}  // namespace gmt
