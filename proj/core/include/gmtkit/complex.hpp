#pragma once

#include "gmtkit/geom.hpp"

#include <array>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gmt {

/// Positions closer than this are merged into one vertex.
inline constexpr double kDedupTol = 1e-9;

/// One signed entry of a boundary or coboundary operator.
struct Incidence {
  CellId cell;
  int sign;
};

class CellComplex;
using ComplexPtr = std::shared_ptr<const CellComplex>;

/// Embedded simplicial complex in R^N carrying m-cells, optional (m+1)-cells
/// ("fill cells") and every lower-dimensional face, with signed boundary
/// operators between consecutive levels.
///
/// Level m holds the m-cells in the order and orientation they were given;
/// level m+1 holds the fill cells likewise. Lower levels are derived and kept
/// in canonical (sorted vertex tuple) order. The orientation of a stored cell
/// is the sign of the permutation from its stored vertex order to sorted order.
class CellComplex {
 public:
  static ComplexPtr build(int ambientDim, int chainDim, std::vector<Point> positions,
                          std::vector<Simplex> cells, std::vector<Simplex> fillCells = {},
                          double dedupTol = kDedupTol);

  int ambient_dim() const { return ambient_; }
  int chain_dim() const { return chainDim_; }
  std::span<const Point> positions() const { return positions_; }

  /// Number of cells at level k; zero outside [0, m+1].
  std::size_t num_cells(int k) const;
  std::span<const Simplex> cells(int k) const;
  const Simplex& cell(int k, CellId id) const { return level(k).cells[id]; }

  /// Signed (k-1)-faces of cell `id` at level k.
  std::span<const Incidence> boundary(int k, CellId id) const;
  /// Signed (k+1)-cells having cell `id` of level k as a face.
  std::span<const Incidence> coboundary(int k, CellId id) const;

  /// Looks a cell up by its vertex set (any order); -1 when absent.
  CellId find(int k, const Simplex& s) const;

  double measure(int k, CellId id) const { return level(k).measure[id]; }
  double diameter(int k, CellId id) const;
  /// Vertex positions of a cell in stored order.
  std::vector<Point> vertices(int k, CellId id) const;
  Point centroid(int k, CellId id) const;

  /// Content hash of positions and cells; stable across runs.
  const std::string& id() const { return id_; }

  bool has_fills() const { return num_cells(chainDim_ + 1) > 0; }

 private:
  struct Csr {
    std::vector<std::size_t> offset{0};
    std::vector<Incidence> items;
    std::span<const Incidence> row(CellId i) const {
      return {items.data() + offset[i], items.data() + offset[i + 1]};
    }
  };
  struct Level {
    std::vector<Simplex> cells;
    std::unordered_map<Simplex, CellId, SimplexHash> index;
    std::vector<double> measure;
    Csr boundary;
    Csr coboundary;
  };

  CellComplex() = default;
  const Level& level(int k) const;

  int ambient_ = 0;
  int chainDim_ = 0;
  std::vector<Point> positions_;
  std::vector<Level> levels_;
  std::string id_;
};

struct ParentRef {
  CellId cell;
  int sign;  // orientation of the child relative to the parent
};

/// Child m-cells of a refined complex and the parent m-cells containing them.
struct RefinementMap {
  std::string parentId;
  std::string childId;
  std::vector<std::vector<ParentRef>> parents;  // indexed by child cell

  /// First parent of a child cell, or -1.
  CellId parent(CellId child) const {
    return parents[child].empty() ? -1 : parents[child].front().cell;
  }
};

/// Result of laying a soup of m-simplices into one complex.
struct Arrangement {
  ComplexPtr complex;
  /// For each output m-cell, the input cells covering it (index into input).
  std::vector<std::vector<ParentRef>> parents;
};

/// Splits a soup of m-simplices (given by vertex positions) into a complex in
/// which overlapping pieces become shared cells. Segments (m = 1) are split at
/// all pairwise intersections in any ambient dimension; points (m = 0) are
/// merged; triangles (m = 2) must be identical or have disjoint interiors.
/// Degenerate input cells are skipped (no output cell lists them).
Arrangement arrange(int ambientDim, int chainDim,
                    const std::vector<std::vector<Point>>& cells,
                    double tol = 1e-12);

struct CommonRefinement {
  ComplexPtr complex;
  RefinementMap fromA;
  RefinementMap fromB;
};

/// Complex refining the m-cells of both inputs. Fill cells are not carried.
CommonRefinement common_refinement(const CellComplex& a, const CellComplex& b,
                                   double tol = 1e-12);

struct Subdivision {
  ComplexPtr complex;
  RefinementMap map;
};

/// Splits m-cells until every diameter is at most maxDiam. When nothing needs
/// splitting the input complex is returned as is; otherwise fill cells are
/// dropped.
Subdivision subdivide(const ComplexPtr& c, double maxDiam);

/// Like subdivide, restricted to the listed m-cells (others are dropped).
Subdivision subdivide_cells(const ComplexPtr& c, std::span<const CellId> cells,
                            double maxDiam);

/// Complex whose fill cells are `fills` and whose m-cells are all faces of the
/// fills together with `extra`. Positions are taken as given (no merging).
ComplexPtr fill_complex(int ambientDim, std::vector<Point> positions, std::vector<Simplex> fills,
                        std::vector<Simplex> extra = {});

}  // namespace gmt
