#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gmt {

/// A point of R^N, N <= 3. Coordinates beyond the ambient dimension are zero.
using Point = Eigen::Vector3d;

using VertexId = std::int32_t;
using CellId = std::int32_t;

inline constexpr double kDegeneracyTol = 1e-12;
inline constexpr int kMaxAmbientDim = 3;

/// Vertex ids of a k-simplex, 0 <= k <= 3, in stored order.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<VertexId> ids);
  explicit Simplex(std::span<const VertexId> ids);

  int dim() const { return static_cast<int>(size_) - 1; }
  std::size_t size() const { return size_; }
  VertexId operator[](std::size_t i) const { return v_[i]; }
  VertexId& operator[](std::size_t i) { return v_[i]; }
  const VertexId* begin() const { return v_.data(); }
  const VertexId* end() const { return v_.data() + size_; }

  /// Vertices in increasing order; the canonical identity of the cell.
  Simplex sorted() const;
  /// Sign of the permutation taking the stored order to sorted order.
  int orientation_sign() const;
  /// The face opposite to vertex position i (stored order preserved).
  Simplex face(std::size_t i) const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }
  friend bool operator<(const Simplex& a, const Simplex& b);

 private:
  std::array<VertexId, 4> v_{};
  std::uint8_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// An m-dimensional linear subspace of R^N, i.e. an element of G_m(R^N).
class Plane {
 public:
  /// Orthonormalizes the columns of `spanning` (N x m, column-major in 3 rows).
  Plane(int ambientDim, const Eigen::Matrix<double, 3, Eigen::Dynamic>& spanning);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::Matrix<double, 3, Eigen::Dynamic>& basis() const { return basis_; }
  const Eigen::Matrix3d& projector() const { return projector_; }

 private:
  int ambient_;
  Eigen::Matrix<double, 3, Eigen::Dynamic> basis_;
  Eigen::Matrix3d projector_;
};

/// Open test region W: a ball, an axis-aligned box, or the whole space.
class Window {
 public:
  enum class Kind { All, Ball, Box };

  static Window all() { return Window(); }
  static Window ball(const Point& center, double radius);
  static Window box(const Point& lo, const Point& hi, int ambientDim);

  Kind kind() const { return kind_; }
  bool is_all() const { return kind_ == Kind::All; }
  const Point& center() const { return a_; }
  double radius() const { return radius_; }
  const Point& lo() const { return a_; }
  const Point& hi() const { return b_; }

  bool contains(const Point& p) const;
  /// True when the axis box [lo, hi] certainly misses the window.
  bool misses_box(const Point& lo, const Point& hi) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Window() = default;
  Kind kind_ = Kind::All;
  Point a_ = Point::Zero();
  Point b_ = Point::Zero();
  double radius_ = 0;
};

/// x -> L x + b from R^sourceDim to R^targetDim (unused rows/columns zero).
struct AffineMap {
  Eigen::Matrix3d L = Eigen::Matrix3d::Identity();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  int targetDim = 2;

  Point operator()(const Point& p) const;

  static AffineMap identity(int dim);
  /// eta_{x,lambda}(y) = (y - x) / lambda.
  static AffineMap dilation(const Point& x, double lambda, int dim);
  static AffineMap translation(const Point& t, int dim);
  /// y -> <u, y> as a map to R^1.
  static AffineMap linear_functional(const Point& u);
};

/// H^k measure of the simplex spanned by `verts` (k = verts.size() - 1):
/// 1 for a point, length, area or volume. Throws DegenerateCell.
double simplex_measure(std::span<const Point> verts);
double simplex_measure(const Simplex& s, std::span<const Point> positions);

/// Measure without the degeneracy check (0 for collapsed simplices).
double raw_simplex_measure(std::span<const Point> verts);

/// True when the simplex is below the scaled degeneracy threshold.
bool is_degenerate(std::span<const Point> verts);

double diameter(std::span<const Point> verts);

/// H^k(s ∩ w). Exact for points, segments and triangles; tetrahedra against a
/// ball or box use adaptive subdivision to relative error `tol`.
double clipped_measure(std::span<const Point> verts, const Window& w,
                       double tol = 1e-6);
double clipped_measure(const Simplex& s, std::span<const Point> positions,
                       const Window& w, double tol = 1e-6);

Plane tangent_plane(std::span<const Point> verts, int ambientDim);
Plane tangent_plane(const Simplex& s, std::span<const Point> positions,
                    int ambientDim);

/// Frobenius distance of orthogonal projectors. Throws DimensionError.
double grassmann_dist(const Plane& s, const Plane& t);

/// Area of the intersection of the disk |x - c| < r with the triangle abc
/// (planar coordinates).
double disk_triangle_area(const Eigen::Vector2d& center, double r,
                          const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          const Eigen::Vector2d& c);

}  // namespace gmt
