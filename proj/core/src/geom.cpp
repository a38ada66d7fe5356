#include "gmtkit/geom.hpp"

#include "gmtkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gmt {

Simplex::Simplex(std::initializer_list<VertexId> ids)
    : Simplex(std::span<const VertexId>(ids.begin(), ids.size())) {}

Simplex::Simplex(std::span<const VertexId> ids) {
  if (ids.empty() || ids.size() > v_.size())
    throw DimensionError("simplex must have between 1 and 4 vertices, got " +
                         std::to_string(ids.size()));
  size_ = static_cast<std::uint8_t>(ids.size());
  std::copy(ids.begin(), ids.end(), v_.begin());
}

Simplex Simplex::sorted() const {
  Simplex s = *this;
  std::sort(s.v_.begin(), s.v_.begin() + size_);
  return s;
}

int Simplex::orientation_sign() const {
  int inversions = 0;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j)
      if (v_[i] > v_[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Simplex Simplex::face(std::size_t i) const {
  Simplex f;
  f.size_ = static_cast<std::uint8_t>(size_ - 1);
  std::size_t k = 0;
  for (std::size_t j = 0; j < size_; ++j)
    if (j != i) f.v_[k++] = v_[j];
  return f;
}

bool operator<(const Simplex& a, const Simplex& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (VertexId v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ s.size();
}

// ---------------------------------------------------------------------------

Point AffineMap::operator()(const Point& p) const {
  Point q = L * p + b;
  for (int d = targetDim; d < 3; ++d) q[d] = 0;
  return q;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap m;
  m.targetDim = dim;
  return m;
}

AffineMap AffineMap::dilation(const Point& x, double lambda, int dim) {
  if (!(lambda > 0)) throw InvalidInput("dilation factor must be positive");
  AffineMap m;
  m.L = Eigen::Matrix3d::Identity() / lambda;
  m.b = -x / lambda;
  m.targetDim = dim;
  return m;
}

AffineMap AffineMap::translation(const Point& t, int dim) {
  AffineMap m;
  m.b = t;
  m.targetDim = dim;
  return m;
}

AffineMap AffineMap::linear_functional(const Point& u) {
  AffineMap m;
  m.L.setZero();
  m.L.row(0) = u.transpose();
  m.targetDim = 1;
  return m;
}

// ---------------------------------------------------------------------------

Plane::Plane(int ambientDim,
             const Eigen::Matrix<double, 3, Eigen::Dynamic>& spanning)
    : ambient_(ambientDim) {
  if (ambientDim < 1 || ambientDim > kMaxAmbientDim)
    throw DimensionError("ambient dimension must be 1, 2 or 3");
  if (spanning.cols() > ambientDim)
    throw DimensionError("plane dimension exceeds ambient dimension");
  basis_.resize(3, spanning.cols());
  // Modified Gram-Schmidt, twice for stability.
  for (Eigen::Index j = 0; j < spanning.cols(); ++j) {
    Eigen::Vector3d v = spanning.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) v -= basis_.col(i).dot(v) * basis_.col(i);
    const double n = v.norm();
    if (!(n > 0)) throw DegenerateCell("plane spanning vectors are dependent");
    basis_.col(j) = v / n;
  }
  projector_ = basis_ * basis_.transpose();
}

// ---------------------------------------------------------------------------

Window Window::ball(const Point& center, double radius) {
  if (!(radius > 0) || !std::isfinite(radius))
    throw InvalidInput("ball window radius must be positive");
  if (!center.allFinite()) throw InvalidInput("ball window center must be finite");
  Window w;
  w.kind_ = Kind::Ball;
  w.a_ = center;
  w.radius_ = radius;
  return w;
}

Window Window::box(const Point& lo, const Point& hi, int ambientDim) {
  if (!lo.allFinite() || !hi.allFinite())
    throw InvalidInput("box window corners must be finite");
  Window w;
  w.kind_ = Kind::Box;
  w.a_ = lo;
  w.b_ = hi;
  for (int i = 0; i < ambientDim; ++i)
    if (!(lo[i] < hi[i])) throw InvalidInput("box window needs lo < hi componentwise");
  // Unused coordinates are zero for every point; make the box transparent there.
  for (int i = ambientDim; i < 3; ++i) {
    w.a_[i] = -1;
    w.b_[i] = 1;
  }
  return w;
}

bool Window::contains(const Point& p) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Ball:
      return (p - a_).squaredNorm() < radius_ * radius_;
    case Kind::Box:
      return (p.array() > a_.array()).all() && (p.array() < b_.array()).all();
  }
  return false;
}

bool Window::misses_box(const Point& lo, const Point& hi) const {
  switch (kind_) {
    case Kind::All:
      return false;
    case Kind::Ball: {
      const Point nearest = a_.cwiseMax(lo).cwiseMin(hi);
      return (nearest - a_).squaredNorm() >= radius_ * radius_;
    }
    case Kind::Box:
      return (hi.array() <= a_.array()).any() || (lo.array() >= b_.array()).any();
  }
  return false;
}

// ---------------------------------------------------------------------------

double raw_simplex_measure(std::span<const Point> verts) {
  switch (verts.size()) {
    case 1:
      return 1.0;
    case 2:
      return (verts[1] - verts[0]).norm();
    case 3:
      return 0.5 * (verts[1] - verts[0]).cross(verts[2] - verts[0]).norm();
    case 4:
      return std::abs((verts[1] - verts[0])
                          .dot((verts[2] - verts[0]).cross(verts[3] - verts[0]))) /
             6.0;
    default:
      throw DimensionError("simplex dimension out of range");
  }
}

double diameter(std::span<const Point> verts) {
  double d = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      d = std::max(d, (verts[i] - verts[j]).norm());
  return d;
}

bool is_degenerate(std::span<const Point> verts) {
  if (verts.size() <= 1) return false;
  const double k = static_cast<double>(verts.size() - 1);
  const double scale = diameter(verts);
  const double mu = raw_simplex_measure(verts);
  return !(mu > kDegeneracyTol * std::pow(scale, k)) || !(scale > 0);
}

double simplex_measure(std::span<const Point> verts) {
  for (const auto& p : verts)
    if (!p.allFinite()) throw InvalidInput("non-finite vertex coordinate");
  if (is_degenerate(verts))
    throw DegenerateCell("degenerate " + std::to_string(verts.size() - 1) +
                         "-simplex");
  return raw_simplex_measure(verts);
}

namespace {

std::array<Point, 4> gather(const Simplex& s, std::span<const Point> positions) {
  std::array<Point, 4> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= positions.size())
      throw InvalidInput("vertex id out of range");
    out[i] = positions[s[i]];
  }
  return out;
}

// Parameter interval [t0, t1] of a + t (b - a) inside the open window.
std::pair<double, double> segment_window_interval(const Point& a, const Point& b,
                                                  const Window& w) {
  const Point d = b - a;
  double t0 = 0, t1 = 1;
  if (w.kind() == Window::Kind::Ball) {
    const Point f = a - w.center();
    const double A = d.squaredNorm();
    const double B = 2 * f.dot(d);
    const double C = f.squaredNorm() - w.radius() * w.radius();
    const double disc = B * B - 4 * A * C;
    if (disc <= 0) return {1, 0};
    const double sq = std::sqrt(disc);
    // Numerically stable roots.
    const double q = -0.5 * (B + std::copysign(sq, B));
    double r0 = q / A, r1 = C / q;
    if (q == 0) r0 = r1 = -B / (2 * A);
    if (r0 > r1) std::swap(r0, r1);
    t0 = std::max(t0, r0);
    t1 = std::min(t1, r1);
  } else if (w.kind() == Window::Kind::Box) {
    for (int i = 0; i < 3; ++i) {
      if (d[i] == 0) {
        if (!(a[i] > w.lo()[i] && a[i] < w.hi()[i])) return {1, 0};
        continue;
      }
      double s0 = (w.lo()[i] - a[i]) / d[i];
      double s1 = (w.hi()[i] - a[i]) / d[i];
      if (s0 > s1) std::swap(s0, s1);
      t0 = std::max(t0, s0);
      t1 = std::min(t1, s1);
    }
  }
  return {t0, t1};
}

double polygon_area_3d(const std::vector<Point>& poly) {
  if (poly.size() < 3) return 0;
  Point acc = Point::Zero();
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    acc += (poly[i] - poly[0]).cross(poly[i + 1] - poly[0]);
  return 0.5 * acc.norm();
}

// Sutherland-Hodgman against the six faces of an axis box.
double triangle_box_area(const std::array<Point, 4>& v, const Window& w) {
  std::vector<Point> poly{v[0], v[1], v[2]};
  for (int axis = 0; axis < 3 && !poly.empty(); ++axis) {
    for (int side = 0; side < 2 && !poly.empty(); ++side) {
      const double bound = side == 0 ? w.lo()[axis] : w.hi()[axis];
      auto inside = [&](const Point& p) {
        return side == 0 ? p[axis] >= bound : p[axis] <= bound;
      };
      std::vector<Point> out;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % poly.size()];
        const bool ci = inside(cur), ni = inside(nxt);
        if (ci) out.push_back(cur);
        if (ci != ni) {
          const double t = (bound - cur[axis]) / (nxt[axis] - cur[axis]);
          Point x = cur + t * (nxt - cur);
          x[axis] = bound;
          out.push_back(x);
        }
      }
      poly = std::move(out);
    }
  }
  return polygon_area_3d(poly);
}

double triangle_ball_area(const std::array<Point, 4>& v, const Window& w) {
  const Point e1 = v[1] - v[0];
  const Point e2 = v[2] - v[0];
  Point n = e1.cross(e2);
  const double nn = n.norm();
  if (!(nn > 0)) return 0;
  n /= nn;
  const double dist = n.dot(w.center() - v[0]);
  const double r2 = w.radius() * w.radius() - dist * dist;
  if (r2 <= 0) return 0;
  const Point u = e1.normalized();
  const Point t = n.cross(u);
  auto to2 = [&](const Point& p) {
    const Point q = p - v[0];
    return Eigen::Vector2d(q.dot(u), q.dot(t));
  };
  const Point c3 = w.center() - dist * n;
  return disk_triangle_area(to2(c3), std::sqrt(r2), to2(v[0]), to2(v[1]), to2(v[2]));
}

double tetra_clipped(const std::array<Point, 4>& v, const Window& w, double absTol,
                     int depth) {
  Point lo = v[0], hi = v[0];
  for (int i = 1; i < 4; ++i) {
    lo = lo.cwiseMin(v[i]);
    hi = hi.cwiseMax(v[i]);
  }
  if (w.misses_box(lo, hi)) return 0;
  const double vol = raw_simplex_measure(std::span<const Point>(v.data(), 4));
  bool allIn = true;
  for (int i = 0; i < 4; ++i) allIn = allIn && w.contains(v[i]);
  if (allIn) return vol;  // ball and box are convex
  if (vol <= absTol || depth > 12) {
    const Point c = (v[0] + v[1] + v[2] + v[3]) / 4.0;
    return w.contains(c) ? vol : 0;
  }
  // Split along the longest edge.
  int bi = 0, bj = 1;
  double best = -1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double l = (v[i] - v[j]).squaredNorm();
      if (l > best) {
        best = l;
        bi = i;
        bj = j;
      }
    }
  const Point mid = 0.5 * (v[bi] + v[bj]);
  std::array<Point, 4> a = v, b = v;
  a[bj] = mid;
  b[bi] = mid;
  return tetra_clipped(a, w, absTol / 2, depth + 1) +
         tetra_clipped(b, w, absTol / 2, depth + 1);
}

// Signed area of disk(0, r) ∩ triangle(0, a, b).
double disk_wedge_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double r) {
  auto cross = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
    return p.x() * q.y() - p.y() * q.x();
  };
  auto sector = [&](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
    return 0.5 * r * r * std::atan2(cross(p, q), p.dot(q));
  };
  const Eigen::Vector2d d = b - a;
  const double A = d.squaredNorm();
  if (A == 0) return 0;
  const double B = a.dot(d);
  const double C = a.squaredNorm() - r * r;
  const double disc = B * B - A * C;
  if (disc <= 0) return sector(a, b);
  const double sq = std::sqrt(disc);
  const double t0 = std::clamp((-B - sq) / A, 0.0, 1.0);
  const double t1 = std::clamp((-B + sq) / A, 0.0, 1.0);
  const Eigen::Vector2d p0 = a + t0 * d;
  const Eigen::Vector2d p1 = a + t1 * d;
  return sector(a, p0) + 0.5 * cross(p0, p1) + sector(p1, b);
}

}  // namespace

double disk_triangle_area(const Eigen::Vector2d& center, double r,
                          const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          const Eigen::Vector2d& c) {
  const Eigen::Vector2d pa = a - center, pb = b - center, pc = c - center;
  const double s =
      disk_wedge_area(pa, pb, r) + disk_wedge_area(pb, pc, r) + disk_wedge_area(pc, pa, r);
  return std::abs(s);
}

double clipped_measure(std::span<const Point> verts, const Window& w, double tol) {
  if (!(tol > 0)) throw InvalidInput("clipped_measure tolerance must be positive");
  const std::size_t n = verts.size();
  if (w.is_all()) return raw_simplex_measure(verts);
  std::array<Point, 4> v;
  std::copy(verts.begin(), verts.end(), v.begin());
  switch (n) {
    case 1:
      return w.contains(v[0]) ? 1.0 : 0.0;
    case 2: {
      const auto [t0, t1] = segment_window_interval(v[0], v[1], w);
      return t1 > t0 ? (t1 - t0) * (v[1] - v[0]).norm() : 0.0;
    }
    case 3:
      return w.kind() == Window::Kind::Box ? triangle_box_area(v, w)
                                           : triangle_ball_area(v, w);
    case 4: {
      const double vol = raw_simplex_measure(verts);
      return tetra_clipped(v, w, tol * vol, 0);
    }
    default:
      throw DimensionError("simplex dimension out of range");
  }
}

double simplex_measure(const Simplex& s, std::span<const Point> positions) {
  const auto v = gather(s, positions);
  return simplex_measure(std::span<const Point>(v.data(), s.size()));
}

double clipped_measure(const Simplex& s, std::span<const Point> positions,
                       const Window& w, double tol) {
  const auto v = gather(s, positions);
  return clipped_measure(std::span<const Point>(v.data(), s.size()), w, tol);
}

Plane tangent_plane(std::span<const Point> verts, int ambientDim) {
  if (verts.size() < 2) throw DimensionError("a point has no tangent plane");
  if (is_degenerate(verts)) throw DegenerateCell("degenerate simplex has no tangent plane");
  Eigen::Matrix<double, 3, Eigen::Dynamic> span(3, verts.size() - 1);
  for (std::size_t i = 1; i < verts.size(); ++i) span.col(i - 1) = verts[i] - verts[0];
  return Plane(ambientDim, span);
}

Plane tangent_plane(const Simplex& s, std::span<const Point> positions, int ambientDim) {
  const auto v = gather(s, positions);
  return tangent_plane(std::span<const Point>(v.data(), s.size()), ambientDim);
}

double grassmann_dist(const Plane& s, const Plane& t) {
  if (s.ambient_dim() != t.ambient_dim() || s.dim() != t.dim())
    throw DimensionError("grassmann_dist needs planes of equal dimension in the same space");
  return (s.projector() - t.projector()).norm();
}

}  // namespace gmt
