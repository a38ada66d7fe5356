#include "gmtkit/complex.hpp"

#include "gmtkit/errors.hpp"
#include "vertex_pool.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <set>

namespace gmt {

namespace {

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  }
  template <class T>
  void value(const T& v) {
    bytes(&v, sizeof v);
  }
};

std::vector<Point> gather(const Simplex& s, std::span<const Point> pos) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(pos[v]);
  return out;
}

}  // namespace

const CellComplex::Level& CellComplex::level(int k) const {
  static const Level empty;
  if (k < 0 || k >= static_cast<int>(levels_.size())) return empty;
  return levels_[k];
}

std::size_t CellComplex::num_cells(int k) const { return level(k).cells.size(); }

std::span<const Simplex> CellComplex::cells(int k) const { return level(k).cells; }

std::span<const Incidence> CellComplex::boundary(int k, CellId id) const {
  const Level& l = level(k);
  if (k <= 0 || l.cells.empty()) return {};
  return l.boundary.row(id);
}

std::span<const Incidence> CellComplex::coboundary(int k, CellId id) const {
  const Level& l = level(k);
  if (l.cells.empty() || l.coboundary.offset.size() <= 1) return {};
  return l.coboundary.row(id);
}

CellId CellComplex::find(int k, const Simplex& s) const {
  const Level& l = level(k);
  auto it = l.index.find(s.sorted());
  return it == l.index.end() ? -1 : it->second;
}

double CellComplex::diameter(int k, CellId id) const {
  const auto v = vertices(k, id);
  return gmt::diameter(v);
}

std::vector<Point> CellComplex::vertices(int k, CellId id) const {
  return gather(cell(k, id), positions_);
}

Point CellComplex::centroid(int k, CellId id) const {
  const Simplex& s = cell(k, id);
  Point c = Point::Zero();
  for (VertexId v : s) c += positions_[v];
  return c / static_cast<double>(s.size());
}

ComplexPtr CellComplex::build(int ambientDim, int chainDim, std::vector<Point> positions,
                              std::vector<Simplex> cells, std::vector<Simplex> fillCells,
                              double dedupTol) {
  if (ambientDim < 1 || ambientDim > kMaxAmbientDim)
    throw DimensionError("ambient dimension must be 1, 2 or 3");
  if (chainDim < 0 || chainDim > 2 || chainDim > ambientDim)
    throw DimensionError("chain dimension must be in [0, min(2, N)]");

  // Deduplicate positions; unused trailing coordinates are forced to zero.
  detail::VertexPool pool(dedupTol);
  std::vector<VertexId> remap(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Point p = positions[i];
    if (!p.allFinite()) throw InvalidInput("vertex " + std::to_string(i) + " is not finite");
    for (int d = ambientDim; d < 3; ++d) p[d] = 0;
    remap[i] = pool.insert(p);
  }

  auto c = std::shared_ptr<CellComplex>(new CellComplex());
  c->ambient_ = ambientDim;
  c->chainDim_ = chainDim;
  c->positions_ = pool.points();
  c->levels_.resize(chainDim + 2);

  auto intake = [&](std::vector<Simplex>& in, int k, const char* what) {
    Level& l = c->levels_[k];
    l.cells.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      Simplex s = in[i];
      if (s.dim() != k)
        throw DimensionError(std::string(what) + " " + std::to_string(i) + " has " +
                             std::to_string(s.size()) + " vertices, expected " +
                             std::to_string(k + 1));
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] < 0 || static_cast<std::size_t>(s[j]) >= remap.size())
          throw InvalidInput(std::string(what) + " " + std::to_string(i) +
                             " references a vertex out of range");
        s[j] = remap[s[j]];
      }
      const Simplex key = s.sorted();
      for (std::size_t j = 1; j < key.size(); ++j)
        if (key[j] == key[j - 1])
          throw DegenerateCell(std::string(what) + " " + std::to_string(i) +
                               " has coincident vertices");
      const auto verts = gather(s, c->positions_);
      if (is_degenerate(verts))
        throw DegenerateCell(std::string(what) + " " + std::to_string(i) + " is degenerate");
      if (!l.index.emplace(key, static_cast<CellId>(l.cells.size())).second)
        throw DuplicateCell(std::string(what) + " " + std::to_string(i) + " is a duplicate");
      l.cells.push_back(s);
    }
  };
  intake(cells, chainDim, "cell");
  intake(fillCells, chainDim + 1, "fill cell");

  // Every face of a fill cell must be an m-cell.
  {
    const Level& fills = c->levels_[chainDim + 1];
    const Level& ms = c->levels_[chainDim];
    for (std::size_t i = 0; i < fills.cells.size(); ++i) {
      const Simplex key = fills.cells[i].sorted();
      for (std::size_t j = 0; j < key.size(); ++j)
        if (!ms.index.count(key.face(j)))
          throw MissingFace("fill cell " + std::to_string(i) +
                            " has a face that is not a cell of the complex");
    }
  }

  // Derived lower levels in canonical order.
  for (int k = chainDim - 1; k >= 0; --k) {
    std::set<Simplex> faces;
    for (const Simplex& s : c->levels_[k + 1].cells) {
      const Simplex key = s.sorted();
      for (std::size_t j = 0; j < key.size(); ++j) faces.insert(key.face(j));
    }
    Level& l = c->levels_[k];
    l.cells.assign(faces.begin(), faces.end());
    for (std::size_t i = 0; i < l.cells.size(); ++i)
      l.index.emplace(l.cells[i], static_cast<CellId>(i));
  }

  // Boundary operators: coefficient of sorted face i of stored cell c is
  // sign(c) * (-1)^i * sign(stored face).
  for (int k = 1; k <= chainDim + 1; ++k) {
    Level& l = c->levels_[k];
    const Level& lower = c->levels_[k - 1];
    l.boundary.offset.assign(1, 0);
    for (const Simplex& s : l.cells) {
      const Simplex key = s.sorted();
      const int sc = s.orientation_sign();
      for (std::size_t i = 0; i < key.size(); ++i) {
        const Simplex f = key.face(i);
        const CellId fid = lower.index.at(f);
        const int sf = lower.cells[fid].orientation_sign();
        l.boundary.items.push_back({fid, sc * (i % 2 == 0 ? 1 : -1) * sf});
      }
      l.boundary.offset.push_back(l.boundary.items.size());
    }
  }
  for (int k = 0; k <= chainDim; ++k) {
    Level& l = c->levels_[k];
    const Level& upper = c->levels_[k + 1];
    std::vector<std::vector<Incidence>> rows(l.cells.size());
    for (std::size_t u = 0; u < upper.cells.size(); ++u)
      for (const Incidence& inc : upper.boundary.row(static_cast<CellId>(u)))
        rows[inc.cell].push_back({static_cast<CellId>(u), inc.sign});
    l.coboundary.offset.assign(1, 0);
    for (auto& r : rows) {
      l.coboundary.items.insert(l.coboundary.items.end(), r.begin(), r.end());
      l.coboundary.offset.push_back(l.coboundary.items.size());
    }
  }

  for (auto& l : c->levels_) {
    l.measure.reserve(l.cells.size());
    for (const Simplex& s : l.cells)
      l.measure.push_back(raw_simplex_measure(gather(s, c->positions_)));
  }

  Fnv h;
  h.value(ambientDim);
  h.value(chainDim);
  for (const Point& p : c->positions_)
    for (int d = 0; d < 3; ++d) h.value(p[d]);
  for (int k : {chainDim, chainDim + 1}) {
    h.value(k);
    for (const Simplex& s : c->levels_[k].cells)
      for (VertexId v : s) h.value(v);
  }
  c->id_ = hex64(h.h);
  return c;
}

// ---------------------------------------------------------------------------
// Arrangements

namespace {

struct Bbox {
  Point lo, hi;
};

Bbox bbox_of(const std::vector<Point>& v, double pad) {
  Bbox b{v[0], v[0]};
  for (const Point& p : v) {
    b.lo = b.lo.cwiseMin(p);
    b.hi = b.hi.cwiseMax(p);
  }
  b.lo.array() -= pad;
  b.hi.array() += pad;
  return b;
}

bool boxes_overlap(const Bbox& a, const Bbox& b) {
  return (a.lo.array() <= b.hi.array()).all() && (b.lo.array() <= a.hi.array()).all();
}

double scene_scale(const std::vector<std::vector<Point>>& cells) {
  double s = 1.0;
  for (const auto& c : cells)
    for (const Point& p : c) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

Arrangement finish(int ambientDim, int chainDim, const detail::VertexPool& pool,
                   std::vector<Simplex> out, std::vector<std::vector<ParentRef>> parents) {
  Arrangement a;
  a.complex = CellComplex::build(ambientDim, chainDim, pool.points(), std::move(out), {}, 0.0);
  a.parents = std::move(parents);
  return a;
}

Arrangement arrange_points(int ambientDim, const std::vector<std::vector<Point>>& cells) {
  detail::VertexPool pool(kDedupTol);
  std::vector<Simplex> out;
  std::vector<std::vector<ParentRef>> parents;
  std::unordered_map<VertexId, CellId> seen;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const VertexId v = pool.insert(cells[i][0]);
    auto [it, fresh] = seen.emplace(v, static_cast<CellId>(out.size()));
    if (fresh) {
      out.push_back(Simplex{v});
      parents.emplace_back();
    }
    parents[it->second].push_back({static_cast<CellId>(i), 1});
  }
  return finish(ambientDim, 0, pool, std::move(out), std::move(parents));
}

Arrangement arrange_segments(int ambientDim, const std::vector<std::vector<Point>>& cells,
                             double tol) {
  const double scale = scene_scale(cells);
  const double eps = tol * scale;            // parallelism / incidence tolerance
  const double near = std::max(eps, 1e-10 * scale);  // point-on-segment distance

  const std::size_t n = cells.size();
  std::vector<char> live(n, 0);
  std::vector<std::vector<double>> params(n);
  std::vector<Bbox> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_degenerate(cells[i])) continue;
    live[i] = 1;
    params[i] = {0.0, 1.0};
    boxes[i] = bbox_of(cells[i], near);
  }

  // Sweep over x-sorted boxes for candidate pairs.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (live[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].lo.x() < boxes[b].lo.x() || (boxes[a].lo.x() == boxes[b].lo.x() && a < b);
  });

  auto param_on = [](const Point& x, const Point& p, const Point& r) {
    return (x - p).dot(r) / r.squaredNorm();
  };
  auto dist_to_line = [](const Point& x, const Point& p, const Point& r) {
    const Point d = x - p;
    return (d - d.dot(r) / r.squaredNorm() * r).norm();
  };

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    const Point& p = cells[i][0];
    const Point r = cells[i][1] - p;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (boxes[j].lo.x() > boxes[i].hi.x()) break;
      if (!boxes_overlap(boxes[i], boxes[j])) continue;
      const Point& q = cells[j][0];
      const Point s = cells[j][1] - q;
      const double crossNorm = r.cross(s).norm();
      if (crossNorm <= 1e-12 * r.norm() * s.norm()) {
        // Parallel: only collinear overlaps matter.
        if (dist_to_line(q, p, r) > near && dist_to_line(cells[j][1], p, r) > near) continue;
        for (const Point& x : cells[j]) {
          const double t = param_on(x, p, r);
          if (t > 0 && t < 1 && dist_to_line(x, p, r) <= near) params[i].push_back(t);
        }
        for (const Point& x : cells[i]) {
          const double u = param_on(x, q, s);
          if (u > 0 && u < 1 && dist_to_line(x, q, s) <= near) params[j].push_back(u);
        }
        continue;
      }
      const Point w = p - q;
      const double a = r.dot(r), b = r.dot(s), c = s.dot(s), d = r.dot(w), e = s.dot(w);
      const double den = r.cross(s).squaredNorm();
      const double t = (b * e - c * d) / den;
      const double u = (a * e - b * d) / den;
      if (!std::isfinite(t) || !std::isfinite(u)) continue;
      const double slackT = near / std::sqrt(a), slackU = near / std::sqrt(c);
      if (t < -slackT || t > 1 + slackT || u < -slackU || u > 1 + slackU) continue;
      const Point xi = p + std::clamp(t, 0.0, 1.0) * r;
      const Point xj = q + std::clamp(u, 0.0, 1.0) * s;
      if ((xi - xj).norm() > near) continue;
      params[i].push_back(std::clamp(t, 0.0, 1.0));
      params[j].push_back(std::clamp(u, 0.0, 1.0));
    }
  }

  detail::VertexPool pool(kDedupTol);
  std::vector<Simplex> out;
  std::vector<std::vector<ParentRef>> parents;
  std::unordered_map<Simplex, CellId, SimplexHash> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!live[i]) continue;
    auto& ts = params[i];
    std::sort(ts.begin(), ts.end());
    const Point& p = cells[i][0];
    const Point r = cells[i][1] - p;
    std::vector<VertexId> chain;
    for (double t : ts) {
      const Point x = t == 0 ? p : (t == 1 ? Point(cells[i][1]) : Point(p + t * r));
      const VertexId v = pool.insert(x);
      if (chain.empty() || chain.back() != v) chain.push_back(v);
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const Simplex piece{chain[k], chain[k + 1]};
      const Simplex key = piece.sorted();
      auto it = seen.find(key);
      if (it == seen.end()) {
        it = seen.emplace(key, static_cast<CellId>(out.size())).first;
        out.push_back(piece);
        parents.emplace_back();
      }
      const Simplex& stored = out[it->second];
      parents[it->second].push_back({static_cast<CellId>(i), stored == piece ? 1 : -1});
    }
  }
  return finish(ambientDim, 1, pool, std::move(out), std::move(parents));
}

// Orientation of triangle b relative to triangle a (both nondegenerate and
// coplanar).
int relative_orientation(const std::vector<Point>& a, const std::vector<Point>& b) {
  const Point na = (a[1] - a[0]).cross(a[2] - a[0]);
  const Point nb = (b[1] - b[0]).cross(b[2] - b[0]);
  return na.dot(nb) >= 0 ? 1 : -1;
}

bool coplanar_interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b,
                                double eps) {
  Point n = (a[1] - a[0]).cross(a[2] - a[0]);
  const double nn = n.norm();
  n /= nn;
  for (const Point& p : b)
    if (std::abs(n.dot(p - a[0])) > eps) return false;  // transversal or apart
  const Point u = (a[1] - a[0]).normalized();
  const Point v = n.cross(u);
  auto proj = [&](const std::vector<Point>& t) {
    std::array<Eigen::Vector2d, 3> q;
    for (int i = 0; i < 3; ++i) q[i] = {(t[i] - a[0]).dot(u), (t[i] - a[0]).dot(v)};
    return q;
  };
  const auto pa = proj(a), pb = proj(b);
  auto separated = [&](const std::array<Eigen::Vector2d, 3>& t) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d e = t[(i + 1) % 3] - t[i];
      const Eigen::Vector2d axis(-e.y(), e.x());
      double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
      for (const auto& p : pa) {
        lo1 = std::min(lo1, axis.dot(p));
        hi1 = std::max(hi1, axis.dot(p));
      }
      for (const auto& p : pb) {
        lo2 = std::min(lo2, axis.dot(p));
        hi2 = std::max(hi2, axis.dot(p));
      }
      const double slack = eps * axis.norm();
      if (hi1 <= lo2 + slack || hi2 <= lo1 + slack) return true;
    }
    return false;
  };
  return !separated(pa) && !separated(pb);
}

Arrangement arrange_triangles(int ambientDim, const std::vector<std::vector<Point>>& cells,
                              double tol) {
  const double eps = std::max(tol, 1e-10) * scene_scale(cells);
  detail::VertexPool pool(kDedupTol);
  std::vector<Simplex> out;
  std::vector<std::vector<Point>> geometry;
  std::vector<std::vector<ParentRef>> parents;
  std::unordered_map<Simplex, CellId, SimplexHash> seen;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (is_degenerate(cells[i])) continue;
    const Simplex tri{pool.insert(cells[i][0]), pool.insert(cells[i][1]),
                      pool.insert(cells[i][2])};
    const Simplex key = tri.sorted();
    if (key[0] == key[1] || key[1] == key[2]) continue;
    auto it = seen.find(key);
    if (it == seen.end()) {
      it = seen.emplace(key, static_cast<CellId>(out.size())).first;
      out.push_back(tri);
      geometry.push_back(cells[i]);
      parents.emplace_back();
    }
    parents[it->second].push_back(
        {static_cast<CellId>(i), relative_orientation(cells[i], geometry[it->second])});
  }
  std::vector<Bbox> boxes;
  for (const auto& g : geometry) boxes.push_back(bbox_of(g, eps));
  for (std::size_t i = 0; i < geometry.size(); ++i)
    for (std::size_t j = i + 1; j < geometry.size(); ++j)
      if (boxes_overlap(boxes[i], boxes[j]) &&
          coplanar_interiors_overlap(geometry[i], geometry[j], eps))
        throw RefinementUnsupported(
            "triangles overlap partially; only identical or disjoint triangles are supported");
  return finish(ambientDim, 2, pool, std::move(out), std::move(parents));
}

}  // namespace

Arrangement arrange(int ambientDim, int chainDim, const std::vector<std::vector<Point>>& cells,
                    double tol) {
  for (const auto& c : cells)
    if (static_cast<int>(c.size()) != chainDim + 1)
      throw DimensionError("arrange: cell size does not match chain dimension");
  switch (chainDim) {
    case 0:
      return arrange_points(ambientDim, cells);
    case 1:
      return arrange_segments(ambientDim, cells, tol);
    case 2:
      return arrange_triangles(ambientDim, cells, tol);
    default:
      throw DimensionError("arrange: chain dimension out of range");
  }
}

CommonRefinement common_refinement(const CellComplex& a, const CellComplex& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.chain_dim() != b.chain_dim())
    throw DimensionError("common_refinement needs complexes of equal dimensions");
  const int m = a.chain_dim();
  std::vector<std::vector<Point>> soup;
  for (std::size_t i = 0; i < a.num_cells(m); ++i)
    soup.push_back(a.vertices(m, static_cast<CellId>(i)));
  for (std::size_t i = 0; i < b.num_cells(m); ++i)
    soup.push_back(b.vertices(m, static_cast<CellId>(i)));
  Arrangement arr = arrange(a.ambient_dim(), m, soup, tol);
  const auto na = static_cast<CellId>(a.num_cells(m));
  CommonRefinement r;
  r.complex = arr.complex;
  r.fromA = {a.id(), arr.complex->id(), {}};
  r.fromB = {b.id(), arr.complex->id(), {}};
  r.fromA.parents.resize(arr.parents.size());
  r.fromB.parents.resize(arr.parents.size());
  for (std::size_t c = 0; c < arr.parents.size(); ++c)
    for (const ParentRef& p : arr.parents[c]) {
      if (p.cell < na)
        r.fromA.parents[c].push_back(p);
      else
        r.fromB.parents[c].push_back({p.cell - na, p.sign});
    }
  return r;
}

// ---------------------------------------------------------------------------
// Subdivision

Subdivision subdivide_cells(const ComplexPtr& c, std::span<const CellId> which, double maxDiam) {
  if (!(maxDiam > 0)) throw InvalidInput("subdivide: maxDiam must be positive");
  const int m = c->chain_dim();
  const auto pos = c->positions();
  std::vector<Point> positions(pos.begin(), pos.end());
  std::vector<Simplex> cells;
  std::vector<std::vector<ParentRef>> parents;
  auto add_point = [&](const Point& p) {
    positions.push_back(p);
    return static_cast<VertexId>(positions.size() - 1);
  };
  for (CellId id : which) {
    const Simplex& s = c->cell(m, id);
    const double diam = c->diameter(m, id);
    const int k = m == 0 ? 1 : std::max(1, static_cast<int>(std::ceil(diam / maxDiam - 1e-12)));
    if (k == 1) {
      cells.push_back(s);
      parents.push_back({{id, 1}});
      continue;
    }
    if (m == 1) {
      const Point a = pos[s[0]], b = pos[s[1]];
      VertexId prev = s[0];
      for (int i = 1; i <= k; ++i) {
        const VertexId next = i == k ? s[1] : add_point(a + (b - a) * (double(i) / k));
        cells.push_back(Simplex{prev, next});
        parents.push_back({{id, 1}});
        prev = next;
      }
    } else {
      const Point o = pos[s[0]], e1 = pos[s[1]] - o, e2 = pos[s[2]] - o;
      std::vector<std::vector<VertexId>> grid(k + 1);
      for (int i = 0; i <= k; ++i) {
        grid[i].resize(k + 1 - i);
        for (int j = 0; i + j <= k; ++j) {
          if (i == 0 && j == 0)
            grid[i][j] = s[0];
          else if (i == k && j == 0)
            grid[i][j] = s[1];
          else if (i == 0 && j == k)
            grid[i][j] = s[2];
          else
            grid[i][j] = add_point(o + e1 * (double(i) / k) + e2 * (double(j) / k));
        }
      }
      for (int i = 0; i < k; ++i)
        for (int j = 0; i + j < k; ++j) {
          cells.push_back(Simplex{grid[i][j], grid[i + 1][j], grid[i][j + 1]});
          parents.push_back({{id, 1}});
          if (i + j <= k - 2) {
            cells.push_back(Simplex{grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
            parents.push_back({{id, 1}});
          }
        }
    }
  }
  Subdivision out;
  out.complex = CellComplex::build(c->ambient_dim(), m, std::move(positions), std::move(cells));
  out.map = {c->id(), out.complex->id(), std::move(parents)};
  return out;
}

Subdivision subdivide(const ComplexPtr& c, double maxDiam) {
  if (!(maxDiam > 0)) throw InvalidInput("subdivide: maxDiam must be positive");
  const int m = c->chain_dim();
  bool fine = true;
  for (std::size_t i = 0; i < c->num_cells(m) && fine; ++i)
    fine = m == 0 || c->diameter(m, static_cast<CellId>(i)) <= maxDiam * (1 + 1e-12);
  if (fine) {
    Subdivision same;
    same.complex = c;
    same.map = {c->id(), c->id(), {}};
    for (std::size_t i = 0; i < c->num_cells(m); ++i)
      same.map.parents.push_back({{static_cast<CellId>(i), 1}});
    return same;
  }
  std::vector<CellId> all(c->num_cells(m));
  std::iota(all.begin(), all.end(), 0);
  return subdivide_cells(c, all, maxDiam);
}

ComplexPtr fill_complex(int ambientDim, std::vector<Point> positions, std::vector<Simplex> fills,
                        std::vector<Simplex> extra) {
  if (fills.empty()) throw InvalidInput("fill_complex needs at least one fill cell");
  std::set<Simplex> faces;
  for (const Simplex& f : fills) {
    const Simplex key = f.sorted();
    for (std::size_t j = 0; j < key.size(); ++j) faces.insert(key.face(j));
  }
  for (const Simplex& e : extra) faces.insert(e.sorted());
  const int m = fills.front().dim() - 1;
  return CellComplex::build(ambientDim, m, std::move(positions), {faces.begin(), faces.end()},
                            std::move(fills), 0.0);
}

}  // namespace gmt
