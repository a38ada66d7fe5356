#include "gmtkit/families.hpp"

#include "gmtkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace gmt {

namespace {

using Segment = std::pair<Point, Point>;

VertexId vertex_at(const CellComplex& c, const Point& p) {
  const auto pos = c.positions();
  for (std::size_t i = 0; i < pos.size(); ++i)
    if ((pos[i] - p).norm() <= 1e-12) return static_cast<VertexId>(i);
  throw InvalidInput("generator point is not a vertex of its fill complex");
}

CellId edge_of(const CellComplex& c, const Segment& s, int& sign) {
  const VertexId a = vertex_at(c, s.first), b = vertex_at(c, s.second);
  const CellId id = c.find(1, {a, b});
  if (id < 0) throw InvalidInput("generator segment is not an edge of its fill complex");
  const Simplex& stored = c.cell(1, id);
  sign = stored[0] == a ? 1 : -1;
  return id;
}

IntegralVarifold varifold_on(const ComplexPtr& c, const std::vector<Segment>& segs, long mult = 1) {
  std::vector<Term> t;
  for (const Segment& s : segs) {
    int sign = 1;
    t.push_back({edge_of(*c, s, sign), mult});
  }
  return IntegralVarifold(c, std::move(t));
}

IntChain current_on(const ComplexPtr& c, const std::vector<Segment>& segs, const std::vector<long>& coeff) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    int sign = 1;
    const CellId id = edge_of(*c, segs[i], sign);
    t.push_back({id, sign * coeff[i]});
  }
  return IntChain(c, 1, std::move(t));
}

std::vector<Segment> closed_loop(const std::vector<Point>& p) {
  std::vector<Segment> s;
  for (std::size_t i = 0; i < p.size(); ++i) s.push_back({p[i], p[(i + 1) % p.size()]});
  return s;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(a + (b - a) * i / n);
  return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> r(static_cast<std::size_t>(hi - lo + 1));
  std::iota(r.begin(), r.end(), lo);
  return r;
}

Point xy(double x, double y) { return Point(x, y, 0); }

void require_index(int i, const char* what) {
  if (i < 1) throw InvalidInput(std::string(what) + ": index must be >= 1");
}

// ---- S_n and Q_n ----

std::vector<Segment> odd_intervals(int n, double y) {
  std::vector<Segment> s;
  for (int k = 1; k < 2 * n; k += 2) s.push_back({xy(k / (2.0 * n), y), xy((k + 1) / (2.0 * n), y)});
  return s;
}

ComplexPtr sn_fill(std::span<const int> ns) {
  std::vector<double> xs, ys{0};
  for (int n : ns) {
    require_index(n, "Sn");
    const auto l = linspace(0, 1, 2 * n);
    xs.insert(xs.end(), l.begin(), l.end());
    ys.push_back(1.0 / (2 * n));
  }
  return grid_fill(xs, ys);
}

ComplexPtr qn_fill(std::span<const int> ns) {
  std::vector<double> xs, ys{0};
  for (int n : ns) {
    require_index(n, "Qn");
    const auto l = linspace(0, 1, 2 * n);
    xs.insert(xs.end(), l.begin(), l.end());
    ys.push_back(1.0 / (static_cast<double>(n) * n));
  }
  return grid_fill(xs, ys);
}

std::vector<Segment> qn_loops(int n) {
  const double h = 1.0 / (static_cast<double>(n) * n);
  std::vector<Segment> s;
  for (int k = 1; k < 2 * n; k += 2) {
    const double a = k / (2.0 * n), b = (k + 1) / (2.0 * n);
    const auto loop = closed_loop({xy(a, 0), xy(b, 0), xy(b, h), xy(a, h)});
    s.insert(s.end(), loop.begin(), loop.end());
  }
  return s;
}

// ---- comb ----

struct Comb {
  std::vector<double> xs;   // breaks along y = 0
  std::vector<std::pair<double, double>> teeth;
  double base;
};

Comb comb_shape(int i) {
  Comb c;
  const double w = 1.0 / (static_cast<double>(i) * i);
  c.base = w / 8;
  std::vector<double> xs{0, 1};
  for (int j = 0; j < i; ++j) {
    const double x = static_cast<double>(j) / i;
    c.teeth.push_back({x, std::min(1.0, x + w)});
    xs.push_back(x);
    xs.push_back(std::min(1.0, x + w));
  }
  c.xs = sorted_unique(xs);
  return c;
}

std::vector<Point> comb_loop(const Comb& c) {
  std::vector<Point> p;
  for (double x : c.xs) p.push_back(xy(x, -c.base));
  // Walk y = 0 from right to left, climbing every tooth.
  std::vector<Point> top;
  std::size_t t = c.teeth.size();
  for (std::size_t k = c.xs.size(); k-- > 0;) {
    const double x = c.xs[k];
    if (t > 0 && x == c.teeth[t - 1].second) {
      top.push_back(xy(x, 0));
      top.push_back(xy(x, 1));
      top.push_back(xy(c.teeth[t - 1].first, 1));
      top.push_back(xy(c.teeth[t - 1].first, 0));
      while (k > 0 && c.xs[k] != c.teeth[t - 1].first) --k;
      --t;
      continue;
    }
    top.push_back(xy(x, 0));
  }
  for (const Point& q : top)
    if ((q - p.back()).norm() > 0 && (q - p.front()).norm() > 0) p.push_back(q);
  return p;
}

ComplexPtr comb_fill_of(const Comb& c) {
  std::vector<Point> pos;
  auto add = [&](const Point& q) {
    for (std::size_t k = 0; k < pos.size(); ++k)
      if ((pos[k] - q).norm() == 0) return static_cast<VertexId>(k);
    pos.push_back(q);
    return static_cast<VertexId>(pos.size() - 1);
  };
  std::vector<Simplex> tris;
  for (std::size_t k = 0; k + 1 < c.xs.size(); ++k) {
    const VertexId a = add(xy(c.xs[k], -c.base)), b = add(xy(c.xs[k + 1], -c.base));
    const VertexId d = add(xy(c.xs[k], 0)), e = add(xy(c.xs[k + 1], 0));
    tris.push_back({a, b, e});
    tris.push_back({a, e, d});
  }
  for (const auto& [x0, x1] : c.teeth) {
    const VertexId a = add(xy(x0, 0)), b = add(xy(x1, 0)), e = add(xy(x1, 1)), d = add(xy(x0, 1));
    tris.push_back({a, b, e});
    tris.push_back({a, e, d});
  }
  return fill_complex(2, std::move(pos), std::move(tris));
}

// ---- parallel layers ----

ComplexPtr strip_fill(const std::vector<double>& heights) {
  std::vector<double> ys(heights);
  ys.push_back(0);
  if (sorted_unique(ys).size() < 2) ys.push_back(1);
  return grid_fill(linspace(0, 1, 4), ys);
}

std::vector<double> layer_heights(int i, int n) {
  std::vector<double> h;
  for (int k = 0; k < n; ++k) h.push_back(k / (static_cast<double>(n) * i));
  return h;
}

std::vector<Segment> horizontal_units(const std::vector<double>& heights) {
  std::vector<Segment> s;
  for (double y : heights)
    for (int k = 0; k < 4; ++k) s.push_back({xy(k / 4.0, y), xy((k + 1) / 4.0, y)});
  return s;
}

// ---- concentric polygons ----

ComplexPtr rings_fill(std::vector<double> radii, int k) {
  radii = sorted_unique(radii);
  std::vector<Point> pos{Point::Zero()};
  for (double r : radii) {
    const auto ring = regular_polygon(k, r);
    pos.insert(pos.end(), ring.begin(), ring.end());
  }
  auto id = [&](std::size_t ring, int j) { return static_cast<VertexId>(1 + ring * k + ((j % k) + k) % k); };
  std::vector<Simplex> tris;
  for (int j = 0; j < k; ++j) tris.push_back({0, id(0, j), id(0, j + 1)});
  for (std::size_t r = 0; r + 1 < radii.size(); ++r)
    for (int j = 0; j < k; ++j) {
      tris.push_back({id(r, j), id(r, j + 1), id(r + 1, j + 1)});
      tris.push_back({id(r, j), id(r + 1, j + 1), id(r + 1, j)});
    }
  return fill_complex(2, std::move(pos), std::move(tris));
}

double polygon_perimeter(int k, double r) { return 2 * k * r * std::sin(std::numbers::pi / k); }
double polygon_area(int k, double r) { return 0.5 * k * r * r * std::sin(2 * std::numbers::pi / k); }
double polygon_turning(int k) { return 2 * k * std::sin(std::numbers::pi / k); }

FamilyMember ring_member(int i, int k, double r, ComplexPtr fill) {
  FamilyMember m{i, varifold_on(fill, closed_loop(regular_polygon(k, r))), std::nullopt, fill, {}};
  m.expect.mass = polygon_perimeter(k, r);
  m.expect.fvTotal = polygon_turning(k);
  m.expect.boundaryPoints = 0;
  m.expect.enclosedArea = polygon_area(k, r);
  return m;
}

Window interior_window() { return Window::ball(xy(0.5, 0), 0.25); }

}  // namespace

ComplexPtr grid_fill(std::vector<double> xs, std::vector<double> ys) {
  xs = sorted_unique(std::move(xs));
  ys = sorted_unique(std::move(ys));
  if (xs.size() < 2 || ys.size() < 2) throw InvalidInput("grid needs two distinct values per axis");
  std::vector<Point> pos;
  for (double y : ys)
    for (double x : xs) pos.push_back(xy(x, y));
  auto id = [&](std::size_t i, std::size_t j) { return static_cast<VertexId>(j * xs.size() + i); };
  std::vector<Simplex> tris;
  for (std::size_t j = 0; j + 1 < ys.size(); ++j)
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return fill_complex(2, std::move(pos), std::move(tris));
}

std::vector<Point> regular_polygon(int k, double radius, const Point& center) {
  if (k < 3) throw InvalidInput("a polygon needs at least 3 vertices");
  if (!(radius > 0)) throw InvalidInput("polygon radius must be positive");
  std::vector<Point> p;
  for (int j = 0; j < k; ++j) {
    const double a = 2 * std::numbers::pi * j / k;
    p.push_back(center + xy(radius * std::cos(a), radius * std::sin(a)));
  }
  return p;
}

IntegralVarifold polygon_varifold(const std::vector<Point>& vertices, bool closed, long mult) {
  const auto n = static_cast<VertexId>(vertices.size());
  if (n < 2) throw InvalidInput("a polyline needs at least 2 vertices");
  std::vector<Simplex> cells;
  for (VertexId i = 0; i + 1 < n; ++i) cells.push_back({i, i + 1});
  if (closed) cells.push_back({static_cast<VertexId>(n - 1), 0});
  const auto c = CellComplex::build(2, 1, vertices, cells);
  std::vector<Term> t;
  for (std::size_t i = 0; i < cells.size(); ++i) t.push_back({static_cast<CellId>(i), mult});
  return IntegralVarifold(c, std::move(t));
}

IntegralVarifold unit_interval_varifold(long k) {
  const auto c = CellComplex::build(2, 1, {xy(0, 0), xy(1, 0)}, {{0, 1}});
  return IntegralVarifold(c, {{0, k}});
}

FamilyMember gen_Sn(int n) {
  require_index(n, "Sn");
  const int ns[] = {n};
  const auto fill = sn_fill(ns);
  auto segs = odd_intervals(n, 0);
  const auto upper = odd_intervals(n, 1.0 / (2 * n));
  segs.insert(segs.end(), upper.begin(), upper.end());
  FamilyMember m{n, varifold_on(fill, segs), std::nullopt, fill, {}};
  m.expect.mass = 1;
  m.expect.fvTotal = 4.0 * n;
  m.expect.flatToLimit = 1;
  m.expect.blToLimitUpper = 2.0 / n;
  m.expect.boundaryPoints = static_cast<std::size_t>(4 * n);
  return m;
}

FamilyMember gen_Qn(int n) {
  require_index(n, "Qn");
  const int ns[] = {n};
  const auto fill = qn_fill(ns);
  FamilyMember m{n, varifold_on(fill, qn_loops(n)), std::nullopt, fill, {}};
  m.expect.mass = 1 + 2.0 / n;
  m.expect.fvTotal = 4 * std::sqrt(2.0) * n;
  m.expect.flatUpper = 1 / (2.0 * n * n);
  m.expect.flatToLimitUpper = 1 / (2.0 * n * n);
  m.expect.boundaryPoints = 0;
  m.expect.enclosedArea = 1 / (2.0 * n * n);
  return m;
}

FamilyMember gen_comb(int i) {
  require_index(i, "comb");
  const Comb c = comb_shape(i);
  const auto fill = comb_fill_of(c);
  FamilyMember m{i, varifold_on(fill, closed_loop(comb_loop(c))), std::nullopt, fill, {}};
  const double w = 1.0 / (static_cast<double>(i) * i);
  m.expect.mass = 2 + 2.0 * i + 2 * c.base;
  m.expect.enclosedArea = c.base + i * w;
  m.expect.flatUpper = c.base + i * w;
  m.expect.flatToLimitUpper = c.base + i * w;
  m.expect.boundaryPoints = 0;
  return m;
}

FamilyMember gen_parallel_pair(int i, int sign) {
  require_index(i, "pair");
  if (sign < -1 || sign > 1) throw InvalidInput("pair orientation must be -1, 0 or +1");
  const std::vector<double> h{0, 1.0 / i};
  const auto fill = strip_fill(h);
  const auto lower = horizontal_units({h[0]});
  const auto upper = horizontal_units({h[1]});
  auto segs = lower;
  segs.insert(segs.end(), upper.begin(), upper.end());
  FamilyMember m{i, varifold_on(fill, segs), std::nullopt, fill, {}};
  if (sign != 0) {
    std::vector<long> coeff(lower.size(), 1);
    coeff.insert(coeff.end(), upper.size(), sign);
    m.current = current_on(fill, segs, coeff);
  }
  m.expect.mass = 2;
  m.expect.fvTotal = 4;
  m.expect.fvWindow = 0;
  m.expect.flatToLimitUpper = 3.0 / i;
  m.expect.blToLimitUpper = 1.0 / i;
  m.expect.boundaryPoints = 4;
  return m;
}

FamilyMember gen_layers(int i, int n) {
  require_index(i, "layers");
  if (n < 1) throw InvalidInput("layers: number of sheets must be >= 1");
  const auto h = layer_heights(i, n);
  const auto fill = strip_fill(h);
  FamilyMember m{i, varifold_on(fill, horizontal_units(h)), std::nullopt, fill, {}};
  m.expect.mass = n;
  m.expect.fvTotal = 2.0 * n;
  m.expect.fvWindow = 0;
  m.expect.blToLimitUpper = (n - 1.0) / (2.0 * i);
  m.expect.boundaryPoints = static_cast<std::size_t>(2 * n);
  return m;
}

FamilyMember gen_polygon_circles(int i, int k) {
  require_index(i, "circles");
  if (k < 8) throw InvalidInput("circles: at least 8 sides");
  const double r = 1 + 1.0 / i;
  FamilyMember m = ring_member(i, k, r, rings_fill({1.0, r}, k));
  m.expect.flatToLimit = polygon_area(k, r) - polygon_area(k, 1);
  return m;
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = {"Sn",     "Qn",     "comb",     "pair",     "pair-opposite",
                                               "pair-same", "layers", "segment", "circles", "shrinking",
                                               "constant"};
  return ids;
}

Family family(std::string_view id, int layers, int sides) {
  Family f;
  f.id = std::string(id);
  if (id == "Sn") {
    f.parameter = "n: 2n intervals of length 1/(2n) on two rows";
    f.defaultRange = range(2, 32);
    f.limitVarifold = unit_interval_varifold();
    f.member = gen_Sn;
    f.fill = sn_fill;
  } else if (id == "Qn") {
    f.parameter = "n: boundaries of n rectangles of height 1/n^2";
    f.defaultRange = range(2, 16);
    f.limitVarifold = unit_interval_varifold();
    const auto lim = unit_interval_varifold();
    f.limitChain = Mod2Chain(lim.complex(), 1);
    f.member = gen_Qn;
    f.fill = qn_fill;
  } else if (id == "comb") {
    f.parameter = "i: comb with i teeth of width 1/i^2";
    f.defaultRange = range(1, 16);
    const auto lim = unit_interval_varifold();
    f.limitChain = Mod2Chain(lim.complex(), 1);
    f.member = gen_comb;
    f.fill = [](std::span<const int> is) {
      if (is.size() != 1) throw InvalidInput("comb: no common fill for several indices");
      return comb_fill_of(comb_shape(is[0]));
    };
  } else if (id == "pair" || id == "pair-opposite" || id == "pair-same") {
    const int sign = id == "pair" ? 0 : id == "pair-same" ? 1 : -1;
    f.parameter = "i: unit segments at heights 0 and 1/i";
    f.defaultRange = range(2, 64);
    f.windows = {interior_window()};
    f.limitVarifold = unit_interval_varifold(2);
    const auto lim = unit_interval_varifold();
    f.limitChain = Mod2Chain(lim.complex(), 1);
    if (sign != 0) f.limitCurrent = IntChain(lim.complex(), 1, {{0, 1 + sign}});
    f.lemmaLayers = 2;
    f.lemmaWindow = interior_window();
    f.member = [sign](int i) { return gen_parallel_pair(i, sign); };
    f.fill = [](std::span<const int> is) {
      std::vector<double> h;
      for (int i : is) {
        require_index(i, "pair");
        h.push_back(1.0 / i);
      }
      return strip_fill(h);
    };
  } else if (id == "layers" || id == "segment") {
    const int n = id == "segment" ? 1 : layers;
    if (n < 1) throw InvalidInput("layers: number of sheets must be >= 1");
    f.parameter = id == "segment" ? "i: unit segment at height 1/i"
                                  : "i: " + std::to_string(n) + " unit segments at spacing 1/(" +
                                        std::to_string(n) + "i)";
    f.defaultRange = range(2, 64);
    f.windows = {interior_window()};
    f.limitVarifold = unit_interval_varifold(n);
    const auto lim = unit_interval_varifold();
    f.limitChain = n % 2 == 0 ? Mod2Chain(lim.complex(), 1) : Mod2Chain(lim.complex(), 1, {{0, 1}});
    f.lemmaLayers = n;
    f.lemmaWindow = interior_window();
    if (id == "segment") {
      f.member = [](int i) {
        require_index(i, "segment");
        const std::vector<double> h{1.0 / i};
        const auto fill = strip_fill(h);
        FamilyMember m{i, varifold_on(fill, horizontal_units(h)), std::nullopt, fill, {}};
        m.expect.mass = 1;
        m.expect.fvTotal = 2;
        m.expect.fvWindow = 0;
        m.expect.blToLimitUpper = 1.0 / i;
        m.expect.boundaryPoints = 2;
        return m;
      };
      f.fill = [](std::span<const int> is) {
        std::vector<double> h;
        for (int i : is) {
          require_index(i, "segment");
          h.push_back(1.0 / i);
        }
        return strip_fill(h);
      };
    } else {
      f.member = [n](int i) { return gen_layers(i, n); };
      f.fill = [n](std::span<const int> is) {
        std::vector<double> h;
        for (int i : is) {
          require_index(i, "layers");
          const auto l = layer_heights(i, n);
          h.insert(h.end(), l.begin(), l.end());
        }
        return strip_fill(h);
      };
    }
  } else if (id == "circles") {
    if (sides < 8) throw InvalidInput("circles: at least 8 sides");
    f.parameter = "i: regular " + std::to_string(sides) + "-gon of radius 1 + 1/i";
    f.defaultRange = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    const auto loop = regular_polygon(sides, 1);
    f.limitVarifold = polygon_varifold(loop, true);
    f.member = [sides](int i) { return gen_polygon_circles(i, sides); };
    f.fill = [sides](std::span<const int> is) {
      std::vector<double> r{1};
      for (int i : is) {
        require_index(i, "circles");
        r.push_back(1 + 1.0 / i);
      }
      return rings_fill(r, sides);
    };
  } else if (id == "shrinking") {
    if (sides < 8) throw InvalidInput("shrinking: at least 8 sides");
    f.parameter = "i: regular " + std::to_string(sides) + "-gon of radius 1/i";
    f.defaultRange = range(1, 16);
    const auto lim = unit_interval_varifold();
    f.limitVarifold = IntegralVarifold(lim.complex());
    f.member = [sides](int i) {
      require_index(i, "shrinking");
      const double r = 1.0 / i;
      return ring_member(i, sides, r, rings_fill({r}, sides));
    };
    f.fill = [sides](std::span<const int> is) {
      std::vector<double> r;
      for (int i : is) {
        require_index(i, "shrinking");
        r.push_back(1.0 / i);
      }
      return rings_fill(r, sides);
    };
  } else if (id == "constant") {
    f.parameter = "i: ignored; the unit interval";
    f.defaultRange = range(1, 8);
    f.limitVarifold = unit_interval_varifold();
    f.member = [](int i) {
      require_index(i, "constant");
      const auto fill = grid_fill({0, 1}, {0, 1});
      FamilyMember m{i, varifold_on(fill, {{xy(0, 0), xy(1, 0)}}), std::nullopt, fill, {}};
      m.current = current_on(fill, {{xy(0, 0), xy(1, 0)}}, {1});
      m.expect.mass = 1;
      m.expect.fvTotal = 2;
      m.expect.flatToLimit = 0;
      m.expect.boundaryPoints = 2;
      return m;
    };
    f.limitCurrent = IntChain(f.limitVarifold->complex(), 1, {{0, 1}});
    f.gamma = boundary(to_mod2(*f.limitVarifold));
    f.fill = [](std::span<const int>) { return grid_fill({0, 1}, {0, 1}); };
  } else {
    throw InvalidInput("unknown family '" + std::string(id) + "'");
  }
  return f;
}

}  // namespace gmt
