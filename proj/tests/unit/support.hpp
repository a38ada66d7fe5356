#pragma once

#include <gmtkit/chain.hpp>
#include <gmtkit/complex.hpp>

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace gmt::test {

// Fuzz tests draw from this engine; set GMTKIT_SEED to reproduce a run.
inline std::mt19937_64 rng(std::uint64_t salt = 0) {
  std::uint64_t seed = 20240611;
  if (const char* s = std::getenv("GMTKIT_SEED")) seed = std::stoull(s);
  return std::mt19937_64(seed ^ (salt * 0x9e3779b97f4a7c15ull));
}

inline Point pt(double x, double y = 0, double z = 0) { return Point(x, y, z); }

// Triangulated grid xs x ys: edges as m-cells, two triangles per rectangle as
// fill cells (lower-left to upper-right diagonal).
inline ComplexPtr grid(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<Point> pos;
  auto id = [&](std::size_t i, std::size_t j) { return static_cast<VertexId>(j * xs.size() + i); };
  for (double y : ys)
    for (double x : xs) pos.push_back(pt(x, y));
  std::vector<Simplex> edges, tris;
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i + 1 < xs.size()) edges.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < ys.size()) edges.push_back({id(i, j), id(i, j + 1)});
      if (i + 1 < xs.size() && j + 1 < ys.size()) {
        edges.push_back({id(i, j), id(i + 1, j + 1)});
        tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  return CellComplex::build(2, 1, pos, edges, tris);
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(a + (b - a) * i / n);
  return v;
}

// Chain on the cells of `c` whose both endpoints satisfy `pred`, oriented by
// increasing vertex position (x first).
template <class Ring, class Pred>
Chain<Ring> edges_where(const ComplexPtr& c, Pred pred, long coeff = 1) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < c->num_cells(1); ++i) {
    const auto v = c->vertices(1, static_cast<CellId>(i));
    if (pred(v[0]) && pred(v[1])) {
      const bool forward = v[0].x() < v[1].x() || (v[0].x() == v[1].x() && v[0].y() < v[1].y());
      t.push_back({static_cast<CellId>(i), forward ? coeff : -coeff});
    }
  }
  return Chain<Ring>(c, 1, std::move(t));
}

}  // namespace gmt::test
