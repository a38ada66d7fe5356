#include <doctest.h>

#include <gmtkit/errors.hpp>
#include <gmtkit/flatnorm.hpp>

#include "support.hpp"

#include <cmath>

using namespace gmt;
using gmt::test::pt;

namespace {

// Jittered grid patch with a random subset of its fill triangles.
ComplexPtr random_patch(std::mt19937_64& rng, int nx, int ny, double keepFill) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::bernoulli_distribution keep(keepFill);
  std::vector<Point> pos;
  auto id = [&](int i, int j) { return static_cast<VertexId>(j * (nx + 1) + i); };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) pos.push_back(pt(i + jitter(rng), j + jitter(rng)));
  std::vector<Simplex> edges, tris;
  std::bernoulli_distribution flip(0.5);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      if (i < nx) edges.push_back(flip(rng) ? Simplex{id(i, j), id(i + 1, j)} : Simplex{id(i + 1, j), id(i, j)});
      if (j < ny) edges.push_back(flip(rng) ? Simplex{id(i, j), id(i, j + 1)} : Simplex{id(i, j + 1), id(i, j)});
      if (i < nx && j < ny) {
        edges.push_back({id(i, j), id(i + 1, j + 1)});
        if (keep(rng)) tris.push_back(flip(rng) ? Simplex{id(i, j), id(i + 1, j), id(i + 1, j + 1)}
                                                : Simplex{id(i + 1, j), id(i, j), id(i + 1, j + 1)});
        if (keep(rng)) tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  return CellComplex::build(2, 1, pos, edges, tris);
}

template <class Ring>
Chain<Ring> random_chain(std::mt19937_64& rng, const ComplexPtr& c, int level, double density,
                         long maxCoeff) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> coeff(-maxCoeff, maxCoeff);
  std::vector<Term> t;
  for (std::size_t i = 0; i < c->num_cells(level); ++i)
    if (keep(rng)) t.push_back({static_cast<CellId>(i), coeff(rng)});
  return Chain<Ring>(c, level, t);
}

Window random_window(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 3);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return Window::all();
    case 1:
      return Window::ball(pt(u(rng), u(rng)), 0.5 + u(rng));
    default: {
      const Point lo = pt(u(rng) - 1, u(rng) - 1);
      return Window::box(lo, lo + pt(1 + u(rng), 1 + u(rng)), 2);
    }
  }
}

template <class Ring>
FlatNormCert<Ring> forced(const Chain<Ring>& a, const ComplexPtr& fill, const Window& w, FlatMethod m,
                          int maxCoeff = 1) {
  SolverBudget b;
  b.method = m;
  b.maxCoeff = maxCoeff;
  return flat_seminorm(a, fill, w, b);
}

// Canonical grid fill for the odd-interval configuration at level n.
ComplexPtr s_grid(int n) {
  return gmt::test::grid(gmt::test::linspace(0, 1, 2 * n), {0, 1.0 / (2 * n)});
}

}  // namespace

TEST_CASE("boundary of a filled square") {
  const auto sq = gmt::test::grid({0, 1}, {0, 1});
  const auto rim = gmt::test::edges_where<Mod2>(sq, [](const Point&) { return true; }) -
                   Mod2Chain(sq, 1, {{sq->find(1, Simplex{0, 3}), 1}});
  REQUIRE(rim.size() == 4);
  const auto cert = flat_seminorm(rim, sq, Window::all());
  CHECK(cert.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cert.fillMass == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cert.residualMass == 0.0);
  CHECK(cert.filling.size() == 2);
  CHECK(cert.exact);
  CHECK(std::abs(cert.value - (cert.residualMass + cert.fillMass)) <= 1e-12);
  for (FlatMethod m : {FlatMethod::Exhaustive, FlatMethod::BranchAndBound, FlatMethod::FrontierDp,
                       FlatMethod::PlanarMincut})
    CHECK(forced(rim, sq, Window::all(), m).value == cert.value);

  const auto zero = flat_seminorm(Mod2Chain(sq), sq, Window::all());
  CHECK(zero.value == 0.0);
  CHECK(zero.filling.is_zero());
  CHECK(zero.exact);
}

TEST_CASE("integer filling of an oriented square") {
  const auto sq = gmt::test::grid({0, 1}, {0, 1});
  std::vector<Term> t;
  const VertexId ring[4] = {0, 1, 3, 2};
  for (int i = 0; i < 4; ++i) {
    const Simplex s{ring[i], ring[(i + 1) % 4]};
    const CellId id = sq->find(1, s);
    t.push_back({id, sq->cell(1, id) == s ? 3L : -3L});
  }
  const IntChain a(sq, 1, t);
  const auto cert = flat_seminorm(a, sq, Window::all());
  CHECK(cert.value == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cert.exact);
  for (const Term& q : cert.filling.terms()) CHECK(std::abs(q.coeff) == 3);
  // With |q| <= 2 only part of the loop can be filled.
  SolverBudget tight;
  tight.maxCoeff = 2;
  const auto capped = flat_seminorm(a, sq, Window::all(), tight);
  CHECK(capped.value == doctest::Approx(2.0 + 4.0).epsilon(1e-15));
  CHECK_FALSE(capped.exact);
}

TEST_CASE("thin rectangles are filled by their area") {
  for (int n = 2; n <= 16; ++n) {
    const double h = 1.0 / (n * n);
    std::vector<double> xs;
    for (int k = 0; k <= 2 * n; ++k) xs.push_back(k / (2.0 * n));
    const auto g = gmt::test::grid(xs, {0, h});
    // Loops around the odd columns.
    std::vector<Term> t;
    for (std::size_t i = 0; i < g->num_cells(1); ++i) {
      const auto v = g->vertices(1, static_cast<CellId>(i));
      const int k0 = static_cast<int>(std::lround(std::min(v[0].x(), v[1].x()) * 2 * n));
      const bool horizontal = v[0].y() == v[1].y();
      const bool vertical = v[0].x() == v[1].x();
      if (horizontal && k0 % 2 == 1) t.push_back({static_cast<CellId>(i), 1});
      if (vertical && k0 >= 1 && k0 <= 2 * n) t.push_back({static_cast<CellId>(i), 1});
    }
    const Mod2Chain a(g, 1, t);
    REQUIRE(boundary(a).is_zero());
    CHECK(mass(a) == doctest::Approx(1 + 2.0 / n).epsilon(1e-13));
    const auto cert = flat_seminorm(a, g, Window::all());
    const double area = n * (1.0 / (2 * n)) * h;
    CHECK(cert.value <= area * (1 + 1e-12));
    CHECK(cert.value == doctest::Approx(area).epsilon(1e-12));
    CHECK(cert.method == FlatMethod::PlanarMincut);
    CHECK(cert.exact);
  }
}

TEST_CASE("odd intervals against the full interval") {
  for (int n : {2, 3, 8, 32}) {
    const auto g = s_grid(n);
    std::vector<Term> odd, full;
    for (std::size_t i = 0; i < g->num_cells(1); ++i) {
      const auto v = g->vertices(1, static_cast<CellId>(i));
      if (v[0].y() != v[1].y()) continue;
      const int k = static_cast<int>(std::lround(std::min(v[0].x(), v[1].x()) * 2 * n));
      if (k % 2 == 1) odd.push_back({static_cast<CellId>(i), 1});
      if (v[0].y() == 0) full.push_back({static_cast<CellId>(i), 1});
    }
    const Mod2Chain vn(g, 1, odd), vi(g, 1, full);
    REQUIRE(mass(vn) == doctest::Approx(1.0));
    const auto cert = flat_dist(vn, vi, g, Window::all());
    CHECK(cert.value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cert.lowerBound == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cert.exact);
    if (n == 2) {
      const auto ex = flat_seminorm(vn - vi, g, Window::all(), SolverBudget{.method = FlatMethod::Exhaustive});
      CHECK(ex.value == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(ex.exact);
    }
    CHECK(projection_lower_bound(vn - vi) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("parallel segments close up with a strip") {
  for (int i = 2; i <= 64; i *= 2) {
    const double h = 1.0 / i;
    const auto g = gmt::test::grid({0, 1}, {0, h});
    std::vector<Term> t;
    for (std::size_t e = 0; e < g->num_cells(1); ++e) {
      const auto v = g->vertices(1, static_cast<CellId>(e));
      if (v[0].y() == v[1].y()) t.push_back({static_cast<CellId>(e), 1});
    }
    const Mod2Chain pair(g, 1, t);
    REQUIRE(pair.size() == 2);
    const auto cert = flat_seminorm(pair, g, Window::all());
    CHECK(cert.value <= 3 * h);
    CHECK(cert.value == doctest::Approx(3 * h).epsilon(1e-12));  // strip h plus both legs
    const auto inner = flat_seminorm(pair, g, Window::ball(pt(0.5, 0), 0.25));
    CHECK(inner.value <= 3 * h);
  }
}

TEST_CASE("complete methods agree with exhaustive enumeration") {
  auto rng = gmt::test::rng(31);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto c = random_patch(rng, 2, 3, 0.5 + 0.5 * (trial % 2));
    if (c->num_cells(2) == 0 || c->num_cells(2) > 12) continue;
    const Window w = random_window(rng);
    const auto a = random_chain<Mod2>(rng, c, 1, 0.4, 1);
    const auto ex = forced(a, c, w, FlatMethod::Exhaustive);
    const auto bb = forced(a, c, w, FlatMethod::BranchAndBound);
    const auto dp = forced(a, c, w, FlatMethod::FrontierDp);
    CHECK(bb.exact);
    CHECK(bb.value == ex.value);
    CHECK(dp.value == ex.value);
    CHECK(ex.value <= mass_W(a, w) + 1e-15);
    const auto ia = random_chain<Integer>(rng, c, 1, 0.4, 2);
    const auto iex = forced(ia, c, w, FlatMethod::Exhaustive);
    CHECK(forced(ia, c, w, FlatMethod::BranchAndBound).value == iex.value);
    CHECK(forced(ia, c, w, FlatMethod::FrontierDp).value == iex.value);
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("planar min cut agrees with exhaustive enumeration on cycles") {
  auto rng = gmt::test::rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_patch(rng, 3, 2, 0.8);
    if (c->num_cells(2) == 0 || c->num_cells(2) > 12) continue;
    const Window w = trial % 3 == 0 ? Window::all() : random_window(rng);
    const auto q0 = random_chain<Mod2>(rng, c, 2, 0.5, 1);
    const auto a = boundary(q0);
    const auto pm = forced(a, c, w, FlatMethod::PlanarMincut);
    CHECK(pm.value == forced(a, c, w, FlatMethod::Exhaustive).value);
    const auto iq = random_chain<Integer>(rng, c, 2, 0.5, 1);
    const auto ia = boundary(iq);
    CHECK(forced(ia, c, w, FlatMethod::PlanarMincut).value ==
          forced(ia, c, w, FlatMethod::Exhaustive).value);
  }
}

TEST_CASE("flat norm never exceeds mass and satisfies the triangle inequality") {
  auto rng = gmt::test::rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_patch(rng, 3, 3, 1.0);
    const Window w = random_window(rng);
    const auto a = random_chain<Mod2>(rng, c, 1, 0.3, 1);
    const auto b = random_chain<Mod2>(rng, c, 1, 0.3, 1);
    const auto d = random_chain<Mod2>(rng, c, 1, 0.3, 1);
    const auto fa = flat_seminorm(a, c, w);
    CHECK(fa.value <= mass_W(a, w) + 1e-12);
    CHECK(std::abs(fa.value - fa.residualMass - fa.fillMass) <= 1e-9);
    const auto ab = flat_dist(a, b, c, w), bd = flat_dist(b, d, c, w), ad = flat_dist(a, d, c, w);
    if (ab.exact && bd.exact && ad.exact) CHECK(ad.value <= ab.value + bd.value + 1e-9);
    CHECK(flat_dist(a, a, c, w).value == 0.0);
  }
}

TEST_CASE("zero-dimensional flat norm") {
  // Two points joined by a path of unit edges.
  const auto c = CellComplex::build(2, 0, {pt(0), pt(0.25), pt(0.5), pt(0.75), pt(2)},
                                    {{0}, {1}, {2}, {3}, {4}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const Mod2Chain pts(c, 0, {{0, 1}, {3, 1}});
  const auto cert = flat_seminorm(pts, c, Window::all());
  CHECK(cert.value == doctest::Approx(0.75).epsilon(1e-15));
  const Mod2Chain far(c, 0, {{0, 1}, {4, 1}});
  CHECK(flat_seminorm(far, c, Window::all()).value == 2.0);
}

TEST_CASE("methods that do not apply are reported") {
  const auto g = s_grid(2);
  const auto s = gmt::test::edges_where<Mod2>(g, [](const Point& p) { return p.y() == 0; });
  // A single bottom edge is not a relative boundary of any fill set.
  const Mod2Chain one(g, 1, {{s.terms()[0].cell, 1}});
  CHECK_THROWS_AS(forced(one, g, Window::all(), FlatMethod::PlanarMincut), InvalidInput);
  CHECK(forced(one, g, Window::all(), FlatMethod::Exhaustive).value == doctest::Approx(0.25));
  CHECK_THROWS_AS(flat_method_from_string("simplex"), InvalidInput);
  CHECK(flat_method_from_string("frontier_dp") == FlatMethod::FrontierDp);
}
