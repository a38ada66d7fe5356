#include <doctest.h>

#include <gmtkit/errors.hpp>
#include <gmtkit/families.hpp>
#include <gmtkit/mcf.hpp>

#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace gmt;
using gmt::test::pt;

namespace {

Loop ngon(int k, double r, const Point& c = Point::Zero(), long mult = 1) {
  Loop l;
  l.mult = mult;
  for (int i = 0; i < k; ++i) {
    const double a = 2 * std::numbers::pi * i / k;
    l.vertices.push_back(c + pt(r * std::cos(a), r * std::sin(a)));
  }
  return l;
}

double circumradius(const Loop& l, const Point& c = Point::Zero()) {
  double s = 0;
  for (const Point& p : l.vertices) s += (p - c).norm();
  return s / static_cast<double>(l.vertices.size());
}

}  // namespace

TEST_CASE("discrete curvature of regular polygons is 1/r") {
  for (int k : {8, 64, 257})
    for (double r : {0.5, 1.0, 3.0}) {
      const auto kap = curvature({ngon(k, r)});
      for (std::size_t i = 0; i < kap[0].size(); ++i) {
        CHECK(kap[0][i].norm() == doctest::Approx(1 / r).epsilon(1e-12));
        CHECK(kap[0][i].dot(ngon(k, r).vertices[i]) < 0);
      }
    }
}

TEST_CASE("one step of the 64-gon shrinks the circumradius by about dt") {
  const FlowState s0 = initial_state({ngon(64, 1)});
  const FlowState s1 = curvature_step(s0, FlowParams{});
  const double dt = s1.history.back().dt;
  CHECK(dt == doctest::Approx(0.25 * std::pow(2 * std::sin(std::numbers::pi / 64), 2)));
  CHECK((1 - circumradius(s1.loops[0])) == doctest::Approx(dt).epsilon(0.01));
  CHECK(s1.t == dt);
  CHECK(s1.history.size() == 2);
}

TEST_CASE("collinear vertices do not move") {
  Loop l;
  for (int i = 0; i <= 4; ++i) l.vertices.push_back(pt(i * 0.25, 0));
  l.vertices.push_back(pt(1, 1));
  l.vertices.push_back(pt(0, 1));
  const FlowState s1 = curvature_step(initial_state({l}), FlowParams{});
  for (int i = 1; i <= 3; ++i) CHECK(s1.loops[0].vertices[static_cast<std::size_t>(i)] == l.vertices[static_cast<std::size_t>(i)]);
  const auto kap = curvature({l});
  CHECK(kap[0][2] == Point::Zero());
}

TEST_CASE("concentric loops evolve independently") {
  FlowParams p;
  p.fixedDt = 1e-4;
  const Loop inner = ngon(32, 0.5), outer = ngon(48, 1.5);
  const FlowState both = curvature_step(initial_state({inner, outer}), p);
  const FlowState a = curvature_step(initial_state({inner}), p);
  const FlowState b = curvature_step(initial_state({outer}), p);
  CHECK(both.loops[0].vertices == a.loops[0].vertices);
  CHECK(both.loops[1].vertices == b.loops[0].vertices);
  CHECK(both.history.back().dissipation ==
        doctest::Approx(a.history.back().dissipation + b.history.back().dissipation).epsilon(1e-12));
}

TEST_CASE("64-gon flow follows the shrinking circle") {
  const auto v = polygon_varifold(regular_polygon(64, 1), true);
  const FlowState s = run(v, FlowParams{});
  REQUIRE(s.extinctionTime);
  CHECK(*s.extinctionTime >= 0.45);
  CHECK(*s.extinctionTime <= 0.55);
  double prev = s.history.front().mass;
  for (const StepRecord& r : s.history) {
    CHECK(r.mass <= prev + 1e-9);
    CHECK(r.boundaryMass == 0);
    CHECK(r.dissipationOk);
    CHECK(r.flatContinuous);
    prev = r.mass;
    if (!r.extinct && r.mass > 2) {
      // R(t) = sqrt(1 - 2t) for the smooth circle.
      const double oracle = 2 * std::numbers::pi * std::sqrt(std::max(0.0, 1 - 2 * r.t));
      CHECK(r.mass == doctest::Approx(oracle).epsilon(0.01));
    }
  }
  CHECK(s.history.back().extinct);
  CHECK(s.loops.empty());
}

TEST_CASE("two disjoint circles decay separately and stay cyclic") {
  const FlowState s = [] {
    FlowState st = initial_state({ngon(64, 1, pt(-3, 0)), ngon(64, 0.5, pt(3, 0))});
    run(st, FlowParams{});
    return st;
  }();
  std::vector<std::size_t> extinct;
  for (const StepRecord& r : s.history) {
    CHECK(r.cyclic);
    if (r.extinct) extinct.push_back(r.step);
  }
  REQUIRE(extinct.size() == 2);
  const double tSmall = s.history[extinct[0]].t;
  CHECK(tSmall == doctest::Approx(0.125).epsilon(0.1));
  CHECK(*s.extinctionTime == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("random convex polygons satisfy the monitored inequalities") {
  auto gen = gmt::test::rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> angles;
    for (int i = 0; i < 12; ++i) angles.push_back(2 * std::numbers::pi * u(gen));
    std::sort(angles.begin(), angles.end());
    Loop l;
    for (double a : angles) l.vertices.push_back(pt((1 + 0.3 * u(gen)) * std::cos(a), (1 + 0.3 * u(gen)) * std::sin(a)));
    FlowParams p;
    p.maxSteps = 300;
    FlowState s;
    try {
      s = initial_state({l});
    } catch (const InvalidInput&) {
      continue;
    }
    run(s, p);
    for (const StepRecord& r : s.history) {
      CHECK(r.monotone);
      CHECK(r.cyclic);
      CHECK(r.dissipationOk);
    }
  }
}

TEST_CASE("degenerate input is rejected") {
  Loop flat;
  flat.vertices = {pt(0, 0), pt(1, 0), pt(2, 0)};
  CHECK_THROWS_AS(initial_state({flat}), InvalidInput);
  Loop pinched;
  pinched.vertices = {pt(0, 0), pt(0, 0), pt(1, 1)};
  CHECK_THROWS_AS(initial_state({pinched}), InvalidInput);
  CHECK_THROWS_AS(initial_state(unit_interval_varifold()), InvalidInput);
  FlowParams bad;
  bad.dtSafety = 0.7;
  CHECK_THROWS_AS(curvature_step(initial_state({ngon(8, 1)}), bad), InvalidInput);
}

TEST_CASE("loops are recovered from varifolds") {
  const auto v = polygon_varifold(regular_polygon(16, 2), true);
  const auto loops = loops_of(v);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].vertices.size() == 16);
  CHECK(initial_state(v).mass() == doctest::Approx(mass(v)).epsilon(1e-14));
  CHECK(geometrically_equal(initial_state(v).varifold(), v));
}

TEST_CASE("remeshing coarsens and refines") {
  std::vector<Loop> loops{ngon(64, 0.05)};
  FlowParams p;
  CHECK(remesh(loops, p));
  CHECK(loops[0].vertices.size() >= p.minVertices);
  CHECK(loops[0].vertices.size() < 64);
  std::vector<Loop> big{ngon(8, 2)};
  CHECK(remesh(big, p));
  for (std::size_t i = 0; i < big[0].vertices.size(); ++i)
    CHECK((big[0].vertices[(i + 1) % big[0].vertices.size()] - big[0].vertices[i]).norm() <= p.maxEdge + 1e-12);
}

TEST_CASE("junction parity") {
  for (int k = 1; k <= 8; ++k) {
    JunctionConfig cfg;
    for (int j = 0; j < k; ++j) {
      const double a = 2 * std::numbers::pi * j / k + 0.1;
      cfg.rays.push_back({pt(std::cos(a), std::sin(a)), 1});
    }
    const auto v = junction_parity(cfg);
    CHECK(v.odd == (k % 2 == 1));
    CHECK(v.boundaryMass == (k % 2));
  }
  JunctionConfig triple;
  for (int j = 0; j < 3; ++j) triple.rays.push_back({pt(std::cos(2 * std::numbers::pi * j / 3), std::sin(2 * std::numbers::pi * j / 3)), 1});
  CHECK(junction_parity(triple).verdict == "excluded for cyclic flows");
  JunctionConfig quad;
  for (int j = 0; j < 4; ++j) quad.rays.push_back({pt(std::cos(std::numbers::pi * j / 2), std::sin(std::numbers::pi * j / 2)), 1});
  CHECK(junction_parity(quad).verdict == "not excluded");
  CHECK_FALSE(junction_parity(quad).excluded);

  JunctionConfig line;
  line.rays = {{pt(1, 0), 1}, {pt(-1, 0), 1}};
  CHECK_FALSE(junction_parity(line).odd);
  JunctionConfig doubled;
  doubled.rays = {{pt(1, 0), 2}, {pt(0, 1), 1}};
  CHECK(junction_parity(doubled).odd);
  JunctionConfig dup;
  dup.rays = {{pt(1, 0), 1}, {pt(2, 0), 1}};
  CHECK_THROWS_AS(junction_parity(dup), InvalidInput);
}

TEST_CASE("blow-ups") {
  const FlowState s = initial_state({ngon(8, 1)});
  const auto smooth = blowup(s, (ngon(8, 1).vertices[0] + ngon(8, 1).vertices[1]) / 2, {0.5, 0.1, 0.01});
  REQUIRE(smooth.size() == 3);
  const auto rays = ray_structure(smooth.back(), 1);
  REQUIRE(rays.rays.size() == 2);
  CHECK((rays.rays[0].direction + rays.rays[1].direction).norm() < 1e-9);
  CHECK_FALSE(junction_parity(rays).odd);

  const auto corner = blowup(s, ngon(8, 1).vertices[0], {0.1});
  const auto cr = ray_structure(corner[0], 1);
  REQUIRE(cr.rays.size() == 2);
  const double angle = std::acos(cr.rays[0].direction.dot(cr.rays[1].direction));
  CHECK(angle == doctest::Approx(std::numbers::pi * 3 / 4).epsilon(1e-9));

  const auto same = blowup(s, Point::Zero(), {1});
  CHECK(geometrically_equal(same[0], s.varifold()));
  CHECK_THROWS_AS(blowup(s, Point::Zero(), {0.1, 0.5}), InvalidInput);
}

TEST_CASE("flow CSV") {
  const FlowState s = curvature_step(initial_state({ngon(16, 1)}), FlowParams{});
  const std::string csv = flow_csv(s);
  CHECK(csv.rfind("t,mass,dissipation,boundary_mass,flags\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find(",0,ok\n") != std::string::npos);
}
