#include "gmtkit/mcf.hpp"

#include "gmtkit/errors.hpp"
#include "gmtkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace gmt {

namespace {

double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Point>& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross2(p[i], p[(i + 1) % p.size()]);
  return s / 2;
}

double loop_length(const Loop& l) {
  double s = 0;
  for (std::size_t i = 0; i < l.vertices.size(); ++i) s += (l.vertices[(i + 1) % l.vertices.size()] - l.vertices[i]).norm();
  return s * static_cast<double>(l.mult);
}

void validate(const Loop& l) {
  if (l.mult < 1) throw InvalidInput("loop multiplicity must be positive");
  const std::size_t n = l.vertices.size();
  if (n < 3) throw InvalidInput("loop needs at least three vertices");
  double scale = 0;
  for (const Point& p : l.vertices) {
    if (!p.allFinite() || p.z() != 0) throw InvalidInput("loop vertices must be finite points of the plane");
    scale = std::max(scale, p.norm());
  }
  for (std::size_t i = 0; i < n; ++i)
    if ((l.vertices[(i + 1) % n] - l.vertices[i]).norm() <= 1e-14 * std::max(1.0, scale))
      throw InvalidInput("loop has a zero-length edge");
  if (std::abs(signed_area(l.vertices)) <= 1e-14 * std::max(1.0, scale * scale))
    throw InvalidInput("degenerate loop: no enclosed area");
}

double min_edge(const std::vector<Loop>& loops) {
  double m = std::numeric_limits<double>::infinity();
  for (const Loop& l : loops)
    for (std::size_t i = 0; i < l.vertices.size(); ++i)
      m = std::min(m, (l.vertices[(i + 1) % l.vertices.size()] - l.vertices[i]).norm());
  return m;
}

StepRecord observe(const FlowState& s, std::size_t step) {
  StepRecord r;
  r.step = step;
  r.t = s.t;
  r.mass = s.mass();
  if (!s.loops.empty()) {
    const Mod2Chain bd = boundary(to_mod2(s.varifold()));
    r.boundaryMass = static_cast<long>(bd.size());
  }
  r.cyclic = r.boundaryMass == 0;
  return r;
}

FlowState step_impl(const FlowState& state, const FlowParams& params, double remeshSlack, bool remeshed) {
  const auto kappa = curvature(state.loops);
  const double dt = params.fixedDt ? *params.fixedDt : params.dtSafety * std::pow(min_edge(state.loops), 2);
  FlowState next = state;
  double before = 0, dissipation = 0, maxK = 0, sweep = 0, secondOrder = 0;
  for (std::size_t k = 0; k < state.loops.size(); ++k) {
    const Loop& l = state.loops[k];
    const std::size_t n = l.vertices.size();
    const double mult = static_cast<double>(l.mult);
    before += loop_length(l);
    for (std::size_t i = 0; i < n; ++i) {
      const double ePrev = (l.vertices[i] - l.vertices[(i + n - 1) % n]).norm();
      const double eNext = (l.vertices[(i + 1) % n] - l.vertices[i]).norm();
      dissipation += mult * kappa[k][i].squaredNorm() * 0.5 * (ePrev + eNext) * dt;
      maxK = std::max(maxK, kappa[k][i].norm());
      next.loops[k].vertices[i] = l.vertices[i] + dt * kappa[k][i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Point& p0 = l.vertices[i];
      const Point& p1 = l.vertices[(i + 1) % n];
      const Point& q0 = next.loops[k].vertices[i];
      const Point& q1 = next.loops[k].vertices[(i + 1) % n];
      sweep += mult * 0.5 * (std::abs(cross2(p1 - p0, q1 - p0)) + std::abs(cross2(q1 - p0, q0 - p0)));
      secondOrder += mult;
    }
  }
  next.t = state.t + dt;
  const std::size_t step = state.history.size();
  StepRecord r = observe(next, step);
  r.dt = dt;
  r.dissipation = dissipation;
  r.lengthDrop = before - r.mass;
  r.flatSweep = sweep + remeshSlack;
  r.remeshed = remeshed;
  const double previous = state.history.empty() ? before : state.history.back().mass;
  r.monotone = r.mass <= previous + 1e-9;
  r.dissipationOk = -r.lengthDrop <= -0.8 * dissipation + 1e-14 * before;
  r.flatContinuous = sweep <= before * dt * maxK + secondOrder * std::pow(dt * maxK, 2) + 1e-15;
  next.history.push_back(r);
  if (!r.dissipationOk)
    throw FlowDiagnosticFailure(step, "length drop " + format_number(r.lengthDrop) + " below 0.8 x dissipation " +
                                          format_number(dissipation));
  return next;
}

}  // namespace

std::string StepRecord::flags() const {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (on) s += (s.empty() ? "" : ";") + std::string(name);
  };
  add(remeshed, "remeshed");
  add(extinct, "extinct");
  add(!monotone, "mass_increase");
  add(!dissipationOk, "dissipation_fail");
  add(!cyclic, "boundary");
  add(!flatContinuous, "flat_jump");
  return s.empty() ? "ok" : s;
}

IntegralVarifold FlowState::varifold() const {
  std::vector<std::vector<Point>> soup;
  std::vector<long> mult;
  for (const Loop& l : loops)
    for (std::size_t i = 0; i < l.vertices.size(); ++i) {
      soup.push_back({l.vertices[i], l.vertices[(i + 1) % l.vertices.size()]});
      mult.push_back(l.mult);
    }
  if (soup.empty()) return IntegralVarifold(CellComplex::build(2, 1, {}, {}, {}, 0.0));
  return varifold_from_soup(2, 1, soup, mult);
}

double FlowState::mass() const {
  double m = 0;
  for (const Loop& l : loops) m += loop_length(l);
  return m;
}

std::vector<Loop> loops_of(const IntegralVarifold& v) {
  const CellComplex& c = *v.complex();
  if (v.dim() != 1 || c.ambient_dim() != 2) throw InvalidInput("flow input must be a 1-varifold in the plane");
  std::map<VertexId, std::vector<std::pair<VertexId, long>>> adj;
  for (const Term& t : v.terms()) {
    const Simplex& s = c.cells(1)[static_cast<std::size_t>(t.cell)];
    adj[s[0]].push_back({s[1], t.coeff});
    adj[s[1]].push_back({s[0], t.coeff});
  }
  for (const auto& [vid, nb] : adj)
    if (nb.size() != 2 || nb[0].second != nb[1].second)
      throw InvalidInput("flow input must be disjoint closed polygonal loops (vertex " + std::to_string(vid) + ")");
  std::vector<Loop> out;
  std::map<VertexId, bool> seen;
  for (const auto& [start, nb] : adj) {
    if (seen[start]) continue;
    Loop l;
    l.mult = nb[0].second;
    VertexId prev = -1, cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      l.vertices.push_back(c.positions()[static_cast<std::size_t>(cur)]);
      const auto& n = adj[cur];
      const VertexId nextId = n[0].first != prev ? n[0].first : n[1].first;
      prev = cur;
      cur = nextId;
    }
    validate(l);
    out.push_back(std::move(l));
  }
  return out;
}

FlowState initial_state(std::vector<Loop> loops) {
  for (const Loop& l : loops) validate(l);
  FlowState s;
  s.loops = std::move(loops);
  s.history.push_back(observe(s, 0));
  return s;
}

FlowState initial_state(const IntegralVarifold& v) { return initial_state(loops_of(v)); }

std::vector<std::vector<Point>> curvature(const std::vector<Loop>& loops) {
  std::vector<std::vector<Point>> out;
  for (const Loop& l : loops) {
    const std::size_t n = l.vertices.size();
    std::vector<Point> k(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point ePrev = l.vertices[i] - l.vertices[(i + n - 1) % n];
      const Point eNext = l.vertices[(i + 1) % n] - l.vertices[i];
      const double a = ePrev.norm(), b = eNext.norm();
      k[i] = 2 * (eNext / b - ePrev / a) / (a + b);
    }
    out.push_back(std::move(k));
  }
  return out;
}

FlowState curvature_step(const FlowState& state, const FlowParams& params) {
  if (!(params.dtSafety > 0 && params.dtSafety <= 0.5)) throw InvalidInput("dt safety factor must lie in (0, 0.5]");
  if (state.loops.empty()) return state;
  return step_impl(state, params, 0, false);
}

namespace {

bool remesh_impl(std::vector<Loop>& loops, const FlowParams& params, double& removedArea) {
  bool changed = false;
  for (Loop& l : loops) {
    std::vector<Point>& p = l.vertices;
    for (std::size_t i = 0; i < p.size() && p.size() > params.minVertices;) {
      const std::size_t j = (i + 1) % p.size();
      if ((p[j] - p[i]).norm() < params.minEdge) {
        const std::size_t k = (j + 1) % p.size();
        removedArea += static_cast<double>(l.mult) * 0.5 * std::abs(cross2(p[j] - p[i], p[k] - p[i]));
        p.erase(p.begin() + static_cast<long>(j));
        changed = true;
        if (j < i) --i;
        ++i;
      } else {
        ++i;
      }
    }
    std::vector<Point> refined;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point& a = p[i];
      const Point& b = p[(i + 1) % p.size()];
      refined.push_back(a);
      const int pieces = static_cast<int>(std::ceil((b - a).norm() / params.maxEdge));
      for (int s = 1; s < pieces; ++s) refined.push_back(a + (b - a) * (static_cast<double>(s) / pieces));
    }
    if (refined.size() != p.size()) {
      p = std::move(refined);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

bool remesh(std::vector<Loop>& loops, const FlowParams& params) {
  double area = 0;
  return remesh_impl(loops, params, area);
}

void run(FlowState& state, const FlowParams& params) {
  if (!(params.minEdge > 0) || !(params.maxEdge > 2 * params.minEdge) || !(params.extinctionMassTol > 0) ||
      params.minVertices < 3)
    throw InvalidInput("flow parameters must be positive with maxEdge > 2 minEdge");
  if (!(params.dtSafety > 0 && params.dtSafety <= 0.5)) throw InvalidInput("dt safety factor must lie in (0, 0.5]");
  if (state.history.empty()) state.history.push_back(observe(state, 0));
  for (std::size_t n = 0; n < params.maxSteps && !state.loops.empty(); ++n) {
    double removed = 0;
    const bool changed = remesh_impl(state.loops, params, removed);
    state = step_impl(state, params, removed, changed);
    const auto gone = std::remove_if(state.loops.begin(), state.loops.end(),
                                     [&](const Loop& l) { return loop_length(l) <= params.extinctionMassTol; });
    if (gone != state.loops.end()) {
      state.loops.erase(gone, state.loops.end());
      StepRecord& r = state.history.back();
      r.extinct = true;
      r.mass = state.mass();
      r.boundaryMass = state.loops.empty() ? 0 : static_cast<long>(boundary(to_mod2(state.varifold())).size());
      r.cyclic = r.boundaryMass == 0;
      if (state.loops.empty()) state.extinctionTime = state.t;
    }
  }
}

FlowState run(const IntegralVarifold& initial, const FlowParams& params) {
  FlowState s = initial_state(initial);
  run(s, params);
  return s;
}

std::string flow_csv(const FlowState& state) {
  std::string out = std::string(kFlowCsvHeader) + "\n";
  for (const StepRecord& r : state.history)
    out += format_number(r.t) + "," + format_number(r.mass) + "," + format_number(r.dissipation) + "," +
           std::to_string(r.boundaryMass) + "," + r.flags() + "\n";
  return out;
}

IntegralVarifold junction_varifold(const JunctionConfig& cfg) {
  if (!(cfg.radius > 0) || !cfg.center.allFinite()) throw InvalidInput("junction: radius must be positive");
  if (cfg.rays.empty()) throw InvalidInput("junction: at least one ray");
  std::vector<Point> dirs;
  std::vector<std::vector<Point>> soup;
  std::vector<long> mult;
  for (const Ray& r : cfg.rays) {
    if (r.mult < 1) throw InvalidInput("junction: ray multiplicities must be positive");
    const double len = r.direction.norm();
    if (!(len > 0) || !std::isfinite(len) || r.direction.z() != 0)
      throw InvalidInput("junction: ray directions must be nonzero vectors of the plane");
    const Point d = r.direction / len;
    for (const Point& e : dirs)
      if ((e - d).norm() < 1e-12) throw InvalidInput("junction: ray directions must be distinct");
    dirs.push_back(d);
    soup.push_back({cfg.center, Point(cfg.center + cfg.radius * d)});
    mult.push_back(r.mult);
  }
  return varifold_from_soup(2, 1, soup, mult);
}

JunctionVerdict junction_parity(const JunctionConfig& cfg) {
  const IntegralVarifold v = junction_varifold(cfg);
  long k = 0;
  for (const Ray& r : cfg.rays) k += r.mult;
  const Window ball = Window::ball(cfg.center, cfg.radius);
  const Mod2Chain bd = boundary(to_mod2(v));
  JunctionVerdict out;
  for (const Term& t : bd.terms())
    if (ball.contains(v.complex()->vertices(0, t.cell)[0])) ++out.boundaryMass;
  out.odd = k % 2 != 0;
  out.excluded = out.odd;
  out.verdict = out.odd ? "excluded for cyclic flows" : "not excluded";
  return out;
}

std::vector<IntegralVarifold> blowup(const FlowState& state, const Point& x, const std::vector<double>& lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0)) throw InvalidInput("blowup: scales must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) throw InvalidInput("blowup: scales must decrease");
  }
  const IntegralVarifold v = state.varifold();
  std::vector<IntegralVarifold> out;
  for (double l : lambdas) out.push_back(dilate(v, x, l));
  return out;
}

JunctionConfig ray_structure(const IntegralVarifold& v, double r) {
  if (!(r > 0)) throw InvalidInput("ray_structure: radius must be positive");
  JunctionConfig cfg;
  cfg.radius = r;
  const double tol = 1e-12 * r;
  auto add = [&](const Point& d, long m) {
    const Point u = d / d.norm();
    for (Ray& ray : cfg.rays)
      if ((ray.direction - u).norm() < 1e-9) {
        ray.mult += m;
        return;
      }
    cfg.rays.push_back({u, m});
  };
  for (const Term& t : v.terms()) {
    const auto p = v.complex()->vertices(1, t.cell);
    const Point& a = p[0];
    const Point& b = p[1];
    if (a.norm() <= tol) {
      add(b, t.coeff);
    } else if (b.norm() <= tol) {
      add(a, t.coeff);
    } else {
      const Point d = b - a;
      const double s = std::clamp(-a.dot(d) / d.squaredNorm(), 0.0, 1.0);
      if ((a + s * d).norm() <= tol) {
        add(a, t.coeff);
        add(b, t.coeff);
      }
    }
  }
  return cfg;
}

}  // namespace gmt
