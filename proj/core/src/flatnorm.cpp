#include "gmtkit/flatnorm.hpp"

#include "gmtkit/errors.hpp"
#include "maxflow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>

namespace gmt {

std::string_view to_string(FlatMethod m) {
  switch (m) {
    case FlatMethod::PlanarMincut:
      return "planar_mincut";
    case FlatMethod::Exhaustive:
      return "exhaustive";
    case FlatMethod::FrontierDp:
      return "frontier_dp";
    case FlatMethod::BranchAndBound:
      return "branch_and_bound";
  }
  return "unknown";
}

FlatMethod flat_method_from_string(std::string_view s) {
  for (FlatMethod m : {FlatMethod::PlanarMincut, FlatMethod::Exhaustive, FlatMethod::FrontierDp,
                       FlatMethod::BranchAndBound})
    if (to_string(m) == s) return m;
  throw InvalidInput("unknown flat-norm method '" + std::string(s) + "'");
}

namespace {

// One connected piece of the filling problem. Fill and cell indices are local.
struct Problem {
  struct Cell {
    double a;       // window measure of the cell
    long target;    // coefficient of A
    std::vector<std::pair<int, int>> fills;  // (local fill, incidence sign)
  };
  bool mod2 = true;
  int maxCoeff = 1;
  std::vector<double> f;              // window measure of each fill
  std::vector<Point> centroid;        // of each fill
  std::vector<Cell> cells;
  std::vector<std::vector<int>> cellsOf;  // fill -> incident local cells

  int n() const { return static_cast<int>(f.size()); }

  long residual(const Cell& c, const std::vector<long>& q) const {
    long r = c.target;
    for (auto [j, s] : c.fills) r -= s * q[j];
    return mod2 ? (r & 1) : std::labs(r);
  }

  // Fixed-order evaluation shared by every method.
  double cost(const std::vector<long>& q) const {
    double v = 0;
    for (const Cell& c : cells) v += c.a * static_cast<double>(residual(c, q));
    for (int j = 0; j < n(); ++j) v += f[j] * static_cast<double>(std::labs(q[j]));
    return v;
  }

  double scale() const {
    double s = 1;
    for (const Cell& c : cells) s += c.a * std::labs(c.target);
    return s;
  }

  std::vector<long> domain() const {
    if (mod2) return {0, 1};
    std::vector<long> d{0};
    for (long k = 1; k <= maxCoeff; ++k) {
      d.push_back(k);
      d.push_back(-k);
    }
    return d;
  }
};

struct Solution {
  std::vector<long> q;
  bool complete = false;
  std::size_t nodes = 0;
};

// Keeps the best assignment; near-ties go to the lexicographically smaller q
// so that complete methods agree on the same optimum.
struct Incumbent {
  const Problem& p;
  std::vector<long> q;
  double value;
  double eps;

  explicit Incumbent(const Problem& pr)
      : p(pr), q(pr.n(), 0), value(pr.cost(q)), eps(1e-12 * pr.scale()) {}

  void offer(const std::vector<long>& cand) {
    const double v = p.cost(cand);
    if (v < value - eps || (v <= value + eps && cand < q)) {
      q = cand;
      value = v;
    }
  }
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration

Solution solve_exhaustive(const Problem& p) {
  Incumbent best(p);
  Solution s;
  const int n = p.n();
  std::vector<long> q(n, 0);
  if (p.mod2) {
    // Gray code walk with incremental cost; candidates are re-scored exactly.
    std::vector<long> res(p.cells.size());
    double cur = 0;
    for (std::size_t c = 0; c < p.cells.size(); ++c) {
      res[c] = p.cells[c].target & 1;
      cur += p.cells[c].a * res[c];
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
      const int j = std::countr_zero(k);
      q[j] ^= 1;
      cur += q[j] ? p.f[j] : -p.f[j];
      for (int c : p.cellsOf[j]) {
        cur -= p.cells[c].a * res[c];
        res[c] ^= 1;
        cur += p.cells[c].a * res[c];
      }
      if (cur <= best.value + 1e-9 * p.scale()) best.offer(q);
    }
    s.nodes = total;
  } else {
    const auto dom = p.domain();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      ++s.nodes;
      for (int j = 0; j < n; ++j) q[j] = dom[idx[j]];
      best.offer(q);
      int j = 0;
      while (j < n && ++idx[j] == dom.size()) idx[j++] = 0;
      if (j == n) break;
    }
  }
  s.q = best.q;
  s.complete = true;
  return s;
}

// ---------------------------------------------------------------------------
// Elimination order shared by the frontier DP and branch and bound

struct Order {
  std::vector<int> seq;                   // fills in assignment order
  std::vector<std::vector<int>> closing;  // cells completed at each step
  std::vector<std::vector<int>> frontier; // live fills after each step
  std::size_t width = 0;
};

Order make_order(const Problem& p, int axis0, int axis1) {
  Order o;
  o.seq.resize(p.n());
  std::iota(o.seq.begin(), o.seq.end(), 0);
  std::stable_sort(o.seq.begin(), o.seq.end(), [&](int a, int b) {
    const Point &x = p.centroid[a], &y = p.centroid[b];
    if (x[axis0] != y[axis0]) return x[axis0] < y[axis0];
    return x[axis1] < y[axis1];
  });
  std::vector<int> pos(p.n());
  for (int t = 0; t < p.n(); ++t) pos[o.seq[t]] = t;
  std::vector<int> lastOf(p.cells.size(), -1);
  for (std::size_t c = 0; c < p.cells.size(); ++c)
    for (auto [j, s] : p.cells[c].fills) lastOf[c] = std::max(lastOf[c], pos[j]);
  // A fill stays live until every incident cell has closed.
  std::vector<int> release(p.n(), 0);
  for (int j = 0; j < p.n(); ++j) {
    release[j] = pos[j];
    for (int c : p.cellsOf[j]) release[j] = std::max(release[j], lastOf[c]);
  }
  o.closing.resize(p.n());
  for (std::size_t c = 0; c < p.cells.size(); ++c)
    o.closing[lastOf[c]].push_back(static_cast<int>(c));
  o.frontier.resize(p.n());
  std::vector<int> live;
  for (int t = 0; t < p.n(); ++t) {
    live.push_back(o.seq[t]);
    std::vector<int> keep;
    for (int j : live)
      if (release[j] > t) keep.push_back(j);
    live = keep;
    o.frontier[t] = live;
    o.width = std::max(o.width, live.size());
  }
  return o;
}

Order best_order(const Problem& p) {
  Order a = make_order(p, 0, 1);
  Order b = make_order(p, 1, 0);
  Order c = make_order(p, 2, 0);
  if (b.width < a.width) a = std::move(b);
  if (c.width < a.width) a = std::move(c);
  return a;
}

// ---------------------------------------------------------------------------
// Frontier dynamic programming

std::optional<Solution> solve_frontier(const Problem& p, const SolverBudget& budget) {
  const Order o = best_order(p);
  const auto dom = p.domain();
  const int bits = p.mod2 ? 1 : 4;
  if (!p.mod2 && p.maxCoeff > 7) return std::nullopt;
  if (o.width * bits > 64) return std::nullopt;
  const double states = std::pow(static_cast<double>(dom.size()), static_cast<double>(o.width));
  if (states > static_cast<double>(budget.maxStates)) return std::nullopt;

  struct Entry {
    std::uint64_t key;
    double cost;
    int prev;
    long value;
  };
  const int n = p.n();
  std::vector<std::vector<Entry>> layers(n + 1);
  layers[0].push_back({0, 0.0, -1, 0});
  std::vector<int> prevFrontier;
  std::vector<long> q(n, 0);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  Solution s;
  for (int t = 0; t < n; ++t) {
    const int x = o.seq[t];
    const std::vector<int>& fr = o.frontier[t];
    std::unordered_map<std::uint64_t, int> index;
    for (int e = 0; e < static_cast<int>(layers[t].size()); ++e) {
      const Entry& en = layers[t][e];
      for (std::size_t k = 0; k < prevFrontier.size(); ++k)
        q[prevFrontier[k]] = static_cast<long>((en.key >> (bits * k)) & mask) - (p.mod2 ? 0 : 8);
      for (long v : dom) {
        ++s.nodes;
        q[x] = v;
        double c = en.cost + p.f[x] * static_cast<double>(std::labs(v));
        for (int cell : o.closing[t])
          c += p.cells[cell].a * static_cast<double>(p.residual(p.cells[cell], q));
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < fr.size(); ++k)
          key |= static_cast<std::uint64_t>(q[fr[k]] + (p.mod2 ? 0 : 8)) << (bits * k);
        auto [it, fresh] = index.emplace(key, static_cast<int>(layers[t + 1].size()));
        if (fresh)
          layers[t + 1].push_back({key, c, e, v});
        else if (c < layers[t + 1][it->second].cost)
          layers[t + 1][it->second] = {key, c, e, v};
      }
    }
    if (layers[t + 1].size() > budget.maxStates) return std::nullopt;
    prevFrontier = fr;
  }
  int e = 0;
  for (int k = 1; k < static_cast<int>(layers[n].size()); ++k)
    if (layers[n][k].cost < layers[n][e].cost) e = k;
  for (int t = n; t > 0; --t) {
    q[o.seq[t - 1]] = layers[t][e].value;
    e = layers[t][e].prev;
  }
  Incumbent best(p);
  best.offer(q);
  s.q = best.q;
  s.complete = true;
  return s;
}

// ---------------------------------------------------------------------------
// Branch and bound

Solution solve_bnb(const Problem& p, const SolverBudget& budget) {
  const Order o = best_order(p);
  const auto dom = p.domain();
  Incumbent best(p);
  Solution s;
  const int n = p.n();
  std::vector<long> q(n, 0);
  const double slack = 1e-9 * p.scale();
  bool aborted = false;

  auto dfs = [&](auto&& self, int t, double partial) -> void {
    if (aborted) return;
    if (t == n) {
      best.offer(q);
      return;
    }
    const int x = o.seq[t];
    for (long v : dom) {
      if (++s.nodes > budget.maxNodes) {
        aborted = true;
        break;
      }
      q[x] = v;
      double c = partial + p.f[x] * static_cast<double>(std::labs(v));
      for (int cell : o.closing[t])
        c += p.cells[cell].a * static_cast<double>(p.residual(p.cells[cell], q));
      if (c <= best.value + slack) self(self, t + 1, c);
      if (aborted) break;
    }
    q[x] = 0;
  };
  dfs(dfs, 0, 0.0);
  s.q = best.q;
  s.complete = !aborted;
  return s;
}

// ---------------------------------------------------------------------------
// Planar min cut: every cell borders at most two fills and A is a relative
// boundary of the fills, so the problem becomes a (total-variation) cut.

std::optional<Solution> solve_planar(const Problem& p) {
  const int n = p.n();
  for (const auto& c : p.cells)
    if (c.fills.size() > 2) return std::nullopt;

  // Orientation flips making every shared cell see opposite signs.
  std::vector<int> tau(n, 0);
  if (!p.mod2) {
    for (int r = 0; r < n; ++r) {
      if (tau[r]) continue;
      tau[r] = 1;
      std::queue<int> bq;
      bq.push(r);
      while (!bq.empty()) {
        const int i = bq.front();
        bq.pop();
        for (int c : p.cellsOf[i]) {
          const auto& cell = p.cells[c];
          if (cell.fills.size() != 2) continue;
          const auto [a, sa] = cell.fills[0];
          const auto [b, sb] = cell.fills[1];
          const int other = a == i ? b : a;
          const int si = a == i ? sa : sb, so = a == i ? sb : sa;
          const int want = -si * tau[i] * so;
          if (!tau[other]) {
            tau[other] = want;
            bq.push(other);
          } else if (tau[other] != want) {
            return std::nullopt;
          }
        }
      }
    }
  } else {
    std::fill(tau.begin(), tau.end(), 1);
  }

  // Potential S with A = dS on the cells of this component.
  std::vector<long> S(n, 0);
  std::vector<char> seen(n, 0);
  auto sgn = [&](int j, int s) { return s * tau[j]; };
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    std::vector<int> tree{r};
    seen[r] = 1;
    std::queue<int> bq;
    bq.push(r);
    while (!bq.empty()) {
      const int i = bq.front();
      bq.pop();
      for (int c : p.cellsOf[i]) {
        const auto& cell = p.cells[c];
        if (cell.fills.size() != 2) continue;
        const auto [a, sa] = cell.fills[0];
        const auto [b, sb] = cell.fills[1];
        const int other = a == i ? b : a;
        const int si = sgn(i, a == i ? sa : sb);
        // A = si * (S_i - S_other)
        const long want = p.mod2 ? (S[i] ^ (cell.target & 1)) : S[i] - si * cell.target;
        if (!seen[other]) {
          seen[other] = 1;
          S[other] = want;
          tree.push_back(other);
          bq.push(other);
        } else if (S[other] != want) {
          return std::nullopt;
        }
      }
    }
    // One-sided cells pin the offset of the whole tree.
    std::optional<long> offset;
    for (int i : tree)
      for (int c : p.cellsOf[i]) {
        const auto& cell = p.cells[c];
        if (cell.fills.size() != 1) continue;
        const int si = sgn(i, cell.fills[0].second);
        const long need = p.mod2 ? ((cell.target & 1) ^ S[i]) : si * cell.target - S[i];
        if (offset && *offset != need) return std::nullopt;
        offset = need;
      }
    if (offset)
      for (int i : tree) S[i] = p.mod2 ? (S[i] ^ *offset) : S[i] + *offset;
  }

  // Unary: f_j |S_j - P_j| plus one-sided cells a |P_j|; pairwise: a |P_i - P_j|.
  std::vector<double> side(n, 0);
  for (const auto& c : p.cells)
    if (c.fills.size() == 1) side[c.fills[0].first] += c.a;
  const long c = p.mod2 ? 1 : p.maxCoeff;
  long lo = 0, hi = 0;
  if (!p.mod2) {
    lo = *std::min_element(S.begin(), S.end()) - c;
    hi = *std::max_element(S.begin(), S.end()) + c;
  } else {
    hi = 1;
  }
  double big = 1;
  for (double x : p.f) big += x;
  for (const auto& cell : p.cells) big += cell.a;
  big *= 4;

  auto unary = [&](int j, long P) {
    if (p.mod2) return p.f[j] * static_cast<double>(P != S[j]) + side[j] * static_cast<double>(P);
    if (std::labs(P - S[j]) > c) return big;
    return p.f[j] * static_cast<double>(std::labs(S[j] - P)) +
           side[j] * static_cast<double>(std::labs(P));
  };

  std::vector<long> P(n, lo);
  const double eps = 1e-13 * big;
  for (long t = lo + 1; t <= hi; ++t) {
    detail::MaxFlow g(n + 2);
    const int src = n, snk = n + 1;
    for (int j = 0; j < n; ++j) {
      const double d = unary(j, t) - unary(j, t - 1);  // extra cost of P_j >= t
      if (d > 0)
        g.add_edge(j, snk, d);
      else if (d < 0)
        g.add_edge(src, j, -d);
    }
    for (const auto& cell : p.cells)
      if (cell.fills.size() == 2 && cell.a > 0)
        g.add_edge(cell.fills[0].first, cell.fills[1].first, cell.a, cell.a);
    g.max_flow(src, snk, eps);
    for (int j = 0; j < n; ++j)
      if (g.source_side(j)) P[j] += 1;
  }

  Solution s;
  s.q.resize(n);
  for (int j = 0; j < n; ++j)
    s.q[j] = p.mod2 ? (S[j] ^ P[j]) : tau[j] * (S[j] - P[j]);
  for (int j = 0; j < n; ++j)
    if (!p.mod2 && std::labs(s.q[j]) > p.maxCoeff) return std::nullopt;
  s.complete = true;
  s.nodes = static_cast<std::size_t>(hi - lo);
  return s;
}

bool exhaustive_fits(const Problem& p) {
  if (p.mod2) return p.n() <= 20;
  return std::pow(2.0 * p.maxCoeff + 1, p.n()) <= static_cast<double>(1 << 22);
}

struct Outcome {
  Solution sol;
  FlatMethod method;
};

Outcome solve_component(const Problem& p, const SolverBudget& budget) {
  auto run = [&](FlatMethod m) -> std::optional<Solution> {
    switch (m) {
      case FlatMethod::PlanarMincut:
        return solve_planar(p);
      case FlatMethod::Exhaustive:
        if (!exhaustive_fits(p)) return std::nullopt;
        return solve_exhaustive(p);
      case FlatMethod::FrontierDp:
        return solve_frontier(p, budget);
      case FlatMethod::BranchAndBound:
        return solve_bnb(p, budget);
    }
    return std::nullopt;
  };
  if (budget.method) {
    auto s = run(*budget.method);
    if (!s)
      throw InvalidInput("flat-norm method " + std::string(to_string(*budget.method)) +
                         " does not apply to this instance");
    return {std::move(*s), *budget.method};
  }
  for (FlatMethod m : {FlatMethod::PlanarMincut, FlatMethod::Exhaustive, FlatMethod::FrontierDp,
                       FlatMethod::BranchAndBound})
    if (auto s = run(m)) return {std::move(*s), m};
  throw InvalidInput("no flat-norm method applies");
}

double cell_weight(const CellComplex& c, int k, CellId id, const Window& w) {
  if (w.is_all()) return c.measure(k, id);
  return clipped_measure(c.cell(k, id), c.positions(), w);
}

}  // namespace

template <class Ring>
double projection_lower_bound(const Chain<Ring>& a) {
  if (a.level() != 1 || a.complex()->ambient_dim() != 2 || a.is_zero()) return 0;
  const double r = std::sqrt(0.5);
  double best = 0;
  for (const Point& u : {Point(1, 0, 0), Point(0, 1, 0), Point(r, r, 0), Point(r, -r, 0)})
    best = std::max(best, mass(pushforward_affine(a, AffineMap::linear_functional(u))));
  return best;
}

template <class Ring>
FlatNormCert<Ring> flat_seminorm(const Chain<Ring>& input, const ComplexPtr& fill, const Window& w,
                                 const SolverBudget& budget) {
  if (input.level() != fill->chain_dim())
    throw DimensionError("chain level does not match the fill complex");
  const Chain<Ring> a = transfer_to(input, fill);
  const CellComplex& c = *fill;
  const int k = a.level();
  const auto nf = static_cast<int>(c.num_cells(k + 1));
  const auto nc = static_cast<int>(c.num_cells(k));
  constexpr bool mod2 = std::is_same_v<Ring, Mod2>;

  std::vector<double> fw(nf), cw(nc);
  for (int j = 0; j < nf; ++j) fw[j] = cell_weight(c, k + 1, j, w);
  for (int i = 0; i < nc; ++i) cw[i] = cell_weight(c, k, i, w);

  // Connected components of fills through cells of positive weight.
  std::vector<int> comp(nf, -1);
  int ncomp = 0;
  for (int r = 0; r < nf; ++r) {
    if (comp[r] >= 0) continue;
    comp[r] = ncomp;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      const int j = stack.back();
      stack.pop_back();
      for (const Incidence& e : c.boundary(k + 1, j)) {
        if (!(cw[e.cell] > 0)) continue;
        for (const Incidence& g : c.coboundary(k, e.cell))
          if (comp[g.cell] < 0) {
            comp[g.cell] = ncomp;
            stack.push_back(g.cell);
          }
      }
    }
    ++ncomp;
  }
  std::vector<char> relevant(ncomp, 0);
  for (const Term& t : a.terms())
    if (cw[t.cell] > 0)
      for (const Incidence& g : c.coboundary(k, t.cell)) relevant[comp[g.cell]] = 1;

  FlatNormCert<Ring> cert{.value = 0,
                          .lowerBound = 0,
                          .filling = Chain<Ring>(fill, k + 1),
                          .residualMass = 0,
                          .fillMass = 0,
                          .method = FlatMethod::Exhaustive,
                          .exact = true,
                          .fillComplexId = fill->id(),
                          .nodes = 0};
  std::vector<Term> qTerms;
  bool complete = true;
  bool bindsBound = false;
  int methodRank = -1;
  for (int g = 0; g < ncomp; ++g) {
    if (!relevant[g]) continue;
    Problem p;
    p.mod2 = mod2;
    p.maxCoeff = mod2 ? 1 : budget.maxCoeff;
    std::vector<int> local(nf, -1), global;
    for (int j = 0; j < nf; ++j)
      if (comp[j] == g) {
        local[j] = static_cast<int>(global.size());
        global.push_back(j);
        p.f.push_back(fw[j]);
        p.centroid.push_back(c.centroid(k + 1, j));
      }
    p.cellsOf.resize(global.size());
    std::vector<int> cellSeen(nc, -1);
    for (int j : global)
      for (const Incidence& e : c.boundary(k + 1, j)) {
        if (!(cw[e.cell] > 0) || cellSeen[e.cell] >= 0) continue;
        cellSeen[e.cell] = static_cast<int>(p.cells.size());
        Problem::Cell pc{cw[e.cell], a.coeff(e.cell), {}};
        for (const Incidence& up : c.coboundary(k, e.cell))
          pc.fills.emplace_back(local[up.cell], up.sign);
        for (auto [lj, s] : pc.fills) p.cellsOf[lj].push_back(static_cast<int>(p.cells.size()));
        p.cells.push_back(std::move(pc));
      }
    const Outcome out = solve_component(p, budget);
    complete = complete && out.sol.complete;
    cert.nodes += out.sol.nodes;
    methodRank = std::max(methodRank, static_cast<int>(out.method));
    for (int lj = 0; lj < p.n(); ++lj)
      if (out.sol.q[lj] != 0) {
        qTerms.push_back({global[lj], out.sol.q[lj]});
        if (!mod2 && std::labs(out.sol.q[lj]) >= budget.maxCoeff) bindsBound = true;
      }
  }
  cert.method = methodRank < 0 ? FlatMethod::Exhaustive : static_cast<FlatMethod>(methodRank);
  cert.filling = Chain<Ring>(fill, k + 1, std::move(qTerms));
  cert.residualMass = mass_W(a - boundary(cert.filling), w);
  cert.fillMass = mass_W(cert.filling, w);
  cert.value = cert.residualMass + cert.fillMass;
  // Q = 0 is always admissible.
  const double trivial = mass_W(a, w);
  if (cert.value > trivial) {
    cert.filling = Chain<Ring>(fill, k + 1);
    cert.residualMass = trivial;
    cert.fillMass = 0;
    cert.value = trivial;
  }
  cert.exact = complete && !bindsBound;
  if (cert.exact) {
    cert.lowerBound = cert.value;
  } else {
    cert.lowerBound = w.is_all() ? std::min(cert.value, projection_lower_bound(a)) : 0.0;
    if (cert.value - cert.lowerBound <= 1e-12 * std::max(1.0, cert.value)) cert.exact = true;
  }
  return cert;
}

template <class Ring>
FlatNormCert<Ring> flat_dist(const Chain<Ring>& a, const Chain<Ring>& b, const ComplexPtr& fill,
                             const Window& w, const SolverBudget& budget) {
  return flat_seminorm(transfer_to(a, fill) - transfer_to(b, fill), fill, w, budget);
}

#define GMT_INSTANTIATE(R)                                                                     \
  template double projection_lower_bound(const Chain<R>&);                                     \
  template FlatNormCert<R> flat_seminorm(const Chain<R>&, const ComplexPtr&, const Window&,    \
                                         const SolverBudget&);                                 \
  template FlatNormCert<R> flat_dist(const Chain<R>&, const Chain<R>&, const ComplexPtr&,      \
                                     const Window&, const SolverBudget&);

GMT_INSTANTIATE(Mod2)
GMT_INSTANTIATE(Integer)

}  // namespace gmt
