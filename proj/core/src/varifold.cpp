#include "gmtkit/varifold.hpp"

#include "gmtkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gmt {

IntegralVarifold::IntegralVarifold(ComplexPtr complex) : complex_(std::move(complex)) {
  if (!complex_) throw InvalidInput("varifold needs a complex");
}

IntegralVarifold::IntegralVarifold(ComplexPtr complex, std::vector<Term> mult)
    : IntegralVarifold(std::move(complex)) {
  const auto n = static_cast<CellId>(complex_->num_cells(dim()));
  for (const Term& t : mult) {
    if (t.cell < 0 || t.cell >= n)
      throw InvalidInput("multiplicity on cell " + std::to_string(t.cell) + " which does not exist");
    if (t.coeff < 0) throw InvalidInput("negative multiplicity on cell " + std::to_string(t.cell));
  }
  std::sort(mult.begin(), mult.end(), [](const Term& a, const Term& b) { return a.cell < b.cell; });
  for (std::size_t i = 0; i < mult.size();) {
    long sum = 0;
    std::size_t j = i;
    for (; j < mult.size() && mult[j].cell == mult[i].cell; ++j) sum += mult[j].coeff;
    if (sum > 0) mult_.push_back({mult[i].cell, sum});
    i = j;
  }
}

long IntegralVarifold::mult(CellId cell) const {
  auto it = std::lower_bound(mult_.begin(), mult_.end(), cell,
                             [](const Term& t, CellId c) { return t.cell < c; });
  return it != mult_.end() && it->cell == cell ? it->coeff : 0;
}

IntegralVarifold IntegralVarifold::operator+(const IntegralVarifold& other) const {
  if (complex_->id() != other.complex_->id())
    throw DimensionError("varifolds live on different complexes");
  std::vector<Term> all(mult_);
  all.insert(all.end(), other.mult_.begin(), other.mult_.end());
  return IntegralVarifold(complex_, std::move(all));
}

IntegralVarifold IntegralVarifold::scaled(long k) const {
  if (k < 0) throw InvalidInput("varifold multiplicities cannot be scaled by a negative number");
  std::vector<Term> t(mult_);
  for (Term& x : t) x.coeff *= k;
  return IntegralVarifold(complex_, std::move(t));
}

double mass_W(const IntegralVarifold& v, const Window& w) {
  const CellComplex& c = *v.complex();
  double m = 0;
  for (const Term& t : v.terms()) {
    const double mu = w.is_all() ? c.measure(v.dim(), t.cell)
                                 : clipped_measure(c.cell(v.dim(), t.cell), c.positions(), w);
    m += static_cast<double>(t.coeff) * mu;
  }
  return m;
}

namespace {

double local_density(const std::vector<Point>& s, const Point& x, double tol) {
  switch (s.size()) {
    case 1:
      return (x - s[0]).norm() <= tol ? 1.0 : 0.0;
    case 2: {
      const Point d = s[1] - s[0];
      const double t = std::clamp((x - s[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
      if ((s[0] + t * d - x).norm() > tol) return 0.0;
      if ((x - s[0]).norm() <= tol || (x - s[1]).norm() <= tol) return 0.5;
      return 1.0;
    }
    case 3: {
      const Point e1 = s[1] - s[0], e2 = s[2] - s[0];
      const Point n = e1.cross(e2);
      if (std::abs((x - s[0]).dot(n.normalized())) > tol) return 0.0;
      // Barycentric coordinates via areas.
      const double area2 = n.norm();
      std::array<double, 3> lam;
      for (int i = 0; i < 3; ++i) {
        const Point& a = s[(i + 1) % 3];
        const Point& b = s[(i + 2) % 3];
        lam[i] = (b - a).cross(x - a).dot(n) / (area2 * area2);
      }
      const double scale = std::sqrt(area2);
      int onEdge = 0;
      for (double l : lam) {
        if (l < -tol / scale) return 0.0;
        if (l <= tol / scale) ++onEdge;
      }
      if (onEdge == 0) return 1.0;
      if (onEdge == 1) return 0.5;
      for (int i = 0; i < 3; ++i)
        if (lam[i] > tol / scale) {
          const Point u = s[(i + 1) % 3] - s[i], v = s[(i + 2) % 3] - s[i];
          return std::atan2(u.cross(v).norm(), u.dot(v)) / (2 * std::numbers::pi);
        }
      return 0.0;
    }
    default:
      throw DimensionError("density of a varifold above dimension 2");
  }
}

std::vector<std::vector<Point>> soup_of(const IntegralVarifold& v, std::vector<long>& mult) {
  std::vector<std::vector<Point>> cells;
  for (const Term& t : v.terms()) {
    cells.push_back(v.complex()->vertices(v.dim(), t.cell));
    mult.push_back(t.coeff);
  }
  return cells;
}

}  // namespace

double density_at(const IntegralVarifold& v, const Point& x) {
  const double tol = 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff());
  double d = 0;
  for (const Term& t : v.terms())
    d += static_cast<double>(t.coeff) * local_density(v.complex()->vertices(v.dim(), t.cell), x, tol);
  return d;
}

Mod2Chain to_mod2(const IntegralVarifold& v) {
  std::vector<Term> t(v.terms().begin(), v.terms().end());
  return Mod2Chain(v.complex(), v.dim(), std::move(t));
}

IntegralVarifold v_of_chain(const IntChain& a) {
  if (a.level() != a.complex()->chain_dim())
    return v_of_chain(chain_from_soup<Integer>(a.complex()->ambient_dim(), a.level(), [&] {
      std::vector<std::vector<Point>> cells;
      for (const Term& t : a.terms()) cells.push_back(a.complex()->vertices(a.level(), t.cell));
      return cells;
    }(), [&] {
      std::vector<long> c;
      for (const Term& t : a.terms()) c.push_back(t.coeff);
      return c;
    }()));
  std::vector<Term> t;
  for (const Term& x : a.terms()) t.push_back({x.cell, std::labs(x.coeff)});
  return IntegralVarifold(a.complex(), std::move(t));
}

IntegralVarifold varifold_from_soup(int ambientDim, int dim, const std::vector<std::vector<Point>>& cells,
                                    const std::vector<long>& mult) {
  const Arrangement arr = arrange(ambientDim, dim, cells);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < arr.parents.size(); ++i) {
    long sum = 0;
    for (const ParentRef& p : arr.parents[i]) sum += mult[p.cell];
    terms.push_back({static_cast<CellId>(i), sum});
  }
  return IntegralVarifold(arr.complex, std::move(terms));
}

Compatibility compatible(const IntChain& a, const IntegralVarifold& v) {
  if (a.complex()->ambient_dim() != v.complex()->ambient_dim() || a.level() != v.dim())
    throw DimensionError("chain and varifold of different dimensions");
  std::vector<std::vector<Point>> cells;
  std::vector<long> weight;
  for (const Term& t : a.terms()) {
    cells.push_back(a.complex()->vertices(a.level(), t.cell));
    weight.push_back(t.coeff);
  }
  const auto na = cells.size();
  auto more = soup_of(v, weight);
  cells.insert(cells.end(), more.begin(), more.end());
  const Arrangement arr = arrange(v.complex()->ambient_dim(), v.dim(), cells);

  Compatibility out;
  std::vector<Term> w;
  for (std::size_t i = 0; i < arr.parents.size(); ++i) {
    long coeff = 0, mult = 0;
    for (const ParentRef& p : arr.parents[i]) {
      if (static_cast<std::size_t>(p.cell) < na)
        coeff += weight[p.cell] * p.sign;
      else
        mult += weight[p.cell];
    }
    const long diff = mult - std::labs(coeff);
    if (diff < 0 || diff % 2 != 0) {
      out.ok = false;
      out.offendingPoint = arr.complex->centroid(v.dim(), static_cast<CellId>(i));
      out.offendingDifference = diff;
      return out;
    }
    if (diff > 0) w.push_back({static_cast<CellId>(i), diff / 2});
  }
  out.ok = true;
  out.witness = IntegralVarifold(arr.complex, std::move(w));
  return out;
}

bool geometrically_equal(const IntegralVarifold& a, const IntegralVarifold& b) {
  if (a.complex()->ambient_dim() != b.complex()->ambient_dim() || a.dim() != b.dim()) return false;
  std::vector<std::vector<Point>> cells;
  std::vector<long> weight;
  cells = soup_of(a, weight);
  const auto na = cells.size();
  auto more = soup_of(b, weight);
  cells.insert(cells.end(), more.begin(), more.end());
  const Arrangement arr = arrange(a.complex()->ambient_dim(), a.dim(), cells);
  for (const auto& parents : arr.parents) {
    long diff = 0;
    for (const ParentRef& p : parents)
      diff += static_cast<std::size_t>(p.cell) < na ? weight[p.cell] : -weight[p.cell];
    if (diff != 0) return false;
  }
  return true;
}

IntegralVarifold pushforward_affine(const IntegralVarifold& v, const AffineMap& phi) {
  std::vector<long> mult;
  auto cells = soup_of(v, mult);
  for (auto& cell : cells)
    for (Point& p : cell) p = phi(p);
  return varifold_from_soup(phi.targetDim, v.dim(), cells, mult);
}

IntegralVarifold dilate(const IntegralVarifold& v, const Point& x, double lambda) {
  return pushforward_affine(v, AffineMap::dilation(x, lambda, v.complex()->ambient_dim()));
}

IntegralVarifold restrict(const IntegralVarifold& v, const Window& w, double maxDiam) {
  if (!(maxDiam > 0)) throw InvalidInput("restrict: maxDiam must be positive");
  if (w.is_all()) return v;
  std::vector<CellId> supp;
  for (const Term& t : v.terms()) supp.push_back(t.cell);
  const Subdivision sub = subdivide_cells(v.complex(), supp, maxDiam);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < sub.map.parents.size(); ++i) {
    const auto id = static_cast<CellId>(i);
    if (!w.contains(sub.complex->centroid(v.dim(), id))) continue;
    terms.push_back({id, v.mult(sub.map.parents[i].front().cell)});
  }
  return IntegralVarifold(sub.complex, std::move(terms));
}

FirstVariationMeasure first_variation(const IntegralVarifold& v) {
  const CellComplex& c = *v.complex();
  const int m = v.dim();
  FirstVariationMeasure fv{v.complex(), {}};
  if (m == 0) return fv;
  std::vector<Point> sum(c.num_cells(m - 1), Point::Zero());
  std::vector<char> touched(sum.size(), 0);
  for (const Term& t : v.terms()) {
    const auto verts = c.vertices(m, t.cell);
    const Simplex& s = c.cell(m, t.cell);
    for (std::size_t i = 0; i < s.size(); ++i) {
      // Facet opposite vertex i; the conormal points away from that vertex.
      const Point& opp = verts[i];
      Point nu;
      if (m == 1) {
        nu = verts[1 - i] - opp;
      } else {
        const Point& a = verts[(i + 1) % 3];
        const Point e = (verts[(i + 2) % 3] - a).normalized();
        const Point r = a - opp;
        nu = r - r.dot(e) * e;
      }
      nu.normalize();
      const CellId face = c.find(m - 1, s.face(i));
      sum[face] += static_cast<double>(t.coeff) * nu;
      touched[face] = 1;
    }
  }
  for (std::size_t f = 0; f < sum.size(); ++f) {
    if (!touched[f] || sum[f].norm() < 1e-12) continue;
    fv.atoms.push_back({static_cast<CellId>(f), sum[f], c.measure(m - 1, static_cast<CellId>(f))});
  }
  return fv;
}

double total_first_variation_W(const FirstVariationMeasure& fv, const Window& w) {
  const CellComplex& c = *fv.complex;
  const int k = c.chain_dim() - 1;
  double total = 0;
  for (const auto& a : fv.atoms) {
    const double mu = w.is_all() ? a.faceMeasure : clipped_measure(c.cell(k, a.face), c.positions(), w);
    total += a.conormalSum.norm() * mu;
  }
  return total;
}

double total_first_variation_W(const IntegralVarifold& v, const Window& w) {
  return total_first_variation_W(first_variation(v), w);
}

double VarifoldAtoms::total_weight() const {
  double s = 0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

VarifoldAtoms atoms(const IntegralVarifold& v, double maxDiam) {
  if (v.dim() < 1) throw DimensionError("atoms need a varifold of dimension >= 1");
  std::vector<CellId> supp;
  for (const Term& t : v.terms()) supp.push_back(t.cell);
  const Subdivision sub = subdivide_cells(v.complex(), supp, maxDiam);
  VarifoldAtoms out;
  out.ambientDim = v.complex()->ambient_dim();
  out.dim = v.dim();
  const auto pos = sub.complex->positions();
  for (std::size_t i = 0; i < sub.map.parents.size(); ++i) {
    const auto id = static_cast<CellId>(i);
    const long k = v.mult(sub.map.parents[i].front().cell);
    out.atoms.push_back({sub.complex->centroid(v.dim(), id),
                         tangent_plane(sub.complex->cell(v.dim(), id), pos, out.ambientDim),
                         static_cast<double>(k) * sub.complex->measure(v.dim(), id)});
  }
  return out;
}

double bl_distance(const VarifoldAtoms& a, const VarifoldAtoms& b, std::size_t limit) {
  if (a.atoms.size() > limit || b.atoms.size() > limit)
    throw AtomBudget("bounded-Lipschitz distance limited to " + std::to_string(limit) +
                     " atoms per side, got " + std::to_string(std::max(a.atoms.size(), b.atoms.size())));
  if (!a.atoms.empty() && !b.atoms.empty() && (a.ambientDim != b.ambientDim || a.dim != b.dim))
    throw DimensionError("atom measures of different dimensions");

  // BL(a, b) = |a| + |b| + min over partial couplings g of sum g_ij (d_ij - 2),
  // solved by successive shortest paths on source -> a_i -> b_j -> sink.
  const std::size_t na = a.atoms.size(), nb = b.atoms.size();
  const double total = a.total_weight() + b.total_weight();
  if (na == 0 || nb == 0) return total;
  std::vector<double> d(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      d[i * nb + j] = (a.atoms[i].position - b.atoms[j].position).norm() +
                      grassmann_dist(a.atoms[i].plane, b.atoms[j].plane);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> flow(na * nb, 0.0), sentA(na, 0.0), recvB(nb, 0.0);
  // Node order: A nodes [0, na), B nodes [na, na + nb); source and sink implicit.
  std::vector<double> pi(na + nb + 1, 0.0);  // last entry: sink
  for (std::size_t j = 0; j < nb; ++j) pi[na + j] = -2;
  pi[na + nb] = -2;
  const double eps = 1e-15 * std::max(1.0, total);
  double cost = 0;
  std::vector<double> dist(na + nb + 1);
  std::vector<long> parent(na + nb + 1);
  std::vector<char> done(na + nb + 1);
  while (true) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(done.begin(), done.end(), 0);
    // Source edges.
    for (std::size_t i = 0; i < na; ++i)
      if (sentA[i] < a.atoms[i].weight - eps) {
        dist[i] = 0 + 0 - pi[i];
        parent[i] = -1;
      }
    while (true) {
      std::size_t u = dist.size();
      double best = inf;
      for (std::size_t k = 0; k < dist.size(); ++k)
        if (!done[k] && dist[k] < best) {
          best = dist[k];
          u = k;
        }
      if (u == dist.size()) break;
      done[u] = 1;
      if (u == na + nb) continue;
      if (u < na) {
        for (std::size_t j = 0; j < nb; ++j) {
          const double c = d[u * nb + j] - 2;
          if (c >= 0 || done[na + j]) continue;
          const double nd = dist[u] + c + pi[u] - pi[na + j];
          if (nd < dist[na + j]) {
            dist[na + j] = nd;
            parent[na + j] = static_cast<long>(u);
          }
        }
      } else {
        const std::size_t j = u - na;
        for (std::size_t i = 0; i < na; ++i) {
          if (done[i] || flow[i * nb + j] <= eps) continue;
          const double c = 2 - d[i * nb + j];
          const double nd = dist[u] + c + pi[u] - pi[i];
          if (nd < dist[i]) {
            dist[i] = nd;
            parent[i] = static_cast<long>(u);
          }
        }
        if (recvB[j] < b.atoms[j].weight - eps) {
          const double nd = dist[u] + pi[u] - pi[na + nb];
          if (nd < dist[na + nb]) {
            dist[na + nb] = nd;
            parent[na + nb] = static_cast<long>(u);
          }
        }
      }
    }
    const double dt = dist[na + nb];
    if (dt == inf) break;
    const double pathCost = dt + pi[na + nb];
    if (pathCost >= -1e-14) break;
    // Bottleneck along the path.
    std::size_t jEnd = static_cast<std::size_t>(parent[na + nb]) - na;
    double amount = b.atoms[jEnd].weight - recvB[jEnd];
    std::size_t v = na + jEnd;
    while (true) {
      const long p = parent[v];
      if (v < na) {
        if (p < 0) {
          amount = std::min(amount, a.atoms[v].weight - sentA[v]);
          break;
        }
        amount = std::min(amount, flow[v * nb + (static_cast<std::size_t>(p) - na)]);
      }
      v = static_cast<std::size_t>(p);
    }
    // Apply.
    recvB[jEnd] += amount;
    v = na + jEnd;
    while (true) {
      const long p = parent[v];
      if (v < na) {
        if (p < 0) {
          sentA[v] += amount;
          break;
        }
        flow[v * nb + (static_cast<std::size_t>(p) - na)] -= amount;
      } else {
        flow[static_cast<std::size_t>(p) * nb + (v - na)] += amount;
      }
      v = static_cast<std::size_t>(p);
    }
    cost += amount * pathCost;
    for (std::size_t k = 0; k < pi.size(); ++k) pi[k] += std::min(dist[k], dt);
  }
  return std::max(0.0, total + cost);
}

}  // namespace gmt
