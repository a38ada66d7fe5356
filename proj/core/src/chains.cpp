#include "gmtkit/chain.hpp"

#include "gmtkit/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace gmt {

template <class Ring>
Chain<Ring>::Chain(ComplexPtr complex, int level) : complex_(std::move(complex)), level_(level) {
  if (!complex_) throw InvalidInput("chain needs a complex");
  if (level_ < 0) level_ = complex_->chain_dim();
  if (level_ > complex_->chain_dim() + 1)
    throw DimensionError("chain level exceeds the complex's fill dimension");
}

template <class Ring>
Chain<Ring>::Chain(ComplexPtr complex, int level, std::vector<Term> terms)
    : Chain(std::move(complex), level) {
  const auto n = static_cast<CellId>(complex_->num_cells(level_));
  for (const Term& t : terms)
    if (t.cell < 0 || t.cell >= n)
      throw InvalidInput("chain coefficient on cell " + std::to_string(t.cell) +
                         " which does not exist at level " + std::to_string(level_));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.cell < b.cell; });
  for (std::size_t i = 0; i < terms.size();) {
    long sum = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].cell == terms[i].cell; ++j) sum += terms[j].coeff;
    sum = Ring::reduce(sum);
    if (sum != 0) terms_.push_back({terms[i].cell, sum});
    i = j;
  }
}

template <class Ring>
long Chain<Ring>::coeff(CellId cell) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), cell,
                             [](const Term& t, CellId c) { return t.cell < c; });
  return it != terms_.end() && it->cell == cell ? it->coeff : 0;
}

template <class Ring>
void Chain<Ring>::require_same_carrier(const Chain& other) const {
  if (complex_->id() != other.complex_->id() || level_ != other.level_)
    throw DimensionError("chains live on different complexes or levels");
}

template <class Ring>
Chain<Ring> Chain<Ring>::operator+(const Chain& other) const {
  require_same_carrier(other);
  std::vector<Term> all(terms_);
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Chain(complex_, level_, std::move(all));
}

template <class Ring>
Chain<Ring> Chain<Ring>::operator-() const {
  return scaled(-1);
}

template <class Ring>
Chain<Ring> Chain<Ring>::operator-(const Chain& other) const {
  return *this + (-other);
}

template <class Ring>
Chain<Ring> Chain<Ring>::scaled(long k) const {
  std::vector<Term> t(terms_);
  for (Term& x : t) x.coeff *= k;
  return Chain(complex_, level_, std::move(t));
}

template <class Ring>
Chain<Ring> boundary(const Chain<Ring>& a) {
  if (a.level() == 0) throw DimensionError("boundary of a 0-chain");
  std::vector<Term> out;
  for (const Term& t : a.terms())
    for (const Incidence& inc : a.complex()->boundary(a.level(), t.cell))
      out.push_back({inc.cell, t.coeff * inc.sign});
  return Chain<Ring>(a.complex(), a.level() - 1, std::move(out));
}

template <class Ring>
double mass_W(const Chain<Ring>& a, const Window& w) {
  const CellComplex& c = *a.complex();
  double m = 0;
  for (const Term& t : a.terms()) {
    const double mu = w.is_all() ? c.measure(a.level(), t.cell)
                                 : clipped_measure(c.cell(a.level(), t.cell), c.positions(), w);
    m += static_cast<double>(std::labs(t.coeff)) * mu;
  }
  return m;
}

template <class Ring>
std::vector<CellId> support(const Chain<Ring>& a) {
  std::vector<CellId> s;
  for (const Term& t : a.terms()) s.push_back(t.cell);
  return s;
}

namespace {

template <class Ring>
std::vector<std::vector<Point>> soup_of(const Chain<Ring>& a, std::vector<long>& coeffs,
                                        long sign = 1) {
  std::vector<std::vector<Point>> cells;
  for (const Term& t : a.terms()) {
    cells.push_back(a.complex()->vertices(a.level(), t.cell));
    coeffs.push_back(sign * t.coeff);
  }
  return cells;
}

}  // namespace

template <class Ring>
Chain<Ring> chain_from_soup(int ambientDim, int level, const std::vector<std::vector<Point>>& cells,
                            const std::vector<long>& coeffs) {
  const Arrangement arr = arrange(ambientDim, level, cells);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < arr.parents.size(); ++i) {
    long sum = 0;
    for (const ParentRef& p : arr.parents[i]) sum += coeffs[p.cell] * p.sign;
    terms.push_back({static_cast<CellId>(i), sum});
  }
  return Chain<Ring>(arr.complex, level, std::move(terms));
}

template <class Ring>
Chain<Ring> restrict(const Chain<Ring>& a, const Window& w, double maxDiam) {
  if (!(maxDiam > 0)) throw InvalidInput("restrict: maxDiam must be positive");
  if (w.is_all()) return a;
  if (a.level() != a.complex()->chain_dim()) {
    std::vector<long> coeffs;
    const auto cells = soup_of(a, coeffs);
    return restrict(chain_from_soup<Ring>(a.complex()->ambient_dim(), a.level(), cells, coeffs), w,
                    maxDiam);
  }
  const std::vector<CellId> supp = support(a);
  const Subdivision sub = subdivide_cells(a.complex(), supp, maxDiam);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < sub.map.parents.size(); ++i) {
    const auto id = static_cast<CellId>(i);
    if (!w.contains(sub.complex->centroid(a.level(), id))) continue;
    for (const ParentRef& p : sub.map.parents[i])
      terms.push_back({id, a.coeff(supp[p.cell]) * p.sign});
  }
  return Chain<Ring>(sub.complex, a.level(), std::move(terms));
}

template <class Ring>
Chain<Ring> pushforward_affine(const Chain<Ring>& a, const AffineMap& phi) {
  std::vector<long> coeffs;
  auto cells = soup_of(a, coeffs);
  for (auto& cell : cells)
    for (Point& p : cell) p = phi(p);
  return chain_from_soup<Ring>(phi.targetDim, a.level(), cells, coeffs);
}

template <class Ring>
Chain<Ring> geometric_difference(const Chain<Ring>& a, const Chain<Ring>& b) {
  if (a.complex()->ambient_dim() != b.complex()->ambient_dim() || a.level() != b.level())
    throw DimensionError("chains of different dimensions");
  std::vector<long> coeffs;
  auto cells = soup_of(a, coeffs);
  auto more = soup_of(b, coeffs, -1);
  cells.insert(cells.end(), more.begin(), more.end());
  return chain_from_soup<Ring>(a.complex()->ambient_dim(), a.level(), cells, coeffs);
}

template <class Ring>
Chain<Ring> transfer_to(const Chain<Ring>& a, const ComplexPtr& target) {
  if (a.complex()->id() == target->id()) return a;
  const int k = a.level();
  if (a.complex()->ambient_dim() != target->ambient_dim())
    throw DimensionError("transfer between different ambient dimensions");
  if (k > target->chain_dim()) throw DimensionError("target complex lacks the chain's level");
  std::vector<std::vector<Point>> cells;
  const auto nt = static_cast<CellId>(target->num_cells(k));
  for (CellId i = 0; i < nt; ++i) cells.push_back(target->vertices(k, i));
  std::vector<long> coeffs(cells.size(), 0);
  auto more = soup_of(a, coeffs);
  cells.insert(cells.end(), more.begin(), more.end());

  const Arrangement arr = arrange(target->ambient_dim(), k, cells);
  std::vector<long> value(nt, 0);
  std::vector<char> seen(nt, 0);
  for (const auto& parents : arr.parents) {
    long sum = 0;
    const ParentRef* host = nullptr;
    for (const ParentRef& p : parents) {
      if (p.cell < nt)
        host = host ? host : &p;
      else
        sum += coeffs[p.cell] * p.sign;
    }
    sum = Ring::reduce(sum);
    if (!host) {
      if (sum != 0) throw InvalidInput("chain is not carried by the target complex");
      continue;
    }
    const long v = Ring::reduce(sum * host->sign);
    if (seen[host->cell] && value[host->cell] != v)
      throw InvalidInput("chain coefficient varies across a cell of the target complex");
    seen[host->cell] = 1;
    value[host->cell] = v;
  }
  std::vector<Term> terms;
  for (CellId i = 0; i < nt; ++i)
    if (value[i] != 0) terms.push_back({i, value[i]});
  return Chain<Ring>(target, k, std::move(terms));
}

Mod2Chain to_mod2(const IntChain& a) {
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  return Mod2Chain(a.complex(), a.level(), std::move(t));
}

ComplexPtr lower_complex(const CellComplex& c) {
  const int m = c.chain_dim();
  if (m < 1) throw DimensionError("lower_complex needs chain dimension >= 1");
  auto lower = c.cells(m - 1);
  auto upper = c.cells(m);
  const auto pos = c.positions();
  return CellComplex::build(c.ambient_dim(), m - 1, {pos.begin(), pos.end()},
                            {lower.begin(), lower.end()}, {upper.begin(), upper.end()}, 0.0);
}

#define GMT_INSTANTIATE(R)                                                                   \
  template class Chain<R>;                                                                   \
  template Chain<R> boundary(const Chain<R>&);                                               \
  template double mass_W(const Chain<R>&, const Window&);                                    \
  template std::vector<CellId> support(const Chain<R>&);                                     \
  template Chain<R> restrict(const Chain<R>&, const Window&, double);                        \
  template Chain<R> chain_from_soup<R>(int, int, const std::vector<std::vector<Point>>&,     \
                                       const std::vector<long>&);                            \
  template Chain<R> pushforward_affine(const Chain<R>&, const AffineMap&);                   \
  template Chain<R> transfer_to(const Chain<R>&, const ComplexPtr&);                         \
  template Chain<R> geometric_difference(const Chain<R>&, const Chain<R>&);

GMT_INSTANTIATE(Mod2)
GMT_INSTANTIATE(Integer)

}  // namespace gmt
