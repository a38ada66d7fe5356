#include "gmtkit/convergence.hpp"

#include "gmtkit/errors.hpp"
#include "gmtkit/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace gmt {

namespace {

struct Setup {
  Family fam;
  std::vector<int> indices;
  std::vector<Window> windows;
  double tol;
};

Setup setup(const SequenceSpec& spec) {
  Setup s{family(spec.family, spec.layers, spec.sides), spec.indices, spec.windows, 0};
  if (s.indices.empty()) s.indices = s.fam.defaultRange;
  if (s.windows.empty()) s.windows = s.fam.windows;
  for (std::size_t k = 0; k < s.indices.size(); ++k) {
    if (s.indices[k] < 1) throw InvalidInput("index list: indices must be >= 1");
    if (k > 0 && s.indices[k] <= s.indices[k - 1]) throw InvalidInput("index list must be strictly increasing");
  }
  s.tol = spec.tol.value_or(s.fam.tol);
  if (!(s.tol > 0)) throw InvalidInput("tolerance must be positive");
  if (spec.jobs < 1) throw InvalidInput("jobs must be >= 1");
  if (!(spec.blMaxDiam > 0)) throw InvalidInput("bl maxDiam must be positive");
  return s;
}

// Runs f(k) for k in [0, n) on `jobs` threads; results are stored by the
// callee, exceptions are rethrown in index order.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) {
      try {
        f(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(jobs, static_cast<int>(n)); ++t)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next++) < n;) {
          try {
            f(k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

IntegralVarifold in_window(const IntegralVarifold& v, const Window& w, double maxDiam) {
  return w.is_all() ? v : restrict(v, w, maxDiam);
}

std::optional<double> bl_to(const IntegralVarifold& v, const VarifoldAtoms& limit, const Window& w, double maxDiam,
                            std::vector<std::string>& notes, std::mutex& mu) {
  try {
    return bl_distance(atoms(in_window(v, w, maxDiam), maxDiam), limit);
  } catch (const AtomBudget& e) {
    std::lock_guard lock(mu);
    notes.push_back(e.what());
    return std::nullopt;
  }
}

Mod2Chain declared_chain_limit(const Family& f) {
  if (f.limitChain) return *f.limitChain;
  if (f.limitVarifold) return to_mod2(*f.limitVarifold);
  throw InvalidInput("family " + f.id + " declares no limit chain");
}

template <class Ring>
FlatNormCert<Ring> boundary_distance(const Chain<Ring>& a, const std::optional<Chain<Ring>>& gamma,
                                     const ComplexPtr& fill, const Window& w, const SolverBudget& budget) {
  const Chain<Ring> bd = boundary(a);
  const ComplexPtr lower = lower_complex(*fill);
  if (gamma) return flat_dist(bd, *gamma, lower, w, budget);
  return flat_seminorm(bd, lower, w, budget);
}

struct Evaluated {
  std::vector<IndexRow> rows;
};

// Per-index quantities shared by the hypothesis and mod 2 modes.
std::vector<IndexRow> evaluate(const Setup& s, const SequenceSpec& spec, bool withFlat,
                               std::vector<std::string>& notes) {
  const Family& f = s.fam;
  const std::size_t nw = s.windows.size();
  std::vector<std::optional<VarifoldAtoms>> limitAtoms(nw);
  if (f.limitVarifold)
    for (std::size_t w = 0; w < nw; ++w)
      limitAtoms[w] = atoms(in_window(*f.limitVarifold, s.windows[w], spec.blMaxDiam), spec.blMaxDiam);
  std::optional<Mod2Chain> limit;
  if (withFlat && (f.limitChain || f.limitVarifold)) limit = declared_chain_limit(f);

  std::vector<IndexRow> rows(s.indices.size() * nw);
  std::mutex mu;
  parallel_for(s.indices.size(), spec.jobs, [&](std::size_t k) {
    const int i = s.indices[k];
    const FamilyMember m = f.member(i);
    const Mod2Chain chain = to_mod2(m.varifold);
    for (std::size_t w = 0; w < nw; ++w) {
      const Window& win = s.windows[w];
      IndexRow r;
      r.index = i;
      r.windowId = w;
      r.mass = mass_W(m.varifold, win);
      r.fvTotal = total_first_variation_W(m.varifold, win);
      if (limitAtoms[w]) r.blDist = bl_to(m.varifold, *limitAtoms[w], win, spec.blMaxDiam, notes, mu);
      if (limit) {
        const auto cert = flat_dist(chain, *limit, m.fill, win, spec.budget);
        r.flatDist = cert.value;
        r.flatExact = cert.exact;
      }
      const auto bcert = boundary_distance(chain, f.gamma, m.fill, win, spec.budget);
      r.boundaryDist = bcert.value;
      r.flatExact = r.flatExact && bcert.exact;
      rows[k * nw + w] = std::move(r);
    }
  });
  return rows;
}

template <class Get>
std::vector<double> column(const std::vector<IndexRow>& rows, std::size_t window, Get get) {
  std::vector<double> v;
  for (const IndexRow& r : rows)
    if (r.windowId == window) v.push_back(get(r));
  return v;
}

HypothesisFlags hypotheses_of(const Setup& s, const std::vector<IndexRow>& rows) {
  HypothesisFlags h{true, true, true};
  for (std::size_t w = 0; w < s.windows.size(); ++w) {
    h.massBounded = h.massBounded && looks_bounded(column(rows, w, [](const IndexRow& r) { return r.mass; }));
    h.fvBounded = h.fvBounded && looks_bounded(column(rows, w, [](const IndexRow& r) { return r.fvTotal; }));
    h.boundariesConverge =
        h.boundariesConverge &&
        looks_convergent(s.indices, column(rows, w, [](const IndexRow& r) { return r.boundaryDist.value_or(0); }),
                         s.tol);
  }
  return h;
}

std::vector<DensityProbe> density_probes(const Setup& s, const std::vector<int>& indices) {
  std::vector<Point> centers;
  for (const Window& w : s.windows)
    if (!w.is_all()) centers.push_back(w.kind() == Window::Kind::Ball ? w.center() : Point((w.lo() + w.hi()) / 2));
  if (centers.empty()) centers.push_back(Point(0.5, 0, 0));
  std::vector<DensityProbe> out;
  for (const Point& x : centers)
    for (double r : {0.25, 0.125, 0.0625}) {
      DensityProbe p{x, r, 0, 0};
      double lo = std::numeric_limits<double>::infinity();
      int dim = 1;
      for (int i : indices) {
        const auto m = s.fam.member(i);
        dim = m.varifold.dim();
        lo = std::min(lo, total_first_variation_W(m.varifold, Window::ball(x, r)));
      }
      p.liminfFv = lo;
      p.ratio = lo / std::pow(r, dim);
      out.push_back(p);
    }
  return out;
}

std::vector<int> last_quarter(const std::vector<int>& indices) {
  const std::size_t q = std::max<std::size_t>(1, indices.size() / 4);
  return {indices.end() - static_cast<long>(std::min(q, indices.size())), indices.end()};
}

ConvergenceReport base_report(const Setup& s, const char* mode) {
  ConvergenceReport r;
  r.family = s.fam.id;
  r.mode = mode;
  r.indices = s.indices;
  r.windows = s.windows;
  r.tol = s.tol;
  return r;
}

// Exact clip of a segment to an open window (the closure is kept).
std::optional<std::pair<Point, Point>> clip_segment(const Point& p, const Point& q, const Window& w) {
  double t0 = 0, t1 = 1;
  const Point d = q - p;
  if (w.kind() == Window::Kind::Ball) {
    const Point f = p - w.center();
    const double a = d.squaredNorm(), b = 2 * f.dot(d), c = f.squaredNorm() - w.radius() * w.radius();
    const double disc = b * b - 4 * a * c;
    if (disc <= 0) return std::nullopt;
    const double sq = std::sqrt(disc);
    t0 = std::max(t0, (-b - sq) / (2 * a));
    t1 = std::min(t1, (-b + sq) / (2 * a));
  } else if (w.kind() == Window::Kind::Box) {
    for (int k = 0; k < 3; ++k) {
      if (d[k] == 0) {
        if (w.lo()[k] == w.hi()[k]) continue;
        if (p[k] <= w.lo()[k] || p[k] >= w.hi()[k]) return std::nullopt;
        continue;
      }
      double a = (w.lo()[k] - p[k]) / d[k], b = (w.hi()[k] - p[k]) / d[k];
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
    }
  }
  if (t1 - t0 <= 1e-15) return std::nullopt;
  return std::make_pair(Point(p + t0 * d), Point(p + t1 * d));
}

}  // namespace

bool looks_bounded(const std::vector<double>& values) {
  if (values.empty()) return true;
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  for (std::size_t k = n - q; k < n; ++k)
    if (values[k] > 1.2 * median + 1e-12) return false;
  return true;
}

bool looks_convergent(const std::vector<int>& indices, const std::vector<double>& values, double tol) {
  if (values.empty()) return false;
  if (!(values.back() <= tol)) return false;
  const std::size_t n = values.size();
  const std::size_t q = std::max<std::size_t>(2, n / 4);
  const std::size_t start = n > q ? n - q : 0;
  double peak = 0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  std::vector<double> xs, ys;
  for (std::size_t k = start; k < n; ++k)
    if (values[k] > 1e-14 * std::max(1.0, peak)) {
      xs.push_back(std::log(static_cast<double>(indices[k])));
      ys.push_back(std::log(values[k]));
    }
  if (xs.size() < 2) return true;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return sxx > 0 && sxy / sxx < 0;
}

ConvergenceReport check_hypotheses(const SequenceSpec& spec) {
  const Setup s = setup(spec);
  ConvergenceReport r = base_report(s, "hypotheses");
  r.rows = evaluate(s, spec, false, r.notes);
  for (IndexRow& row : r.rows) row.verdict = "-";
  r.hypotheses = hypotheses_of(s, r.rows);
  r.boundaryDensity = density_probes(s, last_quarter(s.indices));
  return r;
}

ConvergenceReport verify_mod2_theorem(const SequenceSpec& spec) {
  const Setup s = setup(spec);
  ConvergenceReport r = base_report(s, "mod2");
  r.rows = evaluate(s, spec, true, r.notes);
  r.hypotheses = hypotheses_of(s, r.rows);
  r.boundaryDensity = density_probes(s, last_quarter(s.indices));

  bool exact = true;
  for (IndexRow& row : r.rows) {
    exact = exact && row.flatExact;
    row.verdict = row.flatDist && *row.flatDist <= s.tol ? "close" : "far";
  }
  if (r.rows.empty() || !r.rows.front().flatDist) {
    r.notes.push_back("no declared limit chain; conclusion not evaluated");
  } else if (!exact && !spec.allowInexact) {
    r.notes.push_back("inexact flat certificates; conclusion flags left undecided");
  } else {
    bool conv = true;
    for (std::size_t w = 0; w < s.windows.size(); ++w)
      conv = conv &&
             looks_convergent(s.indices, column(r.rows, w, [](const IndexRow& x) { return *x.flatDist; }), s.tol);
    r.conclusions.chainsConverge = conv;
  }
  if (s.fam.limitVarifold) {
    const Mod2Chain declared = to_mod2(*s.fam.limitVarifold);
    const Mod2Chain limit = declared_chain_limit(s.fam);
    bool match = true;
    for (const Window& w : s.windows)
      match = match && geometrically_equal(restrict(declared, w, 0.02), restrict(limit, w, 0.02));
    r.conclusions.limitsMatch = match;
  }
  if (!r.hypotheses.all()) {
    r.notes.push_back("hypotheses fail; observed behaviour recorded without asserting the theorem");
  } else if (r.conclusions.chainsConverge.has_value()) {
    r.theoremViolation = !*r.conclusions.chainsConverge || !r.conclusions.limitsMatch.value_or(true);
  }
  return r;
}

ConvergenceReport verify_lemma(const SequenceSpec& spec) {
  const Setup s = setup(spec);
  if (!s.fam.lemmaLayers || !s.fam.lemmaWindow)
    throw InvalidInput("family " + s.fam.id + " declares no sheet count for the lemma");
  ConvergenceReport r = base_report(s, "lemma");
  const int n = *s.fam.lemmaLayers;
  const Window ball = *s.fam.lemmaWindow;
  if (ball.kind() != Window::Kind::Ball) throw InvalidInput("lemma window must be a ball");
  r.windows = {ball};
  r.lemmaSheets = n;
  const Point c = ball.center();
  const double rad = ball.radius();
  // P is the horizontal line through the centre; pi is the coordinate along it.
  const AffineMap pi = AffineMap::linear_functional(Point(1, 0, 0));
  const auto sheet = varifold_from_soup(2, 1, {{Point(c.x() - rad, c.y(), 0), Point(c.x() + rad, c.y(), 0)}}, {n});
  const auto sheetAtoms = atoms(sheet, spec.blMaxDiam);

  r.lemma.resize(s.indices.size());
  r.rows.resize(s.indices.size());
  std::mutex mu;
  parallel_for(s.indices.size(), spec.jobs, [&](std::size_t k) {
    const int i = s.indices[k];
    const FamilyMember m = s.fam.member(i);
    if (m.varifold.dim() != 1 || m.varifold.complex()->ambient_dim() != 2)
      throw DimensionError("lemma harness handles curves in the plane");
    std::vector<std::vector<Point>> soup;
    std::vector<long> mult;
    for (const Term& t : m.varifold.terms()) {
      const auto v = m.varifold.complex()->vertices(1, t.cell);
      if (auto seg = clip_segment(v[0], v[1], ball)) {
        soup.push_back({seg->first, seg->second});
        mult.push_back(t.coeff);
      }
    }
    LemmaRow row{i, 2 * rad, 0, 0, 0};
    IndexRow ir;
    ir.index = i;
    ir.mass = mass_W(m.varifold, ball);
    ir.fvTotal = total_first_variation_W(m.varifold, ball);
    row.fvInBall = ir.fvTotal;
    if (!soup.empty()) {
      const auto w = varifold_from_soup(2, 1, soup, mult);
      row.blToSheets = bl_distance(atoms(w, spec.blMaxDiam), sheetAtoms);
      const auto theta = pushforward_affine(w, pi);
      std::map<long, double> byValue;
      double covered = 0;
      for (const Term& t : theta.terms()) {
        const double len = theta.complex()->measure(1, t.cell);
        byValue[t.coeff] += len;
        covered += len;
      }
      byValue[0] += std::max(0.0, 2 * rad - covered);
      row.badMeasure = 2 * rad - byValue[n];
      const auto best = std::max_element(byValue.begin(), byValue.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
      row.parity = static_cast<int>(best->first % 2);
    } else {
      row.blToSheets = sheetAtoms.total_weight();
    }
    ir.blDist = row.blToSheets;
    ir.verdict = "theta_parity=" + std::to_string(row.parity);
    std::lock_guard lock(mu);
    r.lemma[k] = row;
    r.rows[k] = ir;
  });

  std::vector<double> bl, fv, bad;
  for (const LemmaRow& row : r.lemma) {
    bl.push_back(row.blToSheets);
    fv.push_back(row.fvInBall);
    bad.push_back(std::max(0.0, row.badMeasure));
  }
  // Hypotheses (i) and (ii) of the lemma; (iii) is the mod 2 convergence checked
  // by verify_mod2_theorem.
  r.hypotheses.massBounded = looks_bounded(column(r.rows, 0, [](const IndexRow& x) { return x.mass; }));
  r.hypotheses.fvBounded = looks_convergent(s.indices, fv, s.tol);
  r.hypotheses.boundariesConverge = looks_convergent(s.indices, bl, s.tol);
  r.recoveredParity = r.lemma.empty() ? 0 : r.lemma.back().parity;
  if (r.hypotheses.all()) {
    r.lemmaHolds = looks_convergent(s.indices, bad, s.tol) && *r.recoveredParity == n % 2;
    r.theoremViolation = !*r.lemmaHolds;
  } else {
    r.notes.push_back("lemma hypotheses fail; conclusion not asserted");
  }
  return r;
}

ConvergenceReport verify_integer_theorem(const SequenceSpec& spec) {
  const Setup s = setup(spec);
  if (!s.fam.limitCurrent || !s.fam.limitVarifold)
    throw InvalidInput("family " + s.fam.id + " declares no limit current");
  ConvergenceReport r = base_report(s, "integer");
  const std::size_t nw = s.windows.size();
  r.rows.resize(s.indices.size() * nw);
  std::vector<char> pairOk(s.indices.size(), 0);
  const std::optional<IntChain> gammaInt = boundary(*s.fam.limitCurrent);
  parallel_for(s.indices.size(), spec.jobs, [&](std::size_t k) {
    const int i = s.indices[k];
    const FamilyMember m = s.fam.member(i);
    if (!m.current) throw InvalidInput("family " + s.fam.id + " does not generate currents");
    const bool ok = compatible(*m.current, m.varifold).ok;
    pairOk[k] = ok;
    for (std::size_t w = 0; w < nw; ++w) {
      const Window& win = s.windows[w];
      IndexRow row;
      row.index = i;
      row.windowId = w;
      row.mass = mass_W(m.varifold, win);
      row.fvTotal = total_first_variation_W(m.varifold, win);
      const auto cert = flat_dist(*m.current, *s.fam.limitCurrent, m.fill, win, spec.budget);
      row.flatDist = cert.value;
      row.flatExact = cert.exact;
      const auto bcert = boundary_distance<Integer>(*m.current, gammaInt, m.fill, win, spec.budget);
      row.boundaryDist = bcert.value;
      row.flatExact = row.flatExact && bcert.exact;
      row.verdict = ok ? "compatible" : "incompatible";
      r.rows[k * nw + w] = std::move(row);
    }
  });

  const bool allPairs = std::all_of(pairOk.begin(), pairOk.end(), [](char c) { return c != 0; });
  r.hypotheses.massBounded = true;
  r.hypotheses.fvBounded = allPairs;
  r.hypotheses.boundariesConverge = true;
  bool exact = true, conv = true;
  for (std::size_t w = 0; w < nw; ++w) {
    r.hypotheses.massBounded =
        r.hypotheses.massBounded && looks_bounded(column(r.rows, w, [](const IndexRow& x) { return x.mass; }));
    r.hypotheses.boundariesConverge =
        r.hypotheses.boundariesConverge &&
        looks_convergent(s.indices, column(r.rows, w, [](const IndexRow& x) { return *x.boundaryDist; }), s.tol);
    conv = conv && looks_convergent(s.indices, column(r.rows, w, [](const IndexRow& x) { return *x.flatDist; }), s.tol);
  }
  for (const IndexRow& row : r.rows) exact = exact && row.flatExact;
  if (!allPairs) r.notes.push_back("some generated pairs are not compatible");
  if (exact || spec.allowInexact) r.conclusions.chainsConverge = conv;
  else r.notes.push_back("inexact flat certificates; convergence left undecided");

  bool compat = true;
  double witness = 0;
  const auto whole = compatible(*s.fam.limitCurrent, *s.fam.limitVarifold);
  for (const Window& w : s.windows) {
    const IntChain a = restrict(*s.fam.limitCurrent, w, spec.blMaxDiam);
    const IntegralVarifold v = in_window(*s.fam.limitVarifold, w, spec.blMaxDiam);
    const IntChain aa = w.is_all() ? a : transfer_to(a, v.complex());
    const auto c = compatible(aa, v);
    compat = compat && c.ok;
    if (c.ok) witness += whole.ok ? mass_W(*whole.witness, w) : mass(*c.witness);
  }
  r.conclusions.limitCompatible = compat;
  if (compat) r.witnessMass = witness;
  if (!r.hypotheses.all()) {
    r.notes.push_back("hypotheses fail; observed behaviour recorded without asserting the theorem");
  } else {
    r.theoremViolation = !compat || !r.conclusions.chainsConverge.value_or(true);
  }
  return r;
}

ConvergenceReport cauchy_diagnostic(const SequenceSpec& spec) {
  const Setup s = setup(spec);
  if (s.indices.size() < 2) throw InvalidInput("cauchy diagnostic needs at least two indices");
  ConvergenceReport r = base_report(s, "cauchy");
  const std::size_t nw = s.windows.size();
  const std::size_t np = s.indices.size() - 1;
  r.rows.resize(np * nw);
  parallel_for(np, spec.jobs, [&](std::size_t k) {
    const int i = s.indices[k], j = s.indices[k + 1];
    const int both[] = {i, j};
    const ComplexPtr fill = s.fam.fill(both);
    const auto a = to_mod2(s.fam.member(i).varifold);
    const auto mj = s.fam.member(j);
    const auto b = to_mod2(mj.varifold);
    for (std::size_t w = 0; w < nw; ++w) {
      IndexRow row;
      row.index = j;
      row.windowId = w;
      row.mass = mass_W(mj.varifold, s.windows[w]);
      row.fvTotal = total_first_variation_W(mj.varifold, s.windows[w]);
      const auto cert = flat_dist(a, b, fill, s.windows[w], spec.budget);
      row.flatDist = cert.value;
      row.flatExact = cert.exact;
      row.verdict = "from_" + std::to_string(i);
      r.rows[k * nw + w] = std::move(row);
    }
  });
  const std::vector<int> to(s.indices.begin() + 1, s.indices.end());
  bool cauchy = true, exact = true;
  for (std::size_t w = 0; w < nw; ++w)
    cauchy = cauchy && looks_convergent(to, column(r.rows, w, [](const IndexRow& x) { return *x.flatDist; }), s.tol);
  for (const IndexRow& row : r.rows) exact = exact && row.flatExact;
  if (exact || spec.allowInexact) r.cauchyLike = cauchy;
  else r.notes.push_back("inexact flat certificates; Cauchy flag left undecided");
  return r;
}

std::string report_csv(const ConvergenceReport& r) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const IndexRow& row : r.rows) {
    out += std::to_string(row.index) + "," + std::to_string(row.windowId) + "," + format_number(row.mass) + "," +
           format_number(row.fvTotal) + "," + opt(row.blDist) + "," + opt(row.flatDist) + "," +
           (row.flatExact ? "true" : "false") + "," + opt(row.boundaryDist) + "," + row.verdict + "\n";
  }
  return out;
}

nlohmann::json report_summary(const ConvergenceReport& r) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["family"] = r.family;
  j["mode"] = r.mode;
  j["indices"] = r.indices;
  json ws = json::array();
  for (const Window& w : r.windows) ws.push_back(window_to_string(w));
  j["windows"] = ws;
  j["tol"] = r.tol;
  j["hypotheses"] = {{"massBounded", r.hypotheses.massBounded},
                     {"fvBounded", r.hypotheses.fvBounded},
                     {"boundariesConverge", r.hypotheses.boundariesConverge}};
  j["conclusions"] = {{"chainsConverge", opt(r.conclusions.chainsConverge)},
                      {"limitsMatch", opt(r.conclusions.limitsMatch)},
                      {"limitCompatible", opt(r.conclusions.limitCompatible)}};
  j["theoremViolation"] = r.theoremViolation;
  if (r.lemmaSheets) {
    json rows = json::array();
    for (const LemmaRow& l : r.lemma)
      rows.push_back({{"index", l.index},
                      {"bad_measure", l.badMeasure},
                      {"parity", l.parity},
                      {"bl_to_sheets", l.blToSheets},
                      {"fv_in_ball", l.fvInBall}});
    j["lemma"] = {{"sheets", *r.lemmaSheets},
                  {"recoveredParity", opt(r.recoveredParity)},
                  {"holds", opt(r.lemmaHolds)},
                  {"rows", rows}};
  }
  if (!r.boundaryDensity.empty()) {
    json probes = json::array();
    for (const DensityProbe& p : r.boundaryDensity)
      probes.push_back({{"x", {p.x.x(), p.x.y()}}, {"r", p.r}, {"liminf_fv", p.liminfFv}, {"ratio", p.ratio}});
    j["boundaryDensity"] = probes;
  }
  if (r.witnessMass) j["witnessMass"] = *r.witnessMass;
  if (r.cauchyLike) j["cauchyLike"] = *r.cauchyLike;
  j["notes"] = r.notes;
  return j;
}

}  // namespace gmt
