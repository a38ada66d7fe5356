#include <gmtkit/gmtkit.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace gmt;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct Common {
  std::string window = "all";
  std::size_t budget = 1'000'000;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* app, Common& c, bool withTol = false) {
  app->add_option("--window", c.window, "all | ball:cx,cy,r | box:x0,y0,x1,y1");
  app->add_option("--budget", c.budget, "search node budget of the flat-norm solver")->check(CLI::PositiveNumber);
  if (withTol) app->add_option("--tol", c.tol, "convergence tolerance")->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "output file (directory for gen and verify)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::vector<double> numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string_view s(text);
  while (true) {
    const auto comma = s.find(',');
    const auto piece = s.substr(0, comma);
    double v = 0;
    const auto r = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (r.ec != std::errc() || r.ptr != piece.data() + piece.size() || !std::isfinite(v))
      throw InvalidInput(what + ": '" + std::string(piece) + "' is not a number");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

Point point_arg(const std::string& text, const std::string& what) {
  const auto v = numbers(text, what);
  if (v.empty() || v.size() > 3) throw InvalidInput(what + ": expected 1 to 3 coordinates");
  Point p = Point::Zero();
  for (std::size_t k = 0; k < v.size(); ++k) p[static_cast<Eigen::Index>(k)] = v[k];
  return p;
}

std::vector<int> index_range(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  auto parse = [&](std::string_view s) {
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw InvalidInput("range '" + text + "' is malformed");
    return v;
  };
  if (dots != std::string::npos) {
    const int lo = parse(std::string_view(text).substr(0, dots)), hi = parse(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw InvalidInput("range '" + text + "' is empty");
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  for (double v : numbers(text, "range")) {
    if (v != std::floor(v)) throw InvalidInput("range '" + text + "' must list integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

enum class Kind { Chain, Varifold };

Kind kind_of(const fs::path& p) {
  const json j = read_json_file(p);
  if (j.is_object() && j.contains("mult")) return Kind::Varifold;
  if (j.is_object() && j.contains("coeffs")) return Kind::Chain;
  throw FileError(p.string(), 0, "<root>", "neither a chain (coeffs) nor a varifold (mult)");
}

fs::path complex_ref(const fs::path& file) {
  const json j = read_json_file(file);
  const fs::path ref = j.at("complex").get<std::string>();
  return ref.is_absolute() ? ref : file.parent_path() / ref;
}

std::string relative_ref(const fs::path& target, const fs::path& outFile) {
  const fs::path base = outFile.has_parent_path() ? outFile.parent_path() : fs::path(".");
  return fs::relative(fs::absolute(target), fs::absolute(base)).generic_string();
}

// Output chains on a new complex store the complex next to the output file.
fs::path sidecar(const fs::path& out) {
  fs::path p = out;
  p.replace_extension();
  return fs::path(p.string() + ".complex.json");
}

void emit(const Common& c, const json& j) {
  if (c.format == "csv" && j.is_object()) {
    std::string s = "name,value\n";
    for (const auto& [k, v] : j.items()) {
      if (v.is_number_float()) s += k + "," + format_number(v.get<double>()) + "\n";
      else if (v.is_primitive()) s += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    if (c.out.empty()) std::cout << s;
    else write_text_file(c.out, s);
    return;
  }
  if (c.out.empty()) std::cout << j.dump(2) << "\n";
  else write_json_file(c.out, j);
}

template <class Ring>
json write_chain_on_new_complex(const Chain<Ring>& a, const Common& c) {
  if (c.out.empty()) {
    json j = chain_to_json(a, "<inline>");
    j["complex"] = complex_to_json(*a.complex());
    return j;
  }
  const fs::path cx = sidecar(c.out);
  write_json_file(cx, complex_to_json(*a.complex()));
  return chain_to_json(a, relative_ref(cx, c.out));
}

json write_varifold_on_new_complex(const IntegralVarifold& v, const Common& c) {
  if (c.out.empty()) {
    json j = varifold_to_json(v, "<inline>");
    j["complex"] = complex_to_json(*v.complex());
    return j;
  }
  const fs::path cx = sidecar(c.out);
  write_json_file(cx, complex_to_json(*v.complex()));
  return varifold_to_json(v, relative_ref(cx, c.out));
}

ComplexPtr fill_for(const ComplexPtr& fill, int level) {
  if (level == fill->chain_dim()) return fill;
  if (level == fill->chain_dim() - 1) return lower_complex(*fill);
  throw DimensionError("chain level " + std::to_string(level) + " cannot be filled in this complex");
}

template <class Ring>
json flat_report(const FlatNormCert<Ring>& cert) {
  json j = cert_to_json(cert);
  return j;
}

int run_verify(const std::string& mode, const SequenceSpec& spec, const std::string& outDir, const Common& c) {
  ConvergenceReport r;
  if (mode == "mod2") r = verify_mod2_theorem(spec);
  else if (mode == "lemma") r = verify_lemma(spec);
  else if (mode == "integer") r = verify_integer_theorem(spec);
  else if (mode == "hypotheses") r = check_hypotheses(spec);
  else r = cauchy_diagnostic(spec);
  const json summary = report_summary(r);
  const std::string csv = report_csv(r);
  if (!outDir.empty()) {
    write_text_file(fs::path(outDir) / "report.csv", csv);
    write_json_file(fs::path(outDir) / "summary.json", summary);
  }
  if (c.format == "csv") std::cout << csv;
  else std::cout << summary.dump(2) << "\n";
  if (r.theoremViolation) {
    std::cerr << "theorem violation: hypotheses pass but the conclusion fails\n";
    return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmtkit: polyhedral chains, integral varifolds and flat convergence"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gmtkit 0.1.0");

  Common common;
  int status = 0;

  // gen
  std::string genFamily, genIndex;
  int genLayers = 3, genSides = 64;
  auto* gen = app.add_subcommand("gen", "write a family member (or its limit with index 'limit')");
  gen->add_option("family", genFamily, "family id")->required();
  gen->add_option("index", genIndex, "index or 'limit'")->required();
  gen->add_option("--layers", genLayers, "layer count for the layers family")->check(CLI::PositiveNumber);
  gen->add_option("--sides", genSides, "polygon sides for circle families")->check(CLI::Range(8, 100000));
  add_common(gen, common);
  gen->callback([&] {
    if (common.out.empty()) throw InvalidInput("gen: --out directory is required");
    const Family f = family(genFamily, genLayers, genSides);
    const fs::path dir = common.out;
    json meta;
    meta["family"] = f.id;
    meta["parameter"] = f.parameter;
    if (genIndex == "limit") {
      meta["index"] = "limit";
      const ComplexPtr cx = f.limitVarifold ? f.limitVarifold->complex()
                            : f.limitChain  ? f.limitChain->complex()
                                            : throw InvalidInput("family " + f.id + " declares no limit");
      write_json_file(dir / "complex.json", complex_to_json(*cx));
      if (f.limitVarifold) {
        write_json_file(dir / "varifold.json", varifold_to_json(*f.limitVarifold, "complex.json"));
        if (!f.limitChain || f.limitChain->complex() == cx)
          write_json_file(dir / "chain.json", chain_to_json(f.limitChain ? *f.limitChain : to_mod2(*f.limitVarifold), "complex.json"));
      } else {
        write_json_file(dir / "chain.json", chain_to_json(*f.limitChain, "complex.json"));
      }
      if (f.limitCurrent && f.limitCurrent->complex() == cx)
        write_json_file(dir / "current.json", chain_to_json(*f.limitCurrent, "complex.json"));
    } else {
      const int i = index_range(genIndex).at(0);
      const FamilyMember m = f.member(i);
      meta["index"] = i;
      meta["expectations"] = expectations_to_json(m.expect);
      write_json_file(dir / "complex.json", complex_to_json(*m.fill));
      write_json_file(dir / "varifold.json", varifold_to_json(m.varifold, "complex.json"));
      write_json_file(dir / "chain.json", chain_to_json(to_mod2(m.varifold), "complex.json"));
      if (m.current) write_json_file(dir / "current.json", chain_to_json(*m.current, "complex.json"));
    }
    write_json_file(dir / "meta.json", meta);
  });

  // boundary
  std::string inA, inB, fillPath;
  auto* bnd = app.add_subcommand("boundary", "boundary of a chain");
  bnd->add_option("chain", inA, "chain file")->required()->check(CLI::ExistingFile);
  add_common(bnd, common);
  bnd->callback([&] {
    const AnyChain a = load_chain(inA);
    std::visit(
        [&](const auto& ch) {
          const auto b = boundary(ch);
          const std::string ref = common.out.empty() ? complex_ref(inA).string() : relative_ref(complex_ref(inA), common.out);
          emit(common, chain_to_json(b, ref));
        },
        a);
  });

  // mass
  auto* massCmd = app.add_subcommand("mass", "mass of a chain or varifold inside a window");
  massCmd->add_option("input", inA, "chain or varifold file")->required()->check(CLI::ExistingFile);
  add_common(massCmd, common);
  massCmd->callback([&] {
    const Window w = parse_window(common.window);
    json j;
    if (kind_of(inA) == Kind::Varifold) {
      j["mass"] = mass_W(load_varifold(inA), w);
    } else {
      j["mass"] = std::visit([&](const auto& ch) { return mass_W(ch, w); }, load_chain(inA));
    }
    j["window"] = window_to_string(w);
    emit(common, j);
  });

  // flatnorm / flatdist
  std::string method;
  bool allowInexact = false;
  auto solver_budget = [&] {
    SolverBudget b;
    b.maxNodes = common.budget;
    if (!method.empty()) b.method = flat_method_from_string(method);
    return b;
  };
  auto* fn = app.add_subcommand("flatnorm", "flat seminorm of a chain relative to a fill complex");
  fn->add_option("chain", inA, "chain file")->required()->check(CLI::ExistingFile);
  fn->add_option("--fill", fillPath, "fill complex file")->required()->check(CLI::ExistingFile);
  fn->add_option("--method", method, "planar_mincut | exhaustive | frontier_dp | branch_and_bound");
  add_common(fn, common);
  fn->callback([&] {
    const ComplexPtr fill = load_complex(fillPath);
    const Window w = parse_window(common.window, fill->ambient_dim());
    std::visit(
        [&](const auto& ch) { emit(common, flat_report(flat_seminorm(ch, fill_for(fill, ch.level()), w, solver_budget()))); },
        load_chain(inA));
  });
  auto* fd = app.add_subcommand("flatdist", "flat distance between two chains");
  fd->add_option("a", inA, "chain file")->required()->check(CLI::ExistingFile);
  fd->add_option("b", inB, "chain file")->required()->check(CLI::ExistingFile);
  fd->add_option("--fill", fillPath, "fill complex file")->required()->check(CLI::ExistingFile);
  fd->add_option("--method", method, "planar_mincut | exhaustive | frontier_dp | branch_and_bound");
  add_common(fd, common);
  fd->callback([&] {
    const ComplexPtr fill = load_complex(fillPath);
    const Window w = parse_window(common.window, fill->ambient_dim());
    const AnyChain a = load_chain(inA), b = load_chain(inB);
    if (a.index() != b.index()) throw InvalidInput("flatdist: both chains need the same coefficient type");
    if (std::holds_alternative<Mod2Chain>(a)) {
      const auto& x = std::get<Mod2Chain>(a);
      emit(common, flat_report(flat_dist(x, std::get<Mod2Chain>(b), fill_for(fill, x.level()), w, solver_budget())));
    } else {
      const auto& x = std::get<IntChain>(a);
      emit(common, flat_report(flat_dist(x, std::get<IntChain>(b), fill_for(fill, x.level()), w, solver_budget())));
    }
  });

  // bldist
  double maxDiam = 0.02;
  std::size_t atomLimit = kDefaultAtomLimit;
  auto* bl = app.add_subcommand("bldist", "bounded-Lipschitz distance between two varifolds");
  bl->add_option("a", inA, "varifold file")->required()->check(CLI::ExistingFile);
  bl->add_option("b", inB, "varifold file")->required()->check(CLI::ExistingFile);
  bl->add_option("--max-diam", maxDiam, "atom cell diameter")->check(CLI::PositiveNumber);
  bl->add_option("--atom-limit", atomLimit, "largest accepted atom count")->check(CLI::PositiveNumber);
  add_common(bl, common);
  bl->callback([&] {
    const Window w = parse_window(common.window);
    auto side = [&](const std::string& p) {
      const IntegralVarifold v = load_varifold(p);
      return atoms(w.is_all() ? v : restrict(v, w, maxDiam), maxDiam);
    };
    json j;
    j["bl"] = bl_distance(side(inA), side(inB), atomLimit);
    j["max_diam"] = maxDiam;
    emit(common, j);
  });

  // density
  std::string at;
  auto* dens = app.add_subcommand("density", "density of a varifold at a point");
  dens->add_option("varifold", inA, "varifold file")->required()->check(CLI::ExistingFile);
  dens->add_option("--at", at, "x,y")->required();
  add_common(dens, common);
  dens->callback([&] {
    json j;
    j["density"] = density_at(load_varifold(inA), point_arg(at, "--at"));
    emit(common, j);
  });

  // pushforward
  std::string matrix, offset = "";
  auto* pf = app.add_subcommand("pushforward", "push a chain or varifold forward by an affine map");
  pf->add_option("input", inA, "chain or varifold file")->required()->check(CLI::ExistingFile);
  pf->add_option("--matrix", matrix, "row-major entries of L (target dimension = entries / source dimension)")->required();
  pf->add_option("--offset", offset, "translation b");
  add_common(pf, common);
  pf->callback([&] {
    const bool isVar = kind_of(inA) == Kind::Varifold;
    const ComplexPtr cx = load_complex(complex_ref(inA));
    const int n = cx->ambient_dim();
    const auto entries = numbers(matrix, "--matrix");
    if (entries.size() % static_cast<std::size_t>(n) != 0 || entries.size() / static_cast<std::size_t>(n) > 3)
      throw InvalidInput("--matrix: expected a multiple of " + std::to_string(n) + " entries");
    AffineMap phi;
    phi.targetDim = static_cast<int>(entries.size()) / n;
    phi.L.setZero();
    for (int r = 0; r < phi.targetDim; ++r)
      for (int k = 0; k < n; ++k) phi.L(r, k) = entries[static_cast<std::size_t>(r * n + k)];
    if (!offset.empty()) {
      const auto b = numbers(offset, "--offset");
      if (static_cast<int>(b.size()) != phi.targetDim) throw InvalidInput("--offset: expected target-dimension entries");
      for (int r = 0; r < phi.targetDim; ++r) phi.b[r] = b[static_cast<std::size_t>(r)];
    }
    if (isVar) {
      emit(common, write_varifold_on_new_complex(pushforward_affine(load_varifold(inA), phi), common));
    } else {
      std::visit([&](const auto& ch) { emit(common, write_chain_on_new_complex(pushforward_affine(ch, phi), common)); },
                 load_chain(inA));
    }
  });

  // dilate
  double lambda = 1;
  auto* dil = app.add_subcommand("dilate", "eta_{x,lambda}# V");
  dil->add_option("varifold", inA, "varifold file")->required()->check(CLI::ExistingFile);
  dil->add_option("--at", at, "x,y")->required();
  dil->add_option("--lambda", lambda, "scale")->required()->check(CLI::PositiveNumber);
  add_common(dil, common);
  dil->callback([&] {
    emit(common, write_varifold_on_new_complex(dilate(load_varifold(inA), point_arg(at, "--at"), lambda), common));
  });

  // tomod2
  auto* tm = app.add_subcommand("tomod2", "mod 2 projection of a varifold or integer chain");
  tm->add_option("input", inA, "varifold or integer chain file")->required()->check(CLI::ExistingFile);
  add_common(tm, common);
  tm->callback([&] {
    Mod2Chain z = [&] {
      if (kind_of(inA) == Kind::Varifold) return to_mod2(load_varifold(inA));
      const AnyChain a = load_chain(inA);
      if (std::holds_alternative<Mod2Chain>(a)) return std::get<Mod2Chain>(a);
      return to_mod2(std::get<IntChain>(a));
    }();
    const std::string ref = common.out.empty() ? complex_ref(inA).string() : relative_ref(complex_ref(inA), common.out);
    emit(common, chain_to_json(z, ref));
  });

  // compat
  auto* cp = app.add_subcommand("compat", "whether V = v(A) + 2W for an integral varifold W");
  cp->add_option("current", inA, "integer chain file")->required()->check(CLI::ExistingFile);
  cp->add_option("varifold", inB, "varifold file")->required()->check(CLI::ExistingFile);
  add_common(cp, common);
  cp->callback([&] {
    const AnyChain a = load_chain(inA);
    if (!std::holds_alternative<IntChain>(a)) throw InvalidInput("compat: the chain must have coeff_type int");
    const auto c = compatible(std::get<IntChain>(a), load_varifold(inB));
    json j;
    j["compatible"] = c.ok;
    if (c.ok) {
      j["witness_mass"] = mass(*c.witness);
      j["witness"] = write_varifold_on_new_complex(*c.witness, Common{});
    } else {
      j["offending_point"] = {c.offendingPoint->x(), c.offendingPoint->y(), c.offendingPoint->z()};
      j["offending_difference"] = c.offendingDifference;
    }
    emit(common, j);
  });

  // firstvar
  auto* fv = app.add_subcommand("firstvar", "total first variation inside a window");
  fv->add_option("varifold", inA, "varifold file")->required()->check(CLI::ExistingFile);
  add_common(fv, common);
  fv->callback([&] {
    const IntegralVarifold v = load_varifold(inA);
    const Window w = parse_window(common.window, v.complex()->ambient_dim());
    const auto m = first_variation(v);
    json j;
    j["total"] = total_first_variation_W(m, w);
    j["window"] = window_to_string(w);
    json atomsJ = json::array();
    for (const auto& a : m.atoms) {
      const Point c = m.complex->centroid(v.dim() - 1, a.face);
      atomsJ.push_back({{"at", {c.x(), c.y(), c.z()}},
                        {"conormal", {a.conormalSum.x(), a.conormalSum.y(), a.conormalSum.z()}},
                        {"face_measure", a.faceMeasure}});
    }
    if (common.format == "json") j["atoms"] = atomsJ;
    emit(common, j);
  });

  // verify / cauchy
  std::string mode, famId, range, windowsList;
  int jobs = 1, famLayers = 3, famSides = 64;
  std::vector<std::string> windows;
  auto add_sequence = [&](CLI::App* c) {
    c->add_option("--family", famId, "family id")->required();
    c->add_option("--range", range, "a..b or a comma-separated index list");
    c->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--windows", windows, "several windows (repeatable)");
    c->add_option("--layers", famLayers, "layer count for the layers family")->check(CLI::PositiveNumber);
    c->add_option("--sides", famSides, "polygon sides for circle families")->check(CLI::Range(8, 100000));
    c->add_option("--max-diam", maxDiam, "atom diameter for BL distances")->check(CLI::PositiveNumber);
    c->add_flag("--allow-inexact", allowInexact, "decide flags from inexact certificates too");
    add_common(c, common, true);
  };
  auto make_spec = [&] {
    SequenceSpec s;
    s.family = famId;
    s.layers = famLayers;
    s.sides = famSides;
    if (!range.empty()) s.indices = index_range(range);
    for (const auto& w : windows) s.windows.push_back(parse_window(w));
    if (common.window != "all" && windows.empty()) s.windows.push_back(parse_window(common.window));
    s.budget.maxNodes = common.budget;
    s.blMaxDiam = maxDiam;
    s.tol = common.tol;
    s.allowInexact = allowInexact;
    s.jobs = jobs;
    return s;
  };
  auto* ver = app.add_subcommand("verify", "check a theorem on a generated sequence");
  ver->add_option("mode", mode, "mod2 | lemma | integer | hypotheses")
      ->required()
      ->check(CLI::IsMember({"mod2", "lemma", "integer", "hypotheses"}));
  add_sequence(ver);
  ver->callback([&] { status = run_verify(mode, make_spec(), common.out, common); });
  auto* cau = app.add_subcommand("cauchy", "flat distances between consecutive members");
  add_sequence(cau);
  cau->callback([&] { status = run_verify("cauchy", make_spec(), common.out, common); });

  // mcf-run
  std::string csvPath;
  FlowParams flow;
  auto* mr = app.add_subcommand("mcf-run", "polygonal curve-shortening flow");
  mr->add_option("--input", inA, "varifold of closed loops")->required()->check(CLI::ExistingFile);
  mr->add_option("--steps", flow.maxSteps, "maximum number of steps")->check(CLI::PositiveNumber);
  mr->add_option("--csv", csvPath, "per-step CSV output");
  mr->add_option("--dt-safety", flow.dtSafety, "c in dt = c * (min edge)^2")->check(CLI::Range(1e-6, 0.5));
  mr->add_option("--min-edge", flow.minEdge, "coarsening threshold")->check(CLI::PositiveNumber);
  mr->add_option("--max-edge", flow.maxEdge, "refinement threshold")->check(CLI::PositiveNumber);
  mr->add_option("--extinction-mass", flow.extinctionMassTol, "mass below which a loop is removed")
      ->check(CLI::PositiveNumber);
  add_common(mr, common);
  mr->callback([&] {
    FlowState s = initial_state(load_varifold(inA));
    std::optional<FlowDiagnosticFailure> failure;
    try {
      run(s, flow);
    } catch (const FlowDiagnosticFailure& e) {
      failure = e;
    }
    if (!csvPath.empty()) write_text_file(csvPath, flow_csv(s));
    json j;
    j["steps"] = s.history.size() - 1;
    j["t"] = s.t;
    j["mass"] = s.mass();
    j["extinction_time"] = s.extinctionTime ? json(*s.extinctionTime) : json(nullptr);
    j["note"] = "single-flow invariants only; convergence of sequences of flows is not assessed";
    if (failure) j["failure"] = failure->what();
    emit(common, j);
    if (failure) {
      std::cerr << failure->what() << "\n";
      status = kExitViolation;
    }
  });

  // mcf-junction
  std::string rays;
  double radius = 1;
  auto* mj = app.add_subcommand("mcf-junction", "parity of a static junction of rays");
  mj->add_option("--rays", rays, "dx,dy:k;dx,dy:k;... (k defaults to 1)")->required();
  mj->add_option("--radius", radius, "ball radius")->check(CLI::PositiveNumber);
  mj->add_option("--center", at, "x,y");
  add_common(mj, common);
  mj->callback([&] {
    JunctionConfig cfg;
    cfg.radius = radius;
    if (!at.empty()) cfg.center = point_arg(at, "--center");
    std::string_view s(rays);
    while (!s.empty()) {
      const auto semi = s.find(';');
      const std::string item(s.substr(0, semi));
      const auto colon = item.find(':');
      Ray r;
      r.direction = point_arg(item.substr(0, colon), "--rays");
      if (colon != std::string::npos) {
        const auto k = numbers(item.substr(colon + 1), "--rays");
        if (k.size() != 1 || k[0] != std::floor(k[0])) throw InvalidInput("--rays: multiplicity must be an integer");
        r.mult = static_cast<long>(k[0]);
      }
      cfg.rays.push_back(r);
      if (semi == std::string_view::npos) break;
      s.remove_prefix(semi + 1);
    }
    const auto v = junction_parity(cfg);
    json j;
    j["parity"] = v.odd ? "odd" : "even";
    j["boundary_mass"] = v.boundaryMass;
    j["verdict"] = v.verdict;
    emit(common, j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  } catch (const FlowDiagnosticFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const MissingFace& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DuplicateCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return status;
}
