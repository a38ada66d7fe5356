#include "gmtkit/io.hpp"

#include "gmtkit/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gmt {

namespace {

// Content error inside a JSON document; loaders attach the file and line.
class FieldError : public InvalidInput {
 public:
  FieldError(std::string field, const std::string& what)
      : InvalidInput(field + ": " + what), field_(std::move(field)), what_(what) {}
  const std::string& field() const { return field_; }
  const std::string& detail() const { return what_; }

 private:
  std::string field_;
  std::string what_;
};

const json& member(const json& j, const char* key) {
  if (!j.is_object()) throw FieldError("<root>", "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FieldError(key, "missing");
  return *it;
}

long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw FieldError(field, "expected an integer");
  return v.get<long>();
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw FieldError(field, "expected a number");
  return v.get<double>();
}

std::vector<Simplex> simplices(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw FieldError(field, "expected an array of vertex lists");
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& c = arr[i];
    if (!c.is_array() || c.empty() || c.size() > 4)
      throw FieldError(field, "entry " + std::to_string(i) + " must list 1 to 4 vertex ids");
    std::vector<VertexId> ids;
    for (const json& v : c) ids.push_back(static_cast<VertexId>(as_integer(v, field)));
    out.emplace_back(std::span<const VertexId>(ids));
  }
  return out;
}

std::vector<Term> pairs(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw FieldError(field, "expected an array of [cellId, value] pairs");
  std::vector<Term> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2)
      throw FieldError(field, "entry " + std::to_string(i) + " must be a [cellId, value] pair");
    out.push_back({static_cast<CellId>(as_integer(p[0], field)), as_integer(p[1], field)});
  }
  return out;
}

json pairs_json(std::span<const Term> terms) {
  json a = json::array();
  for (const Term& t : terms) a.push_back({t.cell, t.coeff});
  return a;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), 0, "<file>", "cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int line_of_field(const std::string& text, const std::string& field) {
  const auto pos = text.find("\"" + field + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

struct Document {
  std::filesystem::path path;
  std::string text;
  json value;
};

Document read_document(const std::filesystem::path& path) {
  Document d{path, slurp(path), {}};
  try {
    d.value = json::parse(d.text);
  } catch (const json::parse_error& e) {
    throw FileError(path.string(), line_of_offset(d.text, e.byte == 0 ? 0 : e.byte - 1), "<syntax>",
                    "malformed JSON");
  }
  return d;
}

template <class F>
auto with_file(const Document& d, F&& f) {
  try {
    return f();
  } catch (const FieldError& e) {
    throw FileError(d.path.string(), line_of_field(d.text, e.field()), e.field(), e.detail());
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(d.path.string(), 0, "<content>", e.what());
  }
}

std::filesystem::path resolve(const Document& d, const std::string& ref) {
  std::filesystem::path p(ref);
  return p.is_absolute() ? p : d.path.parent_path() / p;
}

double parse_double(std::string_view s, std::string_view whole) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidInput("window '" + std::string(whole) + "': '" + std::string(s) + "' is not a number");
  return v;
}

std::vector<double> parse_list(std::string_view s, std::string_view whole) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(s.substr(0, comma), whole));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

FileError::FileError(const std::string& file, int line, const std::string& field, const std::string& what)
    : InvalidInput(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + field + ": " +
                   what) {}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

Window parse_window(std::string_view text, int ambientDim) {
  if (ambientDim < 1 || ambientDim > 3) throw InvalidInput("window: ambient dimension must be 1, 2 or 3");
  if (text == "all") return Window::all();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidInput("window '" + std::string(text) + "': expected all, ball:... or box:...");
  const auto kind = text.substr(0, colon);
  const auto v = parse_list(text.substr(colon + 1), text);
  const auto n = static_cast<std::size_t>(ambientDim);
  auto point = [&](std::size_t off) {
    Point p = Point::Zero();
    for (std::size_t k = 0; k < n; ++k) p[static_cast<Eigen::Index>(k)] = v[off + k];
    return p;
  };
  if (kind == "ball") {
    if (v.size() != n + 1)
      throw InvalidInput("window '" + std::string(text) + "': ball needs " + std::to_string(n + 1) + " numbers");
    return Window::ball(point(0), v[n]);
  }
  if (kind == "box") {
    if (v.size() != 2 * n)
      throw InvalidInput("window '" + std::string(text) + "': box needs " + std::to_string(2 * n) + " numbers");
    return Window::box(point(0), point(n), ambientDim);
  }
  throw InvalidInput("window '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");
}

std::string window_to_string(const Window& w, int ambientDim) {
  auto coords = [&](const Point& p) {
    std::string s;
    for (int k = 0; k < ambientDim; ++k) s += (k ? "," : "") + format_number(p[k]);
    return s;
  };
  switch (w.kind()) {
    case Window::Kind::All:
      return "all";
    case Window::Kind::Ball:
      return "ball:" + coords(w.center()) + "," + format_number(w.radius());
    case Window::Kind::Box:
      return "box:" + coords(w.lo()) + "," + coords(w.hi());
  }
  return "all";
}

json complex_to_json(const CellComplex& c) {
  const int n = c.ambient_dim(), m = c.chain_dim();
  json verts = json::array();
  for (const Point& p : c.positions()) {
    json v = json::array();
    for (int k = 0; k < n; ++k) v.push_back(p[k]);
    verts.push_back(std::move(v));
  }
  auto cells = [](std::span<const Simplex> s) {
    json a = json::array();
    for (const Simplex& x : s) a.push_back(std::vector<VertexId>(x.begin(), x.end()));
    return a;
  };
  json j;
  j["ambient_dim"] = n;
  j["chain_dim"] = m;
  j["vertices"] = std::move(verts);
  j["cells"] = cells(c.cells(m));
  j["fill_cells"] = cells(c.cells(m + 1));
  return j;
}

ComplexPtr complex_from_json(const json& j) {
  const long n = as_integer(member(j, "ambient_dim"), "ambient_dim");
  const long m = as_integer(member(j, "chain_dim"), "chain_dim");
  if (n < 1 || n > 3) throw FieldError("ambient_dim", "must be 1, 2 or 3");
  const json& vs = member(j, "vertices");
  if (!vs.is_array()) throw FieldError("vertices", "expected an array of coordinate lists");
  std::vector<Point> pos;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_array() || vs[i].size() != static_cast<std::size_t>(n))
      throw FieldError("vertices", "entry " + std::to_string(i) + " must have " + std::to_string(n) + " coordinates");
    Point p = Point::Zero();
    for (long k = 0; k < n; ++k) p[k] = as_number(vs[i][static_cast<std::size_t>(k)], "vertices");
    pos.push_back(p);
  }
  auto cells = simplices(member(j, "cells"), "cells");
  std::vector<Simplex> fills;
  if (j.contains("fill_cells")) fills = simplices(j["fill_cells"], "fill_cells");
  auto check_ids = [&](const std::vector<Simplex>& ss, const char* field) {
    for (const Simplex& x : ss)
      for (VertexId v : x)
        if (v < 0 || static_cast<std::size_t>(v) >= pos.size())
          throw FieldError(field, "vertex id " + std::to_string(v) + " out of range");
  };
  check_ids(cells, "cells");
  check_ids(fills, "fill_cells");
  return CellComplex::build(static_cast<int>(n), static_cast<int>(m), std::move(pos), std::move(cells),
                            std::move(fills), 0.0);
}

template <class Ring>
json chain_to_json(const Chain<Ring>& a, const std::string& complexPath) {
  json j;
  j["complex"] = complexPath;
  j["coeff_type"] = std::string(Ring::name);
  j["dim"] = a.level();
  j["coeffs"] = pairs_json(a.terms());
  return j;
}

json varifold_to_json(const IntegralVarifold& v, const std::string& complexPath) {
  json j;
  j["complex"] = complexPath;
  j["mult"] = pairs_json(v.terms());
  return j;
}

template <class Ring>
json cert_to_json(const FlatNormCert<Ring>& cert) {
  json j;
  j["method"] = std::string(to_string(cert.method));
  j["value"] = cert.value;
  j["lower_bound"] = cert.lowerBound;
  j["exact"] = cert.exact;
  j["residual_mass"] = cert.residualMass;
  j["fill_mass"] = cert.fillMass;
  j["fill_complex"] = cert.fillComplexId;
  j["coeff_type"] = std::string(Ring::name);
  j["filling"] = pairs_json(cert.filling.terms());
  j["nodes"] = cert.nodes;
  return j;
}

json expectations_to_json(const Expectations& e) {
  json j = json::object();
  auto put = [&](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  put("mass", e.mass);
  put("fv_total", e.fvTotal);
  put("fv_window", e.fvWindow);
  put("flat_upper", e.flatUpper);
  put("flat_to_limit", e.flatToLimit);
  put("flat_to_limit_upper", e.flatToLimitUpper);
  put("bl_to_limit_upper", e.blToLimitUpper);
  put("boundary_points", e.boundaryPoints);
  put("enclosed_area", e.enclosedArea);
  return j;
}

json read_json_file(const std::filesystem::path& path) { return read_document(path).value; }

ComplexPtr load_complex(const std::filesystem::path& path) {
  const Document d = read_document(path);
  return with_file(d, [&] { return complex_from_json(d.value); });
}

AnyChain load_chain(const std::filesystem::path& path) {
  const Document d = read_document(path);
  const auto ref = with_file(d, [&] {
    const json& c = member(d.value, "complex");
    if (!c.is_string()) throw FieldError("complex", "expected a path");
    return c.get<std::string>();
  });
  const ComplexPtr cx = load_complex(resolve(d, ref));
  return with_file(d, [&]() -> AnyChain {
    const json& t = member(d.value, "coeff_type");
    if (!t.is_string() || (t != "mod2" && t != "int")) throw FieldError("coeff_type", "expected \"mod2\" or \"int\"");
    const int level = d.value.contains("dim") ? static_cast<int>(as_integer(d.value["dim"], "dim")) : cx->chain_dim();
    if (level < 0 || level > cx->chain_dim() + 1) throw FieldError("dim", "no such level in the complex");
    auto terms = pairs(member(d.value, "coeffs"), "coeffs");
    try {
      if (t == "mod2") return Mod2Chain(cx, level, std::move(terms));
      return IntChain(cx, level, std::move(terms));
    } catch (const Error& e) {
      throw FieldError("coeffs", e.what());
    }
  });
}

IntegralVarifold load_varifold(const std::filesystem::path& path) {
  const Document d = read_document(path);
  const auto ref = with_file(d, [&] {
    const json& c = member(d.value, "complex");
    if (!c.is_string()) throw FieldError("complex", "expected a path");
    return c.get<std::string>();
  });
  const ComplexPtr cx = load_complex(resolve(d, ref));
  return with_file(d, [&] {
    auto terms = pairs(member(d.value, "mult"), "mult");
    try {
      return IntegralVarifold(cx, std::move(terms));
    } catch (const Error& e) {
      throw FieldError("mult", e.what());
    }
  });
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(path.string() + ": cannot write");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

template json chain_to_json(const Mod2Chain&, const std::string&);
template json chain_to_json(const IntChain&, const std::string&);
template json cert_to_json(const Mod2FlatCert&);
template json cert_to_json(const IntFlatCert&);

}  // namespace gmt
