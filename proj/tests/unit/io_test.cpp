#include <doctest.h>

#include <gmtkit/errors.hpp>
#include <gmtkit/families.hpp>
#include <gmtkit/io.hpp>

#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace gmt;
using gmt::test::pt;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gmtkit_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_raw(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FileError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("numbers keep 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1) == "1");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("window syntax") {
  CHECK(parse_window("all").is_all());
  const Window b = parse_window("ball:0.5,0,0.25");
  CHECK(b.kind() == Window::Kind::Ball);
  CHECK(b.center() == pt(0.5, 0));
  CHECK(b.radius() == 0.25);
  const Window x = parse_window("box:0,0,1,2");
  CHECK(x.kind() == Window::Kind::Box);
  CHECK(x.hi().head<2>() == pt(1, 2).head<2>());
  CHECK(parse_window("ball:1,2,3,0.5", 3).center() == pt(1, 2, 3));
  for (const char* bad : {"", "ball", "ball:1,2", "ball:0,0,-1", "box:0,0,1", "box:1,0,0,1", "disk:0,0,1", "ball:a,0,1"})
    CHECK_THROWS_AS(parse_window(bad), InvalidInput);
  for (const Window& w : {Window::all(), b, x}) CHECK(parse_window(window_to_string(w)) == w);
}

TEST_CASE("complex, chain and varifold files round-trip") {
  const auto m = gen_parallel_pair(4, -1);
  const auto cpath = scratch("pair_complex.json");
  write_json_file(cpath, complex_to_json(*m.fill));
  const ComplexPtr back = load_complex(cpath);
  CHECK(back->id() == m.fill->id());

  write_json_file(scratch("pair_current.json"), chain_to_json(*m.current, "pair_complex.json"));
  const AnyChain a = load_chain(scratch("pair_current.json"));
  REQUIRE(std::holds_alternative<IntChain>(a));
  CHECK(std::get<IntChain>(a).terms().size() == m.current->terms().size());
  CHECK(geometrically_equal(std::get<IntChain>(a), *m.current));

  const Mod2Chain z = to_mod2(m.varifold);
  write_json_file(scratch("pair_mod2.json"), chain_to_json(z, "pair_complex.json"));
  const AnyChain b = load_chain(scratch("pair_mod2.json"));
  REQUIRE(std::holds_alternative<Mod2Chain>(b));
  CHECK(geometrically_equal(std::get<Mod2Chain>(b), z));

  write_json_file(scratch("pair_var.json"), varifold_to_json(m.varifold, "pair_complex.json"));
  const IntegralVarifold v = load_varifold(scratch("pair_var.json"));
  CHECK(geometrically_equal(v, m.varifold));
}

TEST_CASE("random complexes survive serialization exactly") {
  auto gen = gmt::test::rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs{u(gen)}, ys{u(gen)};
    for (int k = 0; k < 3; ++k) {
      xs.push_back(xs.back() + 0.1 + std::abs(u(gen)));
      ys.push_back(ys.back() + 0.1 + std::abs(u(gen)));
    }
    const ComplexPtr c = gmt::test::grid(xs, ys);
    const json j = json::parse(complex_to_json(*c).dump());
    CHECK(complex_from_json(j)->id() == c->id());
  }
}

TEST_CASE("file errors name file, line and field") {
  const auto p = scratch("bad_complex.json");
  write_raw(p, "{\n  \"ambient_dim\": 2,\n  \"chain_dim\": 1,\n  \"vertices\": [[0, 0], [1, 0]],\n  \"cells\": [[0, 7]]\n}\n");
  const std::string e1 = error_of([&] { load_complex(p); });
  CHECK(e1.find("bad_complex.json:5") != std::string::npos);
  CHECK(e1.find("cells") != std::string::npos);

  write_raw(p, "{\n  \"ambient_dim\": 2,\n  \"chain_dim\": 1,\n  \"vertices\": [[0, 0], [1, 0]]\n}\n");
  CHECK(error_of([&] { load_complex(p); }).find("cells") != std::string::npos);

  write_raw(p, "{\n  \"ambient_dim\": 2,\n  \"chain_dim\": 1,\n  \"vertices\": [[0, 0], [1, \"x\"]],\n  \"cells\": []\n}\n");
  const std::string e3 = error_of([&] { load_complex(p); });
  CHECK(e3.find(":4") != std::string::npos);
  CHECK(e3.find("vertices") != std::string::npos);

  write_raw(p, "{\n  \"ambient_dim\": 2,\n  \"chain_dim\": 1,\n  \"vertices\": [[0, 0], [1, 0]],,\n}\n");
  CHECK(error_of([&] { load_complex(p); }).find("bad_complex.json:4") != std::string::npos);

  CHECK(error_of([&] { load_complex(scratch("missing.json")); }).find("missing.json") != std::string::npos);

  const auto cpath = scratch("ok_complex.json");
  write_json_file(cpath, complex_to_json(*gmt::test::grid({0, 1}, {0, 1})));
  const auto ch = scratch("bad_chain.json");
  write_raw(ch, "{\n  \"complex\": \"ok_complex.json\",\n  \"coeff_type\": \"real\",\n  \"coeffs\": []\n}\n");
  const std::string e4 = error_of([&] { load_chain(ch); });
  CHECK(e4.find("bad_chain.json:3") != std::string::npos);
  CHECK(e4.find("coeff_type") != std::string::npos);

  const auto vp = scratch("bad_var.json");
  write_raw(vp, "{\n  \"complex\": \"ok_complex.json\",\n  \"mult\": [[0, -2]]\n}\n");
  CHECK(error_of([&] { load_varifold(vp); }).find("mult") != std::string::npos);
}

TEST_CASE("certificates serialize their filling") {
  const auto m = gen_Qn(3);
  const auto cert = flat_seminorm(to_mod2(m.varifold), m.fill, Window::all());
  const json j = cert_to_json(cert);
  CHECK(j.at("value").get<double>() == cert.value);
  CHECK(j.at("exact").get<bool>() == cert.exact);
  CHECK(j.at("coeff_type") == "mod2");
  CHECK(j.at("fill_complex") == cert.fillComplexId);
  CHECK(j.contains("filling"));
}
