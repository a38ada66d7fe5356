#include <doctest.h>

#include <gmtkit/io.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "gmtkit_cli_test";

int sh(const std::string& args, const std::string& stdoutFile = "out.txt") {
  const std::string cmd = "cd '" + kWork.string() + "' && '" GMTKIT_CLI "' " + args + " > " + stdoutFile + " 2> err.txt";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(kWork / p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

gmt::json out_json() { return gmt::json::parse(slurp("out.txt")); }

struct Fresh {
  Fresh() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE("gen writes complex, varifold and metadata") {
  Fresh f;
  REQUIRE(sh("gen Sn 4 --out s4") == 0);
  for (const char* name : {"complex.json", "varifold.json", "meta.json", "chain.json"})
    CHECK(fs::exists(kWork / "s4" / name));
  CHECK(gmt::json::parse(slurp("s4/meta.json")).at("index") == 4);
  REQUIRE(sh("gen Sn limit --out lim") == 0);
  REQUIRE(sh("flatdist s4/chain.json lim/chain.json --fill s4/complex.json") == 0);
  CHECK(out_json().at("value").get<double>() == 1.0);
  CHECK(out_json().at("exact").get<bool>());
}

TEST_CASE("verify reports flags and writes its tables") {
  Fresh f;
  REQUIRE(sh("verify mod2 --family Qn --range 2..16 --out qn --jobs 2") == 0);
  const auto j = out_json();
  CHECK(j.at("hypotheses").at("massBounded") == true);
  CHECK(j.at("hypotheses").at("fvBounded") == false);
  CHECK(j.at("conclusions").at("chainsConverge") == true);
  CHECK(j.at("conclusions").at("limitsMatch") == false);
  CHECK(j.at("theoremViolation") == false);
  const std::string csv = slurp("qn/report.csv");
  CHECK(csv.rfind("index,window_id,mass,fv_total,bl_dist,flat_dist,flat_exact,boundary_dist,verdict\n", 0) == 0);
  REQUIRE(sh("verify mod2 --family Qn --range 2..16 --out qn1 --jobs 1") == 0);
  CHECK(slurp("qn1/report.csv") == csv);
  REQUIRE(sh("verify lemma --family pair --range 8,16,32,64 --format csv") == 0);
  REQUIRE(sh("verify integer --family pair-opposite --range 4,16,64") == 0);
  CHECK(out_json().at("witnessMass").get<double>() == doctest::Approx(0.5));
  REQUIRE(sh("cauchy --family constant --range 1..4") == 0);
  CHECK(out_json().at("cauchyLike") == true);
}

TEST_CASE("exit codes") {
  Fresh f;
  CHECK(sh("") == 2);
  CHECK(sh("mass") == 2);
  CHECK(sh("mass missing.json") == 2);
  REQUIRE(sh("gen pair 4 --out p") == 0);
  CHECK(sh("mass p/varifold.json --unknown-flag") == 2);
  CHECK(sh("mass p/varifold.json --window disk:0,0,1") == 2);
  CHECK(sh("mass p/varifold.json --format xml") == 2);
  CHECK(sh("verify mod2 --family nope") == 2);
  CHECK(sh("verify mod2 --family Sn --range 5..2") == 2);
  CHECK(sh("mcf-junction --rays '1,0;2,0'") == 2);
  CHECK(sh("gen Sn limit") == 2);

  std::ofstream(kWork / "bad.json") << "{\n  \"complex\": \"p/complex.json\",\n  \"mult\": [[0, 1], [\"a\", 2]]\n}\n";
  CHECK(sh("mass bad.json") == 2);
  const std::string err = slurp("err.txt");
  CHECK(err.find("bad.json:3") != std::string::npos);
  CHECK(err.find("mult") != std::string::npos);

  // A varifold that is not a union of closed loops cannot flow.
  CHECK(sh("mcf-run --input p/varifold.json") == 2);
}

TEST_CASE("chain operations") {
  Fresh f;
  REQUIRE(sh("gen Sn 3 --out s3") == 0);
  REQUIRE(sh("boundary s3/chain.json --out s3/bd.json") == 0);
  REQUIRE(sh("mass s3/bd.json") == 0);
  CHECK(out_json().at("mass").get<double>() == 12);
  REQUIRE(sh("pushforward s3/chain.json --matrix 1,0 --out f.json") == 0);
  REQUIRE(sh("mass f.json") == 0);
  CHECK(out_json().at("mass").get<double>() == 0);
  REQUIRE(sh("pushforward s3/chain.json --matrix 1,-1 --out g.json") == 0);
  REQUIRE(sh("mass g.json") == 0);
  CHECK(out_json().at("mass").get<double>() == doctest::Approx(1).epsilon(1e-15));
  REQUIRE(sh("dilate s3/varifold.json --at 0.5,0 --lambda 0.25 --out d.json") == 0);
  REQUIRE(sh("mass d.json") == 0);
  CHECK(out_json().at("mass").get<double>() == doctest::Approx(4));
  REQUIRE(sh("density s3/varifold.json --at 0.4,0") == 0);
  CHECK(out_json().at("density").get<double>() == 0);
  REQUIRE(sh("firstvar s3/varifold.json") == 0);
  CHECK(out_json().at("total").get<double>() == 12);
  REQUIRE(sh("gen pair-same 4 --out ps") == 0);
  REQUIRE(sh("compat ps/current.json ps/varifold.json") == 0);
  CHECK(out_json().at("compatible") == true);
  REQUIRE(sh("tomod2 ps/current.json --out z.json") == 0);
  REQUIRE(sh("mass z.json") == 0);
  CHECK(out_json().at("mass").get<double>() == doctest::Approx(2));
  REQUIRE(sh("bldist ps/varifold.json ps/varifold.json") == 0);
  CHECK(out_json().at("bl").get<double>() == 0);
}

TEST_CASE("flow commands") {
  Fresh f;
  REQUIRE(sh("gen shrinking 1 --out c") == 0);
  REQUIRE(sh("mcf-run --input c/varifold.json --csv flow.csv") == 0);
  const double te = out_json().at("extinction_time").get<double>();
  CHECK(te >= 0.45);
  CHECK(te <= 0.55);
  CHECK(slurp("flow.csv").rfind("t,mass,dissipation,boundary_mass,flags\n", 0) == 0);
  REQUIRE(sh("mcf-junction --rays '1,0;-0.5,0.8660254037844386;-0.5,-0.8660254037844386'") == 0);
  CHECK(out_json().at("verdict") == "excluded for cyclic flows");
  REQUIRE(sh("mcf-junction --rays '1,0:2'") == 0);
  CHECK(out_json().at("parity") == "even");
}

TEST_CASE("outputs are byte-stable and re-serialize to themselves") {
  Fresh f;
  for (const char* fam : {"Sn 5", "Qn 3", "comb 2", "pair-opposite 8", "layers 4", "circles 2", "constant 1"}) {
    const std::string name = std::string(fam).substr(0, std::string(fam).find(' '));
    REQUIRE(sh("gen " + std::string(fam) + " --out a_" + name) == 0);
    REQUIRE(sh("gen " + std::string(fam) + " --out b_" + name) == 0);
    for (const auto& e : fs::directory_iterator(kWork / ("a_" + name))) {
      const auto file = e.path().filename();
      CHECK(slurp(fs::path("a_" + name) / file) == slurp(fs::path("b_" + name) / file));
      const auto j = gmt::json::parse(slurp(fs::path("a_" + name) / file));
      CHECK(j.dump(2) + "\n" == slurp(fs::path("a_" + name) / file));
    }
    const auto cx = gmt::load_complex(kWork / ("a_" + name) / "complex.json");
    CHECK(gmt::complex_to_json(*cx).dump(2) + "\n" == slurp(fs::path("a_" + name) / "complex.json"));
  }
}
