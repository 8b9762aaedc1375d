#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rinehart/driver.hpp"
#include "rinehart/error.hpp"

using namespace rinehart;
using namespace rinehart::driver;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SPECS_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json without_timing(json r) {
  r.erase("timing_ms");
  return r;
}

}  // namespace

TEST_CASE("text spec parsing") {
  SpecFile s = SpecFile::parse(R"(
# comment line
divisor = "x*y"   # trailing comment

[ring]
vars = ["x", "y"]
ideal = []

[lie_rinehart]
rank = 2
anchor = [["x", "0"],
          ["0", "y"]]
bracket = [[1, 2, 2, "x # not a comment"]]

[options]
d_max = 6
N = 4
)");
  CHECK(s.vars == std::vector<std::string>{"x", "y"});
  CHECK(s.divisor == "x*y");
  REQUIRE(s.lie_rinehart);
  CHECK(s.lie_rinehart->anchor[1][1] == "y");
  CHECK(s.lie_rinehart->bracket[0] == BracketEntry{1, 2, 2, "x # not a comment"});
  CHECK(s.options.d_max == 6);
  CHECK(s.options.window == 3);
  CHECK(s.options.order == 4);
  CHECK(s.options.tensor_degree_max == 3);
}

TEST_CASE("spec defaults and errors") {
  SpecFile s = SpecFile::parse("[ring]\nvars = [\"x\"]\n");
  CHECK(s.options == Options{10, 3, 3, 3});

  CHECK_THROWS_AS(SpecFile::parse("[ring]\nvars = [\"x\"\n"), ParseError);
  CHECK_THROWS_AS(SpecFile::parse("[rings]\nvars = []\n"), ParseError);
  CHECK_THROWS_AS(SpecFile::parse("[ring]\nvars = []\nvars = []\n"), ParseError);
  CHECK_THROWS_AS(SpecFile::parse("[ring]\nvars = [x]\n"), ParseError);
  CHECK_THROWS_AS(SpecFile::parse("[ring]\nvars = []\ncolour = 1\n"), ParseError);
  CHECK_THROWS_AS(SpecFile::parse("[options]\nd_max = 3\n"), ParseError);
  CHECK_THROWS_WITH_AS(SpecFile::parse("[ring]\nvars = [\"x\"]\nideal = 3x\n"), doctest::Contains("line 3"), ParseError);

  SpecFile bad = SpecFile::parse("[ring]\nvars = [\"x\"]\nideal = [\"x*z\"]\n");
  CHECK_THROWS_AS(bad.validate(), ParseError);
  SpecFile rows = SpecFile::parse("[ring]\nvars = [\"x\"]\n[lie_rinehart]\nrank = 2\nanchor = [[\"x\"]]\n");
  CHECK_THROWS_AS(rows.validate(), InvalidArgument);
  SpecFile idx = SpecFile::parse("[ring]\nvars = []\n[lie_rinehart]\nrank = 2\nbracket = [[2, 1, 1, \"1\"]]\n");
  CHECK_THROWS_AS(idx.validate(), InvalidArgument);
  SpecFile dup = SpecFile::parse("[ring]\nvars = [\"x\", \"x\"]\n");
  CHECK_THROWS_AS(dup.validate(), ParseError);
}

TEST_CASE("JSON round trip of every sample spec") {
  for (const char* name : {"hyperbola.toml", "hyperbola_log.toml", "ncd_log.toml", "ncd_coefficients.toml", "ncd_naive.toml",
                           "affine_lie.toml", "abelian2.toml", "euler_line.toml", "bent_connection.toml"}) {
    CAPTURE(name);
    SpecFile s = SpecFile::parse(slurp(name));
    s.validate();
    CHECK(SpecFile::from_json(s.to_json()) == s);
    CHECK(SpecFile::from_json(json::parse(s.to_json().dump())) == s);
  }
  SpecFile j = SpecFile::from_json(json::parse(slurp("broken_jacobi.json")));
  CHECK(j.lie_rinehart->bracket.size() == 3);
  CHECK(SpecFile::from_json(j.to_json()) == j);
}

TEST_CASE("identifiers") {
  CHECK(identifiers("y^2 - x*y + 3*x1") == std::vector<std::string>{"x", "x1", "y"});
  CHECK(identifiers("7").empty());
}

TEST_CASE("commands produce the expected reports") {
  RunResult d = run("derham", SpecFile::parse(slurp("hyperbola.toml")), {});
  CHECK(d.exit_code == Ok);
  CHECK(d.report["result"]["dims"] == json({1, 1, 0}));
  CHECK(d.report["result"]["all_stabilized"] == true);
  CHECK(d.report["schema_version"] == "1");
  CHECK(d.report["status"] == "ok");

  Overrides f;
  f.f = "x*y";
  RunResult l = run("logder", std::nullopt, f);
  CHECK(l.exit_code == Ok);
  CHECK(l.report["result"]["basis"] == json({"x*∂x", "y*∂y"}));
  CHECK(l.report["result"]["saito"] == true);
  CHECK(l.report["input"]["ring"]["vars"] == json({"x", "y"}));

  RunResult ncd = run("lr-cohomology", SpecFile::parse(slurp("ncd_log.toml")), {});
  CHECK(ncd.exit_code == Ok);
  CHECK(ncd.report["result"]["dims"] == json({1, 2, 1}));
  CHECK(ncd.report["result"]["cohomology"]["representatives"][2] == json({"e1*^e2*"}));

  RunResult hyp = run("lr-cohomology", SpecFile::parse(slurp("hyperbola_log.toml")), {});
  CHECK(hyp.report["result"]["dims"] == json({1, 1}));

  RunResult coeff = run("lr-cohomology", SpecFile::parse(slurp("ncd_coefficients.toml")), {});
  CHECK(coeff.report["result"]["dims"] == json({1, 2, 1}));

  RunResult gb = run("gb", SpecFile::parse("[ring]\nvars = [\"x\", \"y\"]\nideal = [\"x^2 - y\", \"x*y - 1\"]\n"), {});
  CHECK(gb.report["result"]["dimension"] == 3);

  RunResult k = run("koszul", SpecFile::parse(slurp("euler_line.toml")), {});
  CHECK(k.exit_code == Ok);
  CHECK(k.report["result"]["homology"][0] == 5);

  RunResult h = run("hkr", SpecFile::parse(slurp("affine_lie.toml")), {});
  CHECK(h.exit_code == Ok);
  CHECK(h.report["result"]["reduced_koszul"]["zero"] == true);

  RunResult dh = run("dual-hkr", SpecFile::parse(slurp("abelian2.toml")), {});
  CHECK(dh.exit_code == Ok);
  CHECK(dh.report["result"]["jets"]["dims"] == json({1, 2, 1}));
}

TEST_CASE("exit codes") {
  RunResult bent = run("check", SpecFile::parse(slurp("bent_connection.toml")), {});
  CHECK(bent.exit_code == Falsified);
  CHECK(bent.report["status"] == "falsified");
  CHECK(bent.report["witness"].get<std::string>().find("curvature") != std::string::npos);

  RunResult jac = run("check", SpecFile::from_json(json::parse(slurp("broken_jacobi.json"))), {});
  CHECK(jac.exit_code == Falsified);
  CHECK(jac.error.find("Jacobi") != std::string::npos);

  RunResult missing = run("lr-cohomology", std::nullopt, {});
  CHECK(missing.exit_code == InputError);
  CHECK(missing.report["status"] == "input_error");

  RunResult unknown = run("frobnicate", SpecFile::parse(slurp("hyperbola.toml")), {});
  CHECK(unknown.exit_code == InputError);

  RunResult jets_anchor = run("dual-hkr", SpecFile::parse(slurp("euler_line.toml")), {});
  CHECK(jets_anchor.exit_code == InputError);

  // a window of 0 never certifies stabilization
  SpecFile cusp = SpecFile::parse("[ring]\nvars = [\"x\", \"y\"]\n[lie_rinehart]\nrank = 1\nanchor = [[\"x\", \"y\"]]\n");
  Overrides o;
  o.d_max = 3;
  o.window = 0;
  CHECK(run("lr-cohomology", cusp, o).exit_code == Ok);
  o.require_stable = true;
  RunResult unstable = run("lr-cohomology", cusp, o);
  CHECK(unstable.exit_code == NotStable);
  CHECK(unstable.report["status"] == "unstable");
}

TEST_CASE("reports are deterministic and echo their input") {
  for (const char* cmd : {"derham", "gb"}) {
    SpecFile s = SpecFile::parse(slurp("hyperbola.toml"));
    RunResult a = run(cmd, s, {}), b = run(cmd, s, {});
    CHECK(without_timing(a.report).dump() == without_timing(b.report).dump());
    CHECK(SpecFile::from_json(a.report["input"]) == s);
  }
  Overrides o;
  o.d_max = 5;
  RunResult r = run("lr-cohomology", SpecFile::parse(slurp("ncd_log.toml")), o);
  SpecFile echoed = SpecFile::from_json(r.report["input"]);
  CHECK(echoed.options.d_max == 5);
  CHECK(without_timing(run("lr-cohomology", echoed, {}).report).dump() == without_timing(r.report).dump());
}
