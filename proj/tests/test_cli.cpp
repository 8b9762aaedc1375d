#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(RINEHART_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string spec(const std::string& name) { return std::string(SPECS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("derham on the hyperbola") {
  Result r = cli("derham " + spec("hyperbola.toml") + " --json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["dims"] == json({1, 1, 0}));
  CHECK(j["result"]["stabilized"] == json({true, true, true}));
}

TEST_CASE("logder from the command line") {
  Result r = cli("logder --f \"x*y\" --json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["basis"] == json({"x*∂x", "y*∂y"}));
  CHECK(j["result"]["saito"] == true);

  Result human = cli("logder --f \"x*y\"");
  CHECK(human.out.find("saito: yes") != std::string::npos);
}

TEST_CASE("lr-cohomology of the normal crossing complement") {
  Result r = cli("lr-cohomology " + spec("ncd_log.toml") + " --json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["dims"] == json({1, 2, 1}));
  CHECK(j["result"]["cohomology"]["representatives"][2][0] == "e1*^e2*");

  Result human = cli("lr-cohomology " + spec("ncd_log.toml"));
  CHECK(human.out.find("e1*∧e2*") != std::string::npos);
}

TEST_CASE("spec-json and overrides") {
  Result r = cli("check --spec-json " + spec("broken_jacobi.json") + " --json");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["witness"].get<std::string>().find("Jacobi") != std::string::npos);

  Result o = cli("derham " + spec("hyperbola.toml") + " --d-max 6 --window 2 --json");
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["input"]["options"]["d_max"] == 6);
}

TEST_CASE("exit codes") {
  CHECK(cli("derham /nonexistent/spec.toml").code == 1);
  CHECK(cli("derham").code == 1);
  CHECK(cli("no-such-command").code == 1);
  CHECK(cli("check " + spec("bent_connection.toml")).code == 2);
  CHECK(cli("koszul " + spec("euler_line.toml")).code == 0);
  CHECK(cli("hkr " + spec("affine_lie.toml")).code == 0);
  CHECK(cli("dual-hkr " + spec("abelian2.toml")).code == 0);
  CHECK(cli("derham " + spec("hyperbola.toml") + " --spec-json " + spec("broken_jacobi.json")).code == 1);
}

TEST_CASE("identical runs give identical JSON apart from timing") {
  auto strip = [](std::string s) {
    json j = json::parse(s);
    j.erase("timing_ms");
    return j.dump();
  };
  std::string a = cli("lr-cohomology " + spec("ncd_coefficients.toml") + " --json").out;
  std::string b = cli("lr-cohomology " + spec("ncd_coefficients.toml") + " --json").out;
  CHECK(strip(a) == strip(b));
}
