#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(EHALL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Run run_stderr(const std::string& args) {
  std::string cmd = std::string(EHALL_CLI_PATH) + " " + args + " 2>&1 >/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/ehall_cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("curve-info") {
  auto r = run("--budget-degree 6 curve-info");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["data"]["trace"] == 0);
  std::vector<std::string> want = {"3", "9", "9", "9", "33", "81"};
  REQUIRE(j["data"]["counts"].size() == 6);
  for (size_t i = 0; i < want.size(); ++i) CHECK(j["data"]["counts"][i]["enumerated"] == want[i]);
  CHECK(j["summary"]["fail"] == 0);

  auto cfg = write_temp("e2.cfg", "# y^2 = x^3 + x + 1\nq = 5\na4 = 1\na6 = 1\norder = 4\n");
  auto r2 = run("--curve " + cfg + " --budget-degree 3 curve-info");
  REQUIRE(r2.code == 0);
  auto j2 = json::parse(r2.out);
  CHECK(j2["config"]["order"] == 4);
  CHECK(j2["data"]["zeta_series"].size() == 5);

  auto r3 = run("--curve " + cfg + " --order 6 --budget-degree 2 curve-info");
  CHECK(json::parse(r3.out)["config"]["order"] == 6);
}

TEST_CASE("config errors exit with 2") {
  auto sing = write_temp("sing.cfg", "q = 5\n");  // y^2 = x^3
  CHECK(run("--curve " + sing + " curve-info").code == 2);
  CHECK(run("--curve /nonexistent/curve.cfg curve-info").code == 2);
  auto bad = write_temp("bad.cfg", "q = 2\na3 = x\n");
  CHECK(run("--curve " + bad + " curve-info").code == 2);
  CHECK(run("--format yaml curve-info").code == 2);
  CHECK(run("--n 0 characters").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("characters") {
  auto r = run("--n 2 characters");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["data"]["primitive_orbits"] == 3);
  CHECK(j["data"]["norm_image_excluded"] == 3);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(json::parse(run("--n 1 characters").out)["data"]["primitive_orbits"] == 3);
  CHECK(run("--n 30 characters").code == 2);
}

TEST_CASE("straighten") {
  auto r = run("straighten \"t(1,0) * t(0,1)\"");
  REQUIRE(r.code == 0);
  auto nf = json::parse(r.out)["data"]["normal_form"];
  CHECK(nf.size() == 2);
  CHECK(nf["t(0,1)t(1,0)"] == "1");
  CHECK(nf.contains("t(1,1)"));

  auto same = json::parse(run("straighten \"t(0,1) * t(0,2)\"").out)["data"]["normal_form"];
  CHECK(same.size() == 1);
  CHECK(same["t(0,2)t(0,1)"] == "1");

  auto formal = json::parse(run("straighten --formal \"t(0,1)*t(1,0) - t(1,0)*t(0,1)\"").out)["data"]["normal_form"];
  CHECK(formal.size() == 1);
  CHECK(formal.contains("t(1,1)"));

  auto th = json::parse(run("--n 2 straighten \"2*theta(0,1) - 1/2*(t(0,1))\"").out)["data"];
  CHECK(th["terms"] == 1);

  auto bad = run_stderr("straighten \"t(1,0) * (t(0,1)\"");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("position") != std::string::npos);
  CHECK(run("straighten \"t(0,0)\"").code == 2);
  CHECK(run("straighten \"s(1,2)\"").code == 2);
}

TEST_CASE("verify-all exit codes and determinism") {
  auto a = run("verify-all --only 9,6");
  REQUIRE(a.code == 0);
  auto j = json::parse(a.out);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["id"] == 6);
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(run("verify-all --only 9,6").out == a.out);

  auto skipped = run("--budget-degree 2 verify-all --only 11,2");
  CHECK(skipped.code == 0);
  auto js = json::parse(skipped.out);
  CHECK(js["checks"][0]["id"] == 2);
  CHECK(js["checks"][0]["status"] == "pass");
  CHECK(js["checks"][1]["status"] == "skip");

  auto flipped = run("verify-all --only 4 --inject-sign-flip");
  CHECK(flipped.code == 1);
  auto jf = json::parse(flipped.out);
  CHECK(jf["checks"][0]["status"] == "fail");
  CHECK(jf["checks"][0].contains("lhs"));

  CHECK(run("verify-all --only 12").code == 2);
  auto text = run("--format text verify-all --only 9");
  CHECK(text.out.find("[pass] 9") != std::string::npos);
  auto csv = run("--format csv verify-all --only 9");
  CHECK(csv.out.rfind("id,name,status", 0) == 0);
}
