#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "powerspec/cli.hpp"
#include "powerspec/verify.hpp"

using namespace powerspec;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "powerspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Run& r) { return Json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("diffspec in family and explicit mode") {
    const auto r = run({"diffspec", "--p", "3", "--l", "1"});
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["spectrum"] == Json({{"0", 47}, {"2", 30}, {"3", 1}, {"6", 3}}));
    CHECK(j["methods_agree"] == true);
    CHECK(j["field"]["modulus"] == Json({2, 0, 0, 1, 1}));

    const auto e = run({"diffspec", "--p", "3", "--n", "4", "--d", "21"});
    REQUIRE(e.code == 0);
    CHECK(parsed(e)["spectrum"] == j["spectrum"]);

    const auto other = run({"diffspec", "--p", "2", "--n", "5", "--d", "3"});
    REQUIRE(other.code == 0);
    CHECK(parsed(other)["method"] == "oracle");
    CHECK(parsed(other)["delta"] == 2);
  }

  TEST_CASE("code weights reproduce the p = 5 enumerator") {
    const auto r = run({"code-weights", "--p", "5", "--l", "1"});
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["length"] == 156);
    CHECK(j["dimension"] == 8);
    CHECK(j["min_distance"] == 100);
    CHECK(j["enumerator"] ==
          Json::parse("[[0,1],[100,624],[105,3120],[120,128960],[125,162240],[130,62400],[135,33280]]"));
  }

  TEST_CASE("csv and text output") {
    const auto r = run({"expsum-dist", "--p", "2", "--l", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "value,count\n-8,5\n-4,60\n0,60\n4,100\n8,15\n");
    const auto t = run({"field-info", "--p", "2", "--l", "1", "--format", "text"});
    REQUIRE(t.code == 0);
    CHECK(t.out.find("field.modulus: [1,0,0,1,1]") != std::string::npos);
    const auto c = run({"field-info", "--p", "2", "--l", "1", "--format", "csv"});
    CHECK(c.out.find("field.modulus,\"[1,0,0,1,1]\"") != std::string::npos);
  }

  TEST_CASE("single sums, c-differentials, curves and quadratics") {
    const auto e = run({"expsum", "--p", "2", "--l", "1", "--u", "1", "--v", "1"});
    REQUIRE(e.code == 0);
    CHECK(parsed(e)["value"] == 8);
    CHECK(parsed(e)["methods_agree"] == true);

    const auto c = run({"cdiff", "--p", "3", "--l", "1", "--c", "psi"});
    REQUIRE(c.code == 0);
    CHECK(parsed(c)["bound"] == 16);
    const auto sweep = run({"cdiff", "--p", "2", "--l", "1"});
    REQUIRE(sweep.code == 0);
    CHECK(parsed(sweep)["bound_holds"] == true);

    const auto k = run({"curve-count", "--p", "2", "--n", "4", "--n1", "5", "--n2", "5", "--r1", "1", "--r2", "2"});
    REQUIRE(k.code == 0);
    CHECK(parsed(k)["oracle"] == 25);
    CHECK(parsed(k)["case"] == "iv");
    CHECK(parsed(k)["match"] == true);

    const auto q = run({"quad-mu", "--m", "2", "--a", "psi^2", "--b", "psi^9"});
    REQUIRE(q.code == 0);
    CHECK(parsed(q)["criterion"] == true);
    CHECK(parsed(q)["oracle"] == true);
  }

  TEST_CASE("invalid parameters exit with 2") {
    CHECK(run({"diffspec", "--p", "3", "--l", "1", "--n", "4"}).code == 2);
    CHECK(run({"diffspec", "--p", "4", "--l", "1"}).code == 2);
    CHECK(run({"diffspec", "--p", "3", "--n", "4"}).code == 2);
    CHECK(run({"diffspec", "--p", "3", "--l", "1", "--budget", "10"}).code == 2);
    CHECK(run({"expsum-dist", "--p", "2", "--l", "3", "--method", "oracle", "--budget", "5000"}).code == 2);
    CHECK(run({"curve-count", "--p", "2", "--n", "4", "--n1", "5", "--n2", "1", "--r1", "3"}).code == 2);
    CHECK(run({"verify", "--preset", "huge"}).code == 2);
    CHECK(run({"diffspec", "--p", "3", "--l", "1", "--format", "xml"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"expsum", "--p", "2", "--l", "1"}).code == 2);
  }

  TEST_CASE("report written to a file") {
    const auto path = (std::filesystem::temp_directory_path() / "powerspec_cli_test.json").string();
    const auto r = run({"diffspec", "--p", "2", "--l", "1", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(Json::parse(in)["spectrum"] == Json({{"0", 8}, {"2", 8}}));
    std::filesystem::remove(path);
  }

  TEST_CASE("verify on one family") {
    const auto r = run({"verify", "--p", "2", "--l", "1"});
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["status"] == "pass");
    CHECK(j["summary"]["fail"] == 0);
    CHECK(!j["checks"][0].contains("elapsed_ms"));
    const auto t = run({"verify", "--p", "2", "--l", "1", "--timings"});
    CHECK(parsed(t)["checks"][0].contains("elapsed_ms"));
  }

  TEST_CASE("verify report status") {
    VerifyReport rep;
    rep.checks.push_back({"a", CheckStatus::Pass, 1, 1, "", 0});
    rep.checks.push_back({"b", CheckStatus::Skipped, nullptr, nullptr, "why", 0});
    CHECK(rep.passed());
    rep.checks.push_back({"c", CheckStatus::Fail, 1, 2, "", 0});
    CHECK(!rep.passed());
    CHECK(rep.to_json()["status"] == "fail");
    CHECK(preset_families("extended").size() == 6);
  }
}
