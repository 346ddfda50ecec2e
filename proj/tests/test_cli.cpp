#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "schedyn/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = schedyn::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture_path(const std::string& name) {
  return std::string(SCHEDYN_TEST_DIR) + "/fixtures/" + name;
}

std::string golden(const std::string& name) {
  const std::string path = std::string(SCHEDYN_TEST_DIR) + "/golden/" + name;
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing golden file ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate accepts the valid fixtures") {
  const auto r = run({"validate", fixture_path("valid_pair.sched")});
  CHECK(r.code == 0);
  CHECK(r.out.find("valid") != std::string::npos);
  CHECK(r.err.empty());

  const auto j = run(
      {"validate", fixture_path("valid_single.sched"), "--format", "json"});
  CHECK(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["tool"] == "schedyn");
  CHECK(doc["verb"] == "validate");
  CHECK(doc["result"]["valid"] == true);
  CHECK(doc["result"]["mode"] == "grid");
}

TEST_CASE("validate classifies failures by error family") {
  const auto syntax = run({"validate", fixture_path("bad_syntax.sched")});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("E_SYNTAX") != std::string::npos);

  struct Case {
    const char* file;
    const char* code;
    const char* witness;
  } cases[] = {
      {"bad_gap.sched", "E_GAP", "G[1]"},
      {"bad_overlap.sched", "E_OVERLAP", "G[3]"},
      {"bad_domain.sched", "E_DOMAIN", "G[1] -> G[0]"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.file);
    const auto r = run({"validate", fixture_path(c.file)});
    CHECK(r.code == 3);
    CHECK(r.err.find(c.code) != std::string::npos);
    CHECK(r.err.find(c.witness) != std::string::npos);

    const auto j = run({"validate", fixture_path(c.file), "--format", "json"});
    CHECK(j.code == 3);
    const json doc = json::parse(j.out);
    CHECK(doc["result"]["valid"] == false);
    CHECK(doc["result"]["error"]["code"] == c.code);
    CHECK(doc["result"]["error"]["witness"] == c.witness);
  }
}

TEST_CASE("validate reports unreadable files as I/O failures") {
  const auto r = run({"validate", "/nonexistent/nowhere.sched"});
  CHECK(r.code == 4);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("classify answers the worked examples") {
  const auto r =
      run({"classify", "--theorem", "2.11", "--region", "B4", "--map", "gf"});
  CHECK(r.code == 0);
  CHECK(r.out.find("periodic (period 2)") != std::string::npos);

  const auto j = run({"classify", "--theorem", "2.11", "--region", "B4",
                      "--map", "gf", "--format", "json"});
  CHECK(j.out == golden("classify_2.11_B4.json"));

  const auto w = run({"classify", "--theorem", "2.1", "--region", "G(1,1)",
                      "--map", "f", "--format", "json"});
  CHECK(w.code == 0);
  const json doc = json::parse(w.out);
  CHECK(doc["result"]["classification"]["kind"] == "wandering");
  CHECK(doc["result"]["classification"]["certificate"]["net_shift"]
            .get<long long>() > 0);
}

TEST_CASE("classify works from a schedule file too") {
  const auto r = run({"classify", "--spec", fixture_path("valid_pair.sched"),
                      "--region", "G2", "--map", "gf"});
  CHECK(r.code == 0);
  CHECK(r.out.find("wandering") != std::string::npos);
}

TEST_CASE("classify flag misuse is a usage error") {
  // neither --theorem nor --spec
  CHECK(run({"classify", "--region", "G1"}).code == 2);
  // both at once
  CHECK(run({"classify", "--theorem", "2.5", "--spec",
             fixture_path("valid_pair.sched"), "--region", "G1"})
            .code == 2);
  // bad region label
  CHECK(run({"classify", "--theorem", "2.5", "--region", "Q9"}).code == 2);
  // bad map name
  CHECK(run({"classify", "--theorem", "2.5", "--region", "G1", "--map", "ff"})
            .code == 2);
}

TEST_CASE("unknown ids and bad indices are semantic errors") {
  CHECK(run({"classify", "--theorem", "9.9", "--region", "G1"}).code == 3);
  CHECK(run({"table", "--theorem", "nope"}).code == 3);
  CHECK(run({"verify", "--theorem", "2.6"}).code == 3);
  CHECK(run({"modulus", "--center", "1"}).code == 3);
  CHECK(run({"modulus", "--center", "-1"}).code == 3);
  CHECK(run({"check-family", "--step", "0.7"}).code == 3);   // too coarse
  CHECK(run({"check-family", "--window", "10"}).code == 3);  // too small
}

TEST_CASE("table output is stable") {
  const auto r = run({"table", "--theorem", "2.5", "--max-index", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("table_2.5.txt"));

  const auto j = run(
      {"table", "--theorem", "2.1", "--max-index", "2", "--format", "json"});
  CHECK(j.code == 0);
  const json doc = json::parse(j.out);
  // BASE + G/B over rows 0..2, columns 1..2
  CHECK(doc["result"]["rows"].size() == 1 + 2 * 3 * 2);
  CHECK(doc["result"]["rows"][0]["region"] == "BASE");
}

TEST_CASE("verify runs one table or all of them") {
  const auto one = run({"verify", "--theorem", "2.1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("G(0,q): periodic under gf") != std::string::npos);

  const auto all = run({"verify", "--theorem", "all", "--format", "json"});
  CHECK(all.code == 0);
  const json doc = json::parse(all.out);
  CHECK(doc["result"]["reports"].size() == 10);
  CHECK(doc["result"]["passed"] == true);
  CHECK(doc["result"]["failures"] == 0);
  std::size_t assertions = 0;
  for (const auto& rep : doc["result"]["reports"])
    assertions += rep["assertions"].size();
  CHECK(assertions == doc["result"]["assertions"].get<std::size_t>());

  const auto alias = run({"verify", "--theorem", "periodic-to-wandering"});
  CHECK(alias.code == 0);
}

TEST_CASE("modulus always speaks JSON") {
  const auto r = run({"modulus", "--center", "2"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["verb"] == "modulus");
  CHECK(doc["result"]["radius"].get<double>() ==
        doctest::Approx(0.22314355131420976).epsilon(1e-15));
  CHECK(doc["result"]["oracle"]["agrees"] == true);

  const auto neg = run({"modulus", "--center", "-14"});
  CHECK(neg.code == 0);
  const json nd = json::parse(neg.out);
  CHECK(nd["result"]["magnitude"] == 14.0);
  CHECK(nd["result"]["log_point"]["im"].get<double>() ==
        doctest::Approx(3.141592653589793));
}

TEST_CASE("check-family passes the standard family and fails the fixtures") {
  const auto ok = run({"check-family"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(ok.out.find("min gap 1") != std::string::npos);

  const auto wide = run({"check-family", "--fixture", "wide-disks"});
  CHECK(wide.code == 1);
  CHECK(wide.out.find("disjointness: FAIL") != std::string::npos);

  const auto half =
      run({"check-family", "--fixture", "half-plane", "--format", "json"});
  CHECK(half.code == 1);
  const json doc = json::parse(half.out);
  CHECK(doc["result"]["passed"] == false);
  CHECK(doc["result"]["conditions"][2]["passed"] == false);
  CHECK(doc["result"]["interior_diameter_bound"] == "unbounded");

  CHECK(run({"check-family", "--fixture", "mystery"}).code == 2);
}

TEST_CASE("diagram writes where it is told") {
  const std::string out_path = "build_test_diagram.svg";
  const auto r = run({"diagram", "--theorem", "2.5", "--out", out_path});
  CHECK(r.code == 0);
  std::ifstream in(out_path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == golden("diagram_2.5.svg"));
  in.close();
  std::remove(out_path.c_str());

  const auto stdout_run = run({"diagram", "--theorem", "2.5", "--out", "-"});
  CHECK(stdout_run.code == 0);
  CHECK(stdout_run.out == golden("diagram_2.5.svg"));

  const auto bad = run(
      {"diagram", "--theorem", "2.5", "--out", "/nonexistent/dir/out.svg"});
  CHECK(bad.code == 4);
}

TEST_CASE("repeat runs are byte-identical") {
  const std::vector<std::string> cmd{"verify", "--theorem", "all", "--format",
                                     "json"};
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto d1 = run({"diagram", "--theorem", "2.13", "--out", "-"});
  const auto d2 = run({"diagram", "--theorem", "2.13", "--out", "-"});
  CHECK(d1.out == d2.out);
}

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"table"}).code == 2);                // missing --theorem
  CHECK(run({"modulus"}).code == 2);              // missing --center
  CHECK(run({"validate"}).code == 2);             // missing file
  CHECK(run({"verify", "--theorem"}).code == 2);  // dangling value
}
