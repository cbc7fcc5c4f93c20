#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergolab/cli.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/json_io.hpp"

using namespace ergolab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "ergolab_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kZ3 =
    R"({"dim":2,"space":{"points":["0","1","2"],"weights":["1/3","1/3","1/3"]},"generators":[[1,2,0],[2,0,1]]})";

}  // namespace

TEST(Cli, RecurOnZ3) {
  auto r = run({"recur", "--system", write("z3.json", kZ3), "--set", "[0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["results"]["limit"], "1/9");
  EXPECT_EQ(j["results"]["witness_n"], 3);
  EXPECT_EQ(j["command"], "recur");
  EXPECT_TRUE(j["seed"].is_null());
}

TEST(Cli, MaxFreeAndBudget) {
  auto r = run({"dhj", "maxfree", "-k", "3", "-N", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["results"]["size"], 6);
  EXPECT_EQ(r.report()["results"]["exhaustive"], true);
  auto cut = run({"dhj", "maxfree", "-k", "3", "-N", "3", "--budget", "5"});
  EXPECT_EQ(cut.code, 2);
  EXPECT_EQ(cut.report()["exhaustive"], false);
}

TEST(Cli, VdcConstantSequence) {
  auto r = run({"vdc", "--seq", write("seq.json", R"({"entries":[["1/2"],["1/2"],["1/2"],["1/2"],["1/2"],["1/2"]]})"),
                "-N", "4", "-H", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.report()["results"];
  EXPECT_EQ(res["lhs"], "1/4");
  EXPECT_EQ(res["rhs"], "1/4");
  EXPECT_EQ(res["holds"], true);
}

TEST(Cli, ValidateDiagnostics) {
  EXPECT_EQ(run({"validate", "--json", write("ok.json", kZ3)}).code, 0);

  auto nc = run({"validate", "--json",
                 write("nc.json", R"({"dim":2,"space":{"weights":["1/3","1/3","1/3"]},"generators":[[1,0,2],[1,2,0]]})")});
  EXPECT_EQ(nc.code, 3);
  EXPECT_NE(nc.err.find("generators 0 and 1"), std::string::npos) << nc.err;

  auto w = run({"validate", "--json", write("w.json", R"({"weights":["1/2","49/100"]})")});
  EXPECT_EQ(w.code, 3);
  EXPECT_NE(w.err.find("99/100"), std::string::npos) << w.err;

  auto bad = run({"validate", "--json", write("bad.json", R"({"weights":["1/2",)")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.report()["error"]["path"].get<std::string>().find("byte"), std::string::npos);

  auto path = run({"validate", "--json", write("p.json", R"({"weights":["1/2","x"]})")});
  EXPECT_EQ(path.code, 3);
  EXPECT_EQ(path.report()["error"]["path"], "$.weights[1]");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"recur"}).code, 3);
  EXPECT_EQ(run({"recur", "--system", "/nonexistent/file.json", "--set", "[0]"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicAcrossRuns) {
  std::vector<std::string> args{"removal", "search", "--mode", "random", "--size", "4", "-d", "3",
                                "--samples", "30", "--seed", "42"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.report()["seed"], 42);
  args.back() = "43";
  EXPECT_NE(run(args).report()["inputs_digest"], a.report()["inputs_digest"]);
  // whitespace in input files does not change the digest
  auto r1 = run({"recur", "--system", write("z3a.json", kZ3), "--set", "[0]"});
  auto r2 = run({"recur", "--system", write("z3b.json", std::string(kZ3) + "\n\n  "), "--set", "[0]"});
  EXPECT_EQ(r1.out, r2.out);
}

TEST(Cli, ReportsRoundTripThroughValidate) {
  std::string sys = write("z3r.json", kZ3);
  std::vector<std::vector<std::string>> cmds{
      {"recur", "--system", sys, "--set", "[0]"},
      {"avg", "--system", sys, "--sets", "[[0],[0]]", "-N", "3"},
      {"fjoin", "--system", sys, "--structure"},
      {"dhj", "lines", "-k", "2", "-N", "2"},
      {"dhj", "force", "-k", "2", "-L", "1", "-N", "3"},
      {"dhj", "correspond", "-k", "2", "-N", "2", "-L", "1", "--set", R"(["12","21"])"},
      {"correspond", "-k", "2", "-N", "3", "-L", "1", "--set", R"(["112"])"},
      {"stationarity", "--iid", R"(["1/2","1/2"])", "-k", "2", "--depth", "2", "--dim-cap", "2"},
      {"dhj", "stationarity", "--iid", R"(["1/3","2/3"])", "-k", "2", "--depth", "1", "--structure"},
      {"joint", "--json", write("rot.json", R"({"orders":[2],"phi":[[1],[1]]})")},
      {"removal", "search", "--size", "2", "-d", "2"},
  };
  for (auto& c : cmds) {
    auto r = run(c);
    ASSERT_EQ(r.code, 0) << c[0] << " " << r.err << r.out;
    auto v = run({"validate", "--schema", "report", "--json", write("report.json", r.out)});
    EXPECT_EQ(v.code, 0) << c[0] << ": " << v.err;
  }
  auto fj = run({"fjoin", "--system", sys}).report();
  auto v = run({"validate", "--schema", "coupling", "--json", write("c.json", fj["results"]["coupling"].dump())});
  EXPECT_EQ(v.code, 0) << v.err;
}

TEST(Cli, RemovalCheck) {
  Json inst = {{"space", {{"weights", {"1/2", "1/2"}}}},
               {"lambda", {{"arity", 2}, {"mass", {{{"tuple", {0, 0}}, {"value", "1/2"}}, {{"tuple", {1, 1}}, {"value", "1/2"}}}}}},
               {"psi", {{{"e", {0, 1}}, {"blocks", {{0}, {1}}}}}},
               {"families", {{{{"upset", {{0, 1}}}, {"set", {0}}}}, {{{"upset", {{0, 1}}}, {"set", {1}}}}}}};
  auto r = run({"removal", "check", "--json", write("inst.json", inst.dump())});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.report()["results"];
  EXPECT_EQ(res["hypotheses"]["i"], true);
  EXPECT_EQ(res["hypotheses"]["iii"], true);
  EXPECT_EQ(res["conclusion"]["holds"], true);
  EXPECT_EQ(res["conclusion"]["product_mass"], "0/1");

  inst["lambda"]["mass"] = {{{"tuple", {0, 1}}, {"value", "1/2"}}, {{"tuple", {1, 0}}, {"value", "1/2"}}};
  auto bad = run({"removal", "check", "--json", write("inst2.json", inst.dump())});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.report()["results"]["hypotheses"]["ii"], false);
}

TEST(JsonIo, RoundTrips) {
  FiniteZdSystem sys = GroupRotationSystem{{2, 3}, {{1, 0}, {0, 1}}}.to_system();
  EXPECT_EQ(system_from_json(parse_json_text(canonical(to_json(sys)))), sys);
  auto fj = furstenberg_joining(sys);
  Json cj = to_json(fj.coupling);
  EXPECT_EQ(coupling_from_json(cj, &sys.space()), fj.coupling);
  auto law = iid_law(2, 2, ExactProbabilitySpace::uniform(2));
  EXPECT_EQ(law_from_json(to_json(law)).mass, law.mass);
  CombinatorialSubspace s{{2, 4}, {{1}, {3, 4}}, "1212"};
  EXPECT_EQ(subspace_from_json(to_json(s), 2), s);
  GroupRotationSystem rot{{6}, {{2}, {3}}};
  EXPECT_EQ(rotation_from_json(to_json(rot)).phi, rot.phi);
  EXPECT_EQ(detect_schema(to_json(sys)), "system");
  EXPECT_EQ(detect_schema(to_json(law)), "law");
  EXPECT_EQ(canonical(Json{{"b", 1}, {"a", {1, 2}}}), R"({"a":[1,2],"b":1})");
}

TEST(JsonIo, PathErrors) {
  try {
    system_from_json(parse_json_text(R"({"space":{"weights":["1/2","1/2"]},"generators":[[0,1],[0]]})"));
    FAIL();
  } catch (const JsonPathError& e) {
    EXPECT_EQ(e.path(), "$.generators[1]");
  }
  try {
    law_from_json(parse_json_text(R"({"k":2,"depth":1,"values":["0","1"],"mass":[{"config":"0","value":"1/1"}]})"));
    FAIL();
  } catch (const JsonPathError& e) {
    EXPECT_EQ(e.path(), "$");
  }
}
