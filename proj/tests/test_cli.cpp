#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qucat/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "qucat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::istringstream in(input);
  int code = qucat::cli::run(static_cast<int>(argv.size()), argv.data(), out, in);
  return {code, out.str()};
}

qucat::io::Json last_line(const std::string& out) {
  auto trimmed = out.substr(0, out.find_last_not_of('\n') + 1);
  return qucat::io::Json::parse(trimmed.substr(trimmed.find_last_of('\n') + 1));
}

const char* kBadTable = R"({"objects":["x"],"homs":{"x,x":["a","b"]},"comp":{"a,a":"b","a,b":"b","b,a":"a","b,b":"a"}})";
const char* kChain = R"({"objects":["0","1"],"homs":{"0,0":["i0"],"0,1":["f"],"1,1":["i1"]},
  "comp":{"i0,i0":"i0","f,i0":"f","i1,f":"f","i1,i1":"i1"}})";

}  // namespace

TEST(Cli, ShufflePipesIntoVerify) {
  auto cert = run({"decompose", "shuffle", "1", "2", "2"});
  ASSERT_EQ(cert.code, 0);
  auto v = run({"decompose", "verify", "-"}, cert.out);
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(last_line(v.out)["ok"].get<bool>());
  EXPECT_EQ(run({"verify", "-"}, cert.out).code, 0);
}

TEST(Cli, TamperedCertificateFailsWithReport) {
  auto j = qucat::io::Json::parse(run({"decompose", "spread", "3", "1", "2"}).out);
  j["steps"].erase(0);
  auto v = run({"decompose", "verify", "-"}, j.dump());
  EXPECT_EQ(v.code, 1);
  auto report = last_line(v.out);
  EXPECT_FALSE(report["ok"].get<bool>());
  EXPECT_TRUE(report.contains("clause"));
}

TEST(Cli, NonAssociativeTableNamesTheTriple) {
  auto r = run({"cat", "check", "-"}, kBadTable);
  EXPECT_EQ(r.code, 1);
  auto j = last_line(r.out);
  EXPECT_FALSE(j["associative"].get<bool>());
  const auto& v = j["violations"][0];
  EXPECT_TRUE(v.contains("h") && v.contains("g") && v.contains("f"));
  EXPECT_NE(v["lhs"], v["rhs"]);
}

TEST(Cli, CategoryCommands) {
  auto c = run({"cat", "check", "-"}, kChain);
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(last_line(c.out)["quasi_unital"].get<bool>());
  auto n = run({"cat", "nerve", "-", "--depth", "2"}, kChain);
  ASSERT_EQ(n.code, 0);
  auto w = qucat::io::marked_from_json(last_line(n.out));
  EXPECT_EQ(w.underlying().level_size(1), 3u);
  EXPECT_EQ(w.marking_size(), 2u);
  auto corpus = run({"cat", "corpus", "--max-obj", "1", "--max-hom", "2"});
  EXPECT_EQ(last_line(corpus.out)["tables"].get<std::size_t>(), 1u + 1u + 1u + 8u);
}

TEST(Cli, KanCommands) {
  auto c = run({"kan", "counit", "--cat", "-", "--n", "1", "--mmax", "4"}, kChain);
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(last_line(c.out)["ok"].get<bool>());
  auto r = run({"kan", "rk", "--cat", "-", "--n", "1", "--mmax", "4"}, kChain);
  ASSERT_EQ(r.code, 0);
  auto j = last_line(r.out);
  EXPECT_TRUE(j["stabilized"].get<bool>());
  EXPECT_TRUE(j["bijects_with_level"].get<bool>());
  EXPECT_EQ(j["family_count"].get<std::size_t>(), 3u);
}

TEST(Cli, LiftCommands) {
  auto w = run({"cat", "nerve", "-", "--marking", "none"}, kChain).out;
  auto r = run({"lift", "check", "--left", "C0", "--terminal", "-"}, w);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(last_line(r.out).contains("counterexample"));
  auto good = run({"cat", "nerve", "-"}, kChain).out;
  auto q = run({"lift", "qu", "-"}, good);
  EXPECT_EQ(q.code, 0);
  EXPECT_TRUE(last_line(q.out)["agree"].get<bool>());
}

TEST(Cli, ObjectsAndHomology) {
  auto h = run({"build", "boundary", "3"});
  ASSERT_EQ(h.code, 0);
  auto p = run({"homology", "-"}, h.out);
  EXPECT_EQ(last_line(p.out).dump(),
            R"([{"k":0,"betti":1,"torsion":[]},{"k":1,"betti":0,"torsion":[]},{"k":2,"betti":1,"torsion":[]},{"k":3,"betti":0,"torsion":[]}])");
  auto dot = run({"--format", "dot", "build", "standard", "1", "--sharp"});
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);
  auto t = run({"tensor", "-", "-"}, h.out);
  EXPECT_EQ(t.code, 2);
}

TEST(Cli, FailuresAreJsonWithExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"frobnicate"}, {"build", "horn", "2"}, {"decompose", "spread", "2", "0", "0"}, {"build", "standard", "x"},
           {"homology", "/nonexistent.json"}, {"--budget", "5", "cat", "corpus"}, {"--format", "dot", "cat", "corpus"}}) {
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << args.front();
    EXPECT_TRUE(last_line(r.out).contains("error")) << r.out;
  }
  auto budget = last_line(run({"--budget", "5", "cat", "corpus"}).out);
  EXPECT_EQ(budget["kind"], "resource");
  EXPECT_NE(budget["error"].get<std::string>().find("corpus enumeration"), std::string::npos);
}

TEST(Cli, SameArgumentsSameBytes) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--seed", "7", "cat", "sample", "--count", "5"}, {"decompose", "shuffle", "2", "2", "0"},
           {"suite", "--quick"}}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
  EXPECT_NE(run({"--seed", "7", "cat", "sample"}).out, run({"--seed", "8", "cat", "sample"}).out);
}
