#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Outcome {
  int status = -1;
  std::string out;  // stdout and stderr interleaved
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(BAER_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string spec(const char* name) { return std::string(BAER_SPECS) + "/" + name; }

bool has(const Outcome& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

TEST(Cli, ClassifyTruncatedShift) {
  const Outcome r = run("classify " + spec("j3.json"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "power-partial-isometry")) << r.out;
  EXPECT_FALSE(has(r, "x0: isometry")) << r.out;
}

TEST(Cli, ParseErrorsExitTwoWithLocation) {
  const Outcome m = run("classify " + spec("malformed.json"));
  EXPECT_EQ(m.status, 2) << m.out;
  EXPECT_TRUE(has(m, "4:")) << m.out;
  EXPECT_TRUE(has(m, "/operators/0/matrix/1/1")) << m.out;

  const Outcome g = run("classify " + spec("ragged.json"));
  EXPECT_EQ(g.status, 2) << g.out;
  EXPECT_TRUE(has(g, "/operators/0/matrix/1")) << g.out;

  EXPECT_EQ(run("classify /nonexistent/spec.json").status, 2);
  EXPECT_EQ(run("decompose " + spec("j3.json") + " --method bogus").status, 2);
  EXPECT_EQ(run("decompose " + spec("j3.json") + " --method pd").status, 2);
}

TEST(Cli, PreconditionsExitThree) {
  const Outcome n = run("decompose " + spec("gf3_shift.json") + " --method nfl");
  EXPECT_EQ(n.status, 3) << n.out;
  EXPECT_TRUE(has(n, "axiom")) << n.out;
  EXPECT_EQ(run("decompose " + spec("j3.json") + " --method wold").status, 3);
}

TEST(Cli, WoldOnTruncatedExpression) {
  const Outcome r = run("decompose " + spec("unitary_shift.json") + " --method wold");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "u  rank 32  unitary")) << r.out;
  EXPECT_TRUE(has(r, "s  rank 62  unilateral-shift")) << r.out;
  EXPECT_FALSE(has(r, "FAIL")) << r.out;
}

TEST(Cli, SlocinskiOnGrid) {
  const Outcome r = run("decompose " + spec("grid.json") + " --method slocinski");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_FALSE(has(r, "FAIL")) << r.out;
}

TEST(Cli, LargestDoublyCommutingOnEqualShifts) {
  const Outcome r = run("decompose " + spec("j3_pair.json") + " --method pd");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "p     rank 0")) << r.out;
}

TEST(Cli, JsonReportVerifies) {
  const auto dir = std::filesystem::temp_directory_path();
  for (const char* method : {"hw", "nfl", "wold"}) {
    const std::string path = (dir / (std::string("baer_cli_") + method + ".json")).string();
    const char* file = std::string(method) == "wold" ? "unitary_shift.json" : "hw_mixed.json";
    const Outcome d = run("decompose " + spec(file) + " --method " + method + " --format json > " + path);
    ASSERT_EQ(d.status, 0) << method << ": " << d.out;
    const Outcome v = run("verify " + path);
    EXPECT_EQ(v.status, 0) << method << ": " << v.out;
    EXPECT_TRUE(has(v, "round trip: ok")) << v.out;
    std::filesystem::remove(path);
  }
}

TEST(Cli, TamperedReportFailsVerification) {
  const auto path = (std::filesystem::temp_directory_path() / "baer_cli_tampered.json").string();
  ASSERT_EQ(run("decompose " + spec("hw_mixed.json") + " --method hw --format json > " + path).status, 0);
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  // The unitary block's 3/5 entries become 4/5: certificates no longer hold.
  const auto at = text.find("\"3/5\"");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 5, "\"4/5\"");
  std::ofstream(path) << text;
  EXPECT_NE(run("verify " + path).status, 0);
  std::filesystem::remove(path);
}

TEST(Cli, BuiltinChecks) {
  const Outcome r = run("verify --builtin remark1");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(has(r, "q-p positive: yes; p \xE2\x89\xA4 q: no")) << r.out;

  const Outcome a = run("verify --builtin axioms --ring gf3");
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(run("verify --builtin axioms --ring gf5 --dim 2").status, 2);
}

}  // namespace
