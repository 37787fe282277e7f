#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypersparse/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = hypersparse::dispatch(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hypersparse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SunflowerRoundTrip) {
  const auto h = path("h.hgr"), s = path("s.hgr");
  ASSERT_EQ(run({"gen", "sunflower", "--n", "6", "-o", h}).code, 0);
  const auto sp = run({"sparsify", "-i", h, "-e", "0.5", "-d", "1", "--seed", "1", "-o", s});
  ASSERT_EQ(sp.code, 0) << sp.err;
  EXPECT_EQ(slurp(h), slurp(s));
  const auto meta = slurp(s + ".meta");
  EXPECT_NE(meta.find("path=unweighted"), std::string::npos);
  EXPECT_NE(meta.find("rng="), std::string::npos);
  const auto v = run({"verify", "-a", h, "-b", s, "-e", "1.0"});
  EXPECT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("max_rel_error=0"), std::string::npos) << v.out;
}

TEST_F(Cli, EpsilonOutOfRange) {
  const auto h = path("h.hgr");
  ASSERT_EQ(run({"gen", "sunflower", "--n", "4", "-o", h}).code, 0);
  const auto r = run({"sparsify", "-i", h, "-e", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("epsilon must be in (0,1]"), std::string::npos) << r.err;
}

TEST_F(Cli, VerifySelfAtZero) {
  const auto h = path("h.hgr");
  ASSERT_EQ(run({"gen", "random", "--n", "8", "--m", "20", "--seed", "4", "-o", h}).code, 0);
  EXPECT_EQ(run({"verify", "-a", h, "-b", h, "-e", "0.0"}).code, 0);
}

TEST_F(Cli, VerifyFailureExitCode) {
  const auto a = path("a.hgr"), b = path("b.hgr");
  ASSERT_EQ(run({"gen", "random", "--n", "6", "--m", "10", "--seed", "1", "-o", a}).code, 0);
  ASSERT_EQ(run({"gen", "random", "--n", "6", "--m", "10", "--seed", "2", "-o", b}).code, 0);
  EXPECT_EQ(run({"verify", "-a", a, "-b", b, "-e", "0"}).code, 1);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const auto h = path("h.hgr");
  ASSERT_EQ(run({"gen", "random", "--n", "10", "--m", "40", "--max-rank", "4", "--seed", "9", "-o", h}).code, 0);
  for (const std::string cmd : {"sparsify", "pipeline"}) {
    const auto s1 = path(cmd + "1.hgr"), s2 = path(cmd + "2.hgr");
    std::vector<std::string> args{cmd, "-i", h, "-e", "0.5", "--seed", "3", "--rho-override", "1/2"};
    auto a1 = args, a2 = args;
    a1.insert(a1.end(), {"-o", s1});
    a2.insert(a2.end(), {"-o", s2});
    ASSERT_EQ(run(a1).code, 0) << cmd;
    ASSERT_EQ(run(a2).code, 0) << cmd;
    EXPECT_EQ(slurp(s1), slurp(s2)) << cmd;
    EXPECT_EQ(slurp(s1 + ".meta"), slurp(s2 + ".meta")) << cmd;
    EXPECT_FALSE(slurp(s1 + ".meta").empty());
  }
}

TEST_F(Cli, StreamFromStdin) {
  std::string edges;
  for (int i = 0; i < 40; ++i) edges += std::to_string(1 + i % 5) + " " + std::to_string(6 + i % 4) + "\n";
  const auto out = path("s.hgr");
  const std::vector<std::string> args{"stream", "--n", "10", "--m-bound", "100", "-e", "0.5", "-o", out};
  ASSERT_EQ(run(args, edges).code, 0);
  const auto first = slurp(out);
  const auto meta = slurp(out + ".meta");
  EXPECT_NE(meta.find("high_water="), std::string::npos);
  ASSERT_EQ(run(args, edges).code, 0);
  EXPECT_EQ(slurp(out), first);
  EXPECT_EQ(run({"stream", "--n", "10", "--m-bound", "10", "-e", "0.5"}, edges).code, 2);
}

TEST_F(Cli, BalanceAndStrengths) {
  const auto h = path("h.hgr"), trace = path("trace.txt");
  ASSERT_EQ(run({"gen", "example2", "--n", "4", "--r", "1", "-o", h}).code, 0);
  const auto b = run({"balance", "-i", h, "--trace", trace});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("% balanced=true"), std::string::npos) << b.out;
  EXPECT_EQ(slurp(trace).rfind("0 - - - - ", 0), 0u);
  const auto s = run({"strengths", "-i", h});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find(" 1\n"), std::string::npos);
}

TEST_F(Cli, PipelineBuckets) {
  const auto h = path("h.hgr"), buckets = path("b.txt");
  {
    std::ofstream f(h);
    f << "% two buckets\n3 4 1\n1 1 2\n1000000000000 2 3\n1 3 4\n";
  }
  const auto r = run({"pipeline", "-i", h, "-e", "0.5", "--buckets", buckets});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(buckets).find("parity="), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"sparsify", "-i", path("h.hgr"), "-e", "0.5", "--no-such-flag"}).code, 2);
  const auto missing = run({"sparsify", "-i", path("missing.hgr"), "-e", "0.5"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_FALSE(missing.err.empty());
  EXPECT_EQ(run({"gen", "petersen", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"balance", "-i", path("h.hgr"), "-g", "1"}).code, 2);
}

TEST(CliHelp, MatchesGoldenFiles) {
  const fs::path golden(GOLDEN_DIR);
  const auto top = run({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_EQ(top.out, slurp(golden / "help.txt"));
  for (const std::string sub : {"gen", "sparsify", "pipeline", "stream", "strengths", "balance", "verify"}) {
    const auto r = run({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_EQ(r.out, slurp(golden / ("help_" + sub + ".txt"))) << sub;
  }
}
