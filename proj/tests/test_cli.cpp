#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace twlab {
namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    std::filesystem::path dir;

    void SetUp() override
    {
        dir = std::filesystem::temp_directory_path() /
              ("twlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir);
    }

    void TearDown() override { std::filesystem::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    static std::string slurp(const std::string& p)
    {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }
};

TEST_F(CliTest, ThresholdsJson)
{
    const auto r = run({"thresholds", "--d", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"critical\": 0.6309"), std::string::npos);
    EXPECT_NE(r.out.find("\"sparse_fraction\": \"1/6\""), std::string::npos);
}

TEST_F(CliTest, ThresholdsText)
{
    const auto r = run({"--format", "text", "thresholds", "--d", "2", "--ratio", "1.3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("critical ratio c(d) = 1.179"), std::string::npos);
    EXPECT_NE(r.out.find("witness delta = "), std::string::npos);
}

TEST_F(CliTest, GenThenExactTreewidthOfRbnbt)
{
    const auto gen = run({"gen", "--model", "rbnbt", "--n", "30", "--k", "3", "--seed", "7", "--out", path("r.json")});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const auto tw = run({"tw", path("r.json"), "--exact", "--cap", "30", "--format", "text"});
    ASSERT_EQ(tw.code, 0) << tw.err;
    int value = -1;
    ASSERT_EQ(std::sscanf(tw.out.c_str(), "treewidth %d", &value), 1);
    EXPECT_LE(value, 3);
}

TEST_F(CliTest, GenIsDeterministic)
{
    for (const char* model : {"clique_graph", "gnm", "gnp", "ktree", "csp", "bn_raw", "bn_ordered", "two_layer", "rbnbt"}) {
        const auto a = run({"gen", "--model", model, "--n", "12", "--seed", "3"});
        const auto b = run({"gen", "--model", model, "--n", "12", "--seed", "3"});
        ASSERT_EQ(a.code, 0) << model << a.err;
        EXPECT_EQ(a.out, b.out) << model;
    }
}

TEST_F(CliTest, ExactAboveCapIsRefused)
{
    ASSERT_EQ(run({"gen", "--model", "gnm", "--n", "40", "--m", "60", "--out", path("g.gr")}).code, 0);
    const auto r = run({"tw", path("g.gr"), "--exact"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("refused"), std::string::npos);
    EXPECT_EQ(run({"tw", path("g.gr")}).code, 0);
}

TEST_F(CliTest, TdValidateRoundTrip)
{
    ASSERT_EQ(run({"gen", "--model", "clique_graph", "--n", "15", "--m", "12", "--out", path("g.gr")}).code, 0);
    ASSERT_EQ(run({"td", path("g.gr"), "--out", path("g.td")}).code, 0);
    const auto ok = run({"validate", path("g.gr"), path("g.td")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("\"valid\": true"), std::string::npos);
}

TEST_F(CliTest, ValidateCorruptedTdReportsViolations)
{
    std::ofstream(path("p.gr")) << "p tw 3 2\n1 2\n2 3\n";
    std::ofstream(path("bad.td")) << "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n";
    const auto r = run({"validate", path("p.gr"), path("bad.td")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"valid\": false"), std::string::npos);
    EXPECT_NE(r.out.find("edge_uncovered"), std::string::npos);

    std::ofstream(path("garbage.td")) << "s td 2 2 3\nb 1 1 zz\n";
    const auto g = run({"validate", path("p.gr"), path("garbage.td")});
    EXPECT_EQ(g.code, 0);
    EXPECT_NE(g.out.find("parse_error"), std::string::npos);
}

TEST_F(CliTest, SolveCspAndBayesNet)
{
    ASSERT_EQ(run({"gen", "--model", "csp", "--n", "10", "--m", "8", "--d", "3", "--out", path("c.json")}).code, 0);
    const auto td = run({"solve", path("c.json")});
    const auto brute = run({"solve", path("c.json"), "--bruteforce"});
    ASSERT_EQ(td.code, 0) << td.err;
    EXPECT_EQ(td.out.find("\"status\": \"SAT\"") != std::string::npos,
              brute.out.find("\"status\": \"SAT\"") != std::string::npos);
    EXPECT_NE(td.out.find("\"max_table_entries\""), std::string::npos);

    ASSERT_EQ(run({"gen", "--model", "bn_ordered", "--n", "8", "--p", "0.3", "--out", path("b.json")}).code, 0);
    const auto ve = run({"solve", path("b.json"), "--target", "2"});
    EXPECT_EQ(ve.code, 0) << ve.err;
    EXPECT_NE(ve.out.find("\"distribution\""), std::string::npos);
}

TEST_F(CliTest, SolveTimeoutExitsTwo)
{
    ASSERT_EQ(run({"gen", "--model", "csp", "--n", "80", "--m", "100", "--d", "3", "--domain", "3", "--tightness",
                   "0.05", "--out", path("big.json")})
                  .code,
              0);
    const auto r = run({"solve", path("big.json"), "--time-budget", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("timeout"), std::string::npos);
}

TEST_F(CliTest, SweepCsvDeterministic)
{
    const std::vector<std::string> args{"--seed", "4", "sweep", "--model", "csp", "--sizes", "10,14", "--ratios",
                                        "0.2,0.8", "--samples", "3", "--no-timings"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# twlab-sweep v1\n", 0), 0u);
}

TEST_F(CliTest, SweepWritesGnuplotFile)
{
    const auto r = run({"sweep", "--sizes", "12", "--ratios", "0.1,0.5", "--samples", "2", "--gnuplot", path("s.dat"),
                        "--out", path("s.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(slurp(path("s.dat")).find("# n ratio"), std::string::npos);
    EXPECT_EQ(slurp(path("s.csv")).rfind("# twlab-sweep v1", 0), 0u);
}

TEST_F(CliTest, ScalingCsv)
{
    const auto r = run({"scaling", "--sizes", "10,14", "--samples", "2", "--no-timings"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# twlab-scaling v1\n", 0), 0u);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run({}).code, 1);
    const auto unknown = run({"tw", "--bogus"});
    EXPECT_EQ(unknown.code, 1);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"gen", "--model", "nonsense"}).code, 1);
    EXPECT_EQ(run({"tw", path("missing.gr")}).code, 1);
    EXPECT_EQ(run({"--format", "xml", "thresholds"}).code, 1);
    EXPECT_EQ(run({"thresholds", "--d", "1"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

} // namespace
} // namespace twlab
