#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <sstream>

#include "twlab/errors.hpp"
#include "twlab/experiments.hpp"
#include "twlab/thresholds.hpp"

namespace twlab {
namespace {

SweepConfig small_config(SweepModel model)
{
    SweepConfig c;
    c.model = model;
    c.d = 3;
    c.sizes = {12, 16};
    c.ratios = {0.1, 0.5, 1.0};
    c.samples = 4;
    c.master_seed = 99;
    c.threads = 2;
    return c;
}

std::string csv(const SweepResult& r)
{
    std::ostringstream out;
    write_sweep_csv(out, r, false);
    return out.str();
}

TEST(Sweep, DeterministicAcrossThreadCounts)
{
    for (auto model : {SweepModel::clique_graph, SweepModel::csp, SweepModel::bn_raw, SweepModel::bn_ordered,
                       SweepModel::two_layer, SweepModel::rbnbt, SweepModel::gnm}) {
        auto c = small_config(model);
        if (model == SweepModel::bn_raw || model == SweepModel::bn_ordered || model == SweepModel::rbnbt) {
            c.ratios = {0.05, 0.2, 0.4};
        }
        const auto a = csv(run_sweep(c));
        c.threads = 1;
        EXPECT_EQ(a, csv(run_sweep(c))) << to_string(model);
        EXPECT_EQ(a.rfind("# twlab-sweep v1\n", 0), 0u);
    }
}

TEST(Sweep, RecordsAndSummaries)
{
    auto c = small_config(SweepModel::clique_graph);
    c.mode = TreewidthMode::exact;
    const auto r = run_sweep(c);
    ASSERT_EQ(r.records.size(), 2u * 3 * 4);
    ASSERT_EQ(r.summaries.size(), 6u);
    for (const auto& rec : r.records) {
        ASSERT_TRUE(rec.tw_exact.has_value());
        EXPECT_LE(rec.tw_lower, *rec.tw_exact);
        EXPECT_LE(*rec.tw_exact, rec.tw_upper);
    }
    for (std::size_t cell = 0; cell < r.summaries.size(); ++cell) {
        const std::vector<SweepRecord> part(r.records.begin() + static_cast<std::ptrdiff_t>(cell * 4),
                                            r.records.begin() + static_cast<std::ptrdiff_t>(cell * 4 + 4));
        const auto again = summarize_cell(part, 3);
        EXPECT_EQ(again.median_tw, r.summaries[cell].median_tw);
        EXPECT_EQ(again.frac_tw_le_d_plus_1, r.summaries[cell].frac_tw_le_d_plus_1);
    }
    std::set<std::uint64_t> streams;
    for (const auto& rec : r.records) {
        streams.insert(rec.seed.stream);
    }
    EXPECT_EQ(streams.size(), r.records.size());
}

TEST(Sweep, InfeasibleCellsSkippedWithWarning)
{
    auto c = small_config(SweepModel::clique_graph);
    c.sizes = {5};
    c.ratios = {1.0, 3.0};
    const auto r = run_sweep(c);
    EXPECT_EQ(r.summaries.size(), 1u);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("exceeds"), std::string::npos);
}

TEST(Sweep, ConfigValidation)
{
    auto c = small_config(SweepModel::clique_graph);
    c.samples = 0;
    EXPECT_THROW(run_sweep(c), InvalidArgument);
    c = small_config(SweepModel::clique_graph);
    c.ratios = {-1.0};
    EXPECT_THROW(run_sweep(c), InvalidArgument);
    c = small_config(SweepModel::clique_graph);
    c.mode = TreewidthMode::exact;
    c.sizes = {30};
    EXPECT_THROW(run_sweep(c), InvalidArgument);
    EXPECT_THROW(parse_sweep_model("nope"), InvalidArgument);
    EXPECT_EQ(parse_sweep_model("bn_raw"), SweepModel::bn_raw);
}

TEST(Sweep, MedianUpperBoundMonotoneInRatio)
{
    SweepConfig c;
    c.d = 3;
    c.sizes = {40};
    c.ratios = default_ratio_grid(3);
    c.samples = 15;
    c.master_seed = 5;
    const auto r = run_sweep(c);
    for (std::size_t i = 1; i < r.summaries.size(); ++i) {
        EXPECT_GE(r.summaries[i].median_tw, r.summaries[i - 1].median_tw);
    }
}

TEST(Sweep, CertificatesOnlyAboveCritical)
{
    SweepConfig c;
    c.d = 3;
    c.sizes = {14};
    c.ratios = {0.1, 3.0};
    c.samples = 3;
    c.mode = TreewidthMode::exact;
    const auto r = run_sweep(c);
    for (const auto& rec : r.records) {
        if (rec.ratio < critical_ratio(3)) {
            EXPECT_FALSE(rec.cert_k.has_value());
        } else {
            ASSERT_TRUE(rec.cert_k.has_value());
            if (rec.cert_exceeds && *rec.cert_exceeds) {
                EXPECT_GT(*rec.tw_exact, *rec.cert_k);
            }
        }
    }
}

TEST(DefaultGrid, Span)
{
    const auto g = default_ratio_grid(3);
    ASSERT_EQ(g.size(), 10u);
    EXPECT_DOUBLE_EQ(g.front(), 0.5 / 6.0);
    EXPECT_NEAR(g.back(), 2 * critical_ratio(3), 1e-12);
}

TEST(Median, EvenAndOdd)
{
    EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
    EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
}

TEST(Threads, EnvironmentOverride)
{
    ::setenv("TWLAB_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3);
    ::setenv("TWLAB_THREADS", "junk", 1);
    EXPECT_GE(default_thread_count(), 1);
    ::unsetenv("TWLAB_THREADS");
}

TEST(Scaling, SeriesAndCensoring)
{
    ScalingConfig c;
    c.sizes = {12, 20};
    c.samples = 3;
    c.threads = 1;
    const auto r = run_solver_scaling(c);
    ASSERT_EQ(r.summaries.size(), 4u);
    EXPECT_EQ(r.summaries[0].series, "low");
    EXPECT_EQ(r.summaries[3].series, "high");
    for (const auto& rec : r.records) {
        EXPECT_EQ(rec.censored, !rec.satisfiable.has_value());
    }
    std::ostringstream a;
    std::ostringstream b;
    write_scaling_csv(a, r, false);
    write_scaling_csv(b, run_solver_scaling(c), false);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("# twlab-scaling v1\n", 0), 0u);

    c.time_budget = std::chrono::milliseconds(1);
    c.sizes = {120};
    c.high_ratio = 1.5;
    c.domain_size = 3;
    c.tightness = 0.05;
    c.samples = 1;
    const auto censored = run_solver_scaling(c);
    EXPECT_TRUE(censored.records.back().censored);
}

TEST(Scaling, Validation)
{
    ScalingConfig c;
    c.sizes = {20, 10};
    EXPECT_THROW(run_solver_scaling(c), InvalidArgument);
    c.sizes = {10};
    c.low_ratio = 0.5;
    EXPECT_THROW(run_solver_scaling(c), InvalidArgument);
    c.low_ratio = 0.1;
    c.high_ratio = 0.5;
    EXPECT_THROW(run_solver_scaling(c), InvalidArgument);
}

} // namespace
} // namespace twlab
