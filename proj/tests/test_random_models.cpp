#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "support/oracles.hpp"
#include "twlab/errors.hpp"
#include "twlab/random_models.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {
namespace {

TEST(Binomial, SmallValuesAndOverflow)
{
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(5, 0), 1u);
    EXPECT_EQ(binomial(5, 6), 0u);
    EXPECT_EQ(binomial(62, 31), 465428353255261088u);
    EXPECT_THROW(binomial(200, 100), InvalidArgument);
}

TEST(TupleCodes, RoundTrip)
{
    const std::vector<int> t{2, 0, 1};
    const auto code = encode_tuple(t, 3);
    EXPECT_EQ(code, 2u * 9 + 0 * 3 + 1);
    EXPECT_EQ(decode_tuple(code, 3, 3), t);
}

TEST(GenHypergraph, ExhaustionAndEmpty)
{
    const auto full = gen_hypergraph(4, 6, 2, Seed{1, 0});
    EXPECT_EQ(clique_expand(full), complete_graph(4));
    EXPECT_EQ(gen_hypergraph(10, 0, 3, Seed{1, 0}).hyperedge_count(), 0u);
    EXPECT_THROW(gen_hypergraph(4, 7, 2, Seed{1, 0}), InvalidArgument);
    EXPECT_THROW(gen_hypergraph(4, 1, 5, Seed{1, 0}), InvalidArgument);
}

TEST(GenHypergraph, DeterministicAndDistinct)
{
    const auto a = gen_hypergraph(10, 5, 3, Seed{77, 3});
    EXPECT_EQ(a, gen_hypergraph(10, 5, 3, Seed{77, 3}));
    std::set<std::vector<int>> distinct(a.hyperedges().begin(), a.hyperedges().end());
    EXPECT_EQ(distinct.size(), 5u);
    // Large n exercises the rejection-sampling path.
    const auto big = gen_hypergraph(2000, 3000, 3, Seed{5, 5});
    std::set<std::vector<int>> big_distinct(big.hyperedges().begin(), big.hyperedges().end());
    EXPECT_EQ(big_distinct.size(), 3000u);
}

TEST(GenHypergraph, SubsetFrequencyIsUniform)
{
    // Each of the C(5,2) = 10 pairs should appear with probability m/10.
    std::vector<int> hits(25, 0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const auto h = gen_hypergraph(5, 3, 2, Seed{9, static_cast<std::uint64_t>(t)});
        for (const auto& e : h.hyperedges()) {
            ++hits[static_cast<std::size_t>(e[0] * 5 + e[1])];
        }
    }
    const double p = 0.3;
    const double sigma = std::sqrt(trials * p * (1 - p));
    for (int a = 0; a < 5; ++a) {
        for (int b = a + 1; b < 5; ++b) {
            EXPECT_NEAR(hits[static_cast<std::size_t>(a * 5 + b)], trials * p, 4 * sigma);
        }
    }
}

TEST(GenCliqueGraph, Examples)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        EXPECT_EQ(gen_clique_graph(30, 40, 2, Seed{s, 0}).edge_count(), 40u);
        const auto tri = gen_clique_graph(5, 1, 3, Seed{s, 0});
        EXPECT_EQ(tri.edge_count(), 3u);
        EXPECT_EQ(exact_treewidth(tri), 2);
        EXPECT_LE(gen_clique_graph(6, 2, 3, Seed{s, 0}).edge_count(), 6u);
    }
}

TEST(GenGnp, Extremes)
{
    EXPECT_EQ(gen_gnp(10, 0.0, Seed{1, 0}).edge_count(), 0u);
    EXPECT_EQ(gen_gnp(10, 1.0, Seed{1, 0}), complete_graph(10));
}

TEST(GenGnp, EdgeCountStatistics)
{
    const double mean = 499500 * 0.01;
    const double sigma = std::sqrt(499500 * 0.01 * 0.99);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto g = gen_gnp(1000, 0.01, Seed{s, 0});
        EXPECT_NEAR(static_cast<double>(g.edge_count()), mean, 4 * sigma);
    }
}

TEST(GenCsp, TightnessExtremes)
{
    const auto loose = gen_csp(8, 10, 3, 2, 0.0, Seed{2, 0});
    EXPECT_TRUE(oracle::csp_satisfiable(loose));
    const auto tight = gen_csp(8, 1, 3, 2, 1.0, Seed{2, 0});
    EXPECT_FALSE(oracle::csp_satisfiable(tight));
    EXPECT_EQ(tight.constraints()[0].forbidden.size(), 8u);
}

TEST(GenCsp, ScopesMatchHypergraphAndPrimalAgrees)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto c = gen_csp(8, 10, 2, 3, 0.4, Seed{s, 0});
        EXPECT_LE(primal_graph(c).edge_count(), 10u);
        const auto c3 = gen_csp(15, 12, 3, 2, 0.3, Seed{s, 1});
        EXPECT_EQ(scope_hypergraph(c3), gen_hypergraph(15, 12, 3, Seed{s, 1}));
        EXPECT_EQ(primal_graph(c3), clique_expand(scope_hypergraph(c3)));
        for (const auto& con : c3.constraints()) {
            EXPECT_EQ(con.scope.size(), 3u);
            for (auto code : con.forbidden) {
                EXPECT_LT(code, 8u);
            }
        }
    }
}

TEST(GenCsp, TightnessFrequency)
{
    std::size_t forbidden = 0;
    std::size_t total = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto c = gen_csp(10, 10, 2, 3, 0.4, Seed{s, 0});
        for (const auto& con : c.constraints()) {
            forbidden += con.forbidden.size();
            total += 9;
        }
    }
    const double sigma = std::sqrt(total * 0.4 * 0.6);
    EXPECT_NEAR(static_cast<double>(forbidden), total * 0.4, 4 * sigma);
}

TEST(CspInstance, InvariantsEnforced)
{
    EXPECT_THROW(CspInstance(3, 2, 2, {Constraint{{0, 1, 2}, {}}}), InvalidArgument);
    EXPECT_THROW(CspInstance(3, 2, 2, {Constraint{{1, 0}, {}}}), InvalidArgument);
    EXPECT_THROW(CspInstance(3, 2, 2, {Constraint{{0, 1}, {4}}}), InvalidArgument);
    EXPECT_THROW(CspInstance(3, 2, 2, {Constraint{{0, 1}, {}}, Constraint{{0, 1}, {}}}), InvalidArgument);
    EXPECT_THROW(CspInstance(3, 1, 2, {}), InvalidArgument);
}

TEST(GenBn, Extremes)
{
    const std::vector<double> zero(6, 0.0);
    const std::vector<double> one(6, 1.0);
    EXPECT_EQ(gen_bn(6, zero, Seed{1, 0}, BnMode::raw).arc_count(), 0u);
    EXPECT_EQ(gen_bn(6, one, Seed{1, 0}, BnMode::raw).arc_count(), 30u);
    EXPECT_EQ(gen_bn(6, one, Seed{1, 0}, BnMode::ordered).arc_count(), 15u);
}

TEST(GenBn, OrderedIsAcyclic)
{
    const std::vector<double> p{0.9, 0.1, 0.5, 0.7, 0.3, 0.6, 0.8, 0.2};
    for (std::uint64_t s = 0; s < 100; ++s) {
        EXPECT_TRUE(gen_bn(8, p, Seed{s, 0}, BnMode::ordered).is_acyclic());
    }
}

TEST(GenBn, RawArcFrequency)
{
    const std::vector<double> p{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<int> hits(25, 0);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto g = gen_bn(5, p, Seed{3, static_cast<std::uint64_t>(t)}, BnMode::raw);
        for (const auto& [j, i] : g.arcs()) {
            ++hits[static_cast<std::size_t>(j * 5 + i)];
        }
    }
    for (int i = 0; i < 5; ++i) {
        const double pi = p[static_cast<std::size_t>(i)];
        const double sigma = std::sqrt(trials * pi * (1 - pi));
        for (int j = 0; j < 5; ++j) {
            if (j != i) {
                EXPECT_NEAR(hits[static_cast<std::size_t>(j * 5 + i)], trials * pi, 4 * sigma);
            }
        }
    }
}

TEST(GenTwoLayer, Structure)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto g = gen_two_layer(9, 6, 3, Seed{s, 0});
        for (int v = 0; v < 9; ++v) {
            EXPECT_EQ(g.parents(v).size(), 0u);
        }
        std::vector<std::vector<int>> parent_sets;
        for (int v = 9; v < 15; ++v) {
            EXPECT_EQ(g.parents(v).size(), 3u);
            for (int u : g.parents(v)) {
                EXPECT_LT(u, 9);
            }
            parent_sets.emplace_back(g.parents(v).begin(), g.parents(v).end());
        }
        std::vector<Vertex> upper(9);
        std::iota(upper.begin(), upper.end(), 0);
        const auto restricted = induced_subgraph(moralize(g), upper).graph;
        EXPECT_EQ(oracle::edge_set(restricted), oracle::pair_set(parent_sets));
    }
    const auto one = moralize(gen_two_layer(7, 1, 3, Seed{4, 0}));
    EXPECT_EQ(one.edge_count(), 6u);
    EXPECT_THROW(gen_two_layer(2, 3, 3, Seed{1, 0}), InvalidArgument);
}

TEST(GenRbnbt, BaseCaseIsClique)
{
    for (int k = 1; k <= 4; ++k) {
        const auto m = moralize(gen_rbnbt(k + 1, k, 0.0, Seed{1, 0}));
        EXPECT_EQ(m, complete_graph(k + 1));
        EXPECT_EQ(exact_treewidth(m), k);
    }
}

TEST(GenRbnbt, NoRemovalGivesKTreeAndRemovalGivesSubgraph)
{
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto full = moralize(gen_rbnbt(25, 3, 0.0, Seed{s, 0}));
        EXPECT_TRUE(is_ktree(full, 3));
        EXPECT_TRUE(gen_rbnbt(25, 3, 0.0, Seed{s, 0}).is_acyclic());
        const auto pruned_dag = gen_rbnbt(25, 3, 0.4, Seed{s, 0});
        EXPECT_TRUE(pruned_dag.is_acyclic());
        const auto pruned = moralize(pruned_dag);
        for (const auto& [u, v] : pruned.edges()) {
            EXPECT_TRUE(full.has_edge(u, v));
        }
        EXPECT_LE(exact_treewidth(pruned, 25), 3);
    }
}

TEST(GenKtree, EdgeCountAndRecognition)
{
    for (int k = 1; k <= 4; ++k) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const int n = 12;
            const auto g = gen_ktree(n, k, Seed{s, 0});
            EXPECT_EQ(g.edge_count(), static_cast<std::size_t>(k * (k + 1) / 2 + (n - k - 1) * k));
            EXPECT_TRUE(is_ktree(g, k));
            EXPECT_EQ(exact_treewidth(g), k);
        }
    }
    EXPECT_EQ(gen_ktree(4, 3, Seed{1, 0}), complete_graph(4));
    EXPECT_EQ(oracle::component_count(gen_ktree(15, 1, Seed{2, 0})), 1);
    EXPECT_THROW(gen_ktree(3, 3, Seed{1, 0}), InvalidArgument);
}

TEST(FillCpts, RowsAndDeterminism)
{
    const DiGraph g(4, {{0, 2}, {1, 2}, {2, 3}});
    const auto b = fill_cpts(g, 2, Seed{11, 0});
    EXPECT_EQ(b, fill_cpts(g, 2, Seed{11, 0}));
    EXPECT_EQ(b.row_count(0), 1u);
    EXPECT_EQ(b.row_count(2), 4u);
    for (int v = 0; v < 4; ++v) {
        for (std::size_t r = 0; r < b.row_count(v); ++r) {
            double sum = 0.0;
            for (int x = 0; x < 2; ++x) {
                const double p = b.cpt(v)[r * 2 + static_cast<std::size_t>(x)];
                EXPECT_GE(p, 0.0);
                sum += p;
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
    EXPECT_THROW(fill_cpts(DiGraph(2, {{0, 1}, {1, 0}}), 2, Seed{1, 0}), InvalidArgument);
}

TEST(FillCpts, DirichletOneMarginalIsUniform)
{
    // Under Dirichlet(1,1,1) each coordinate has mean 1/3 and variance 1/18.
    const DiGraph g(1);
    double sum = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        sum += fill_cpts(g, 3, Seed{5, static_cast<std::uint64_t>(t)}).cpt(0)[0];
    }
    EXPECT_NEAR(sum / trials, 1.0 / 3.0, 4 * std::sqrt(1.0 / 18.0 / trials));
}

TEST(BayesNet, ProbabilityIndexing)
{
    // Rows over parents in ascending id order, last parent fastest.
    const DiGraph g(3, {{0, 2}, {1, 2}});
    std::vector<std::vector<double>> cpts{{0.5, 0.5}, {0.5, 0.5}, {0.9, 0.1, 0.8, 0.2, 0.7, 0.3, 0.6, 0.4}};
    const BayesNet b(g, {2, 2, 2}, cpts);
    EXPECT_DOUBLE_EQ(b.probability(2, 1, std::vector<int>{0, 1}), 0.2);
    EXPECT_DOUBLE_EQ(b.probability(2, 0, std::vector<int>{1, 0}), 0.7);
    cpts[2][0] = 0.95;
    EXPECT_THROW(BayesNet(g, {2, 2, 2}, cpts), InvalidArgument);
}

} // namespace
} // namespace twlab
