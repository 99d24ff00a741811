// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "twlab/experiments.hpp"
#include "twlab/random_models.hpp"
#include "twlab/serialization.hpp"
#include "twlab/solvers.hpp"
#include "twlab/thresholds.hpp"
#include "twlab/treewidth.hpp"

namespace {

using namespace twlab;

// Tolerances and sample sizes.
constexpr double kIdentityTolerance = 1e-12;
constexpr double kSparseFraction = 0.90;
constexpr int kSparseSamples = 50;
constexpr int kTransitionSamples = 30;
constexpr int kLemmaGraphs = 600;
constexpr int kTriLabelInstances = 200;
constexpr int kGridPoints = 1000;
constexpr int kRbnbtInstances = 100;
constexpr int kCspInstances = 200;
constexpr int kBayesNets = 50;
constexpr double kMarginalTolerance = 1e-9;
constexpr int kTwoLayerInstances = 100;
constexpr int kMonteCarloTrials = 100000;
constexpr double kSigmaMultiplier = 3.0;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

Outcome threshold_constants()
{
    const double c2 = critical_ratio(2);
    const double c3 = critical_ratio(3);
    double worst = 0.0;
    for (int d = 2; d <= 16; ++d) {
        const double base = (1.0 + std::pow(2.0, d)) / std::pow(3.0, d);
        worst = std::max(worst, std::abs(std::pow(base, critical_ratio(d)) - 0.5));
    }
    const bool ok = c2 >= 1.179 && c2 <= 1.180 && c3 >= 0.6309 && c3 <= 0.6310 && worst <= kIdentityTolerance;
    return {ok, "c(2)=" + fmt("%.6f", c2) + " c(3)=" + fmt("%.6f", c3) + " max identity error " + fmt("%.2e", worst)};
}

Outcome sparse_regime()
{
    SweepConfig a;
    a.d = 3;
    a.sizes = {60};
    a.ratios = {0.1};
    a.samples = kSparseSamples;
    a.master_seed = 2024;
    const auto ra = run_sweep(a);
    int small = 0;
    for (const auto& r : ra.records) {
        small += r.tw_upper <= 4 ? 1 : 0;
    }
    const double frac = static_cast<double>(small) / kSparseSamples;

    SweepConfig b;
    b.model = SweepModel::gnm;
    b.d = 2;
    b.sizes = {100};
    b.ratios = {0.4};
    b.samples = kSparseSamples;
    b.master_seed = 2025;
    const auto rb = run_sweep(b);
    std::vector<double> uppers;
    for (const auto& r : rb.records) {
        uppers.push_back(r.tw_upper);
    }
    const double med = median(uppers);
    return {frac >= kSparseFraction && med <= 3.0,
            "d=3 fraction(upper<=4)=" + fmt("%.2f", frac) + "; d=2 median upper=" + fmt("%.1f", med)};
}

Outcome transition_direction()
{
    SweepConfig c;
    c.d = 3;
    c.sizes = {12, 16, 20};
    c.ratios = {0.5 / 6.0, 1.5 * critical_ratio(3)};
    c.samples = kTransitionSamples;
    c.mode = TreewidthMode::exact;
    c.master_seed = 31;
    const auto r = run_sweep(c);
    bool ok = r.summaries.size() == 6;
    std::string detail;
    double previous_high = -1.0;
    for (std::size_t i = 0; ok && i + 1 < r.summaries.size(); i += 2) {
        const auto& low = r.summaries[i];
        const auto& high = r.summaries[i + 1];
        ok = ok && high.median_tw > low.median_tw && high.median_tw >= previous_high;
        previous_high = high.median_tw;
        detail += "n=" + std::to_string(low.n) + ": " + fmt("%.1f", low.median_tw) + " vs " +
                  fmt("%.1f", high.median_tw) + "; ";
    }
    return {ok, "median exact tw low vs high ratio: " + detail};
}

Graph lemma_graph(std::uint64_t s)
{
    const int n = 5 + static_cast<int>(s % 8);
    const Seed seed{s, 404};
    switch (s % 6) {
    case 0: return gen_gnp(n, 0.2 + 0.1 * static_cast<double>(s % 5), seed);
    case 1: {
        const int m = std::min<int>(static_cast<int>(binomial(n, 3)), 1 + static_cast<int>(s % 12));
        return gen_clique_graph(n, m, 3, seed);
    }
    case 2: return gen_ktree(n, 1 + static_cast<int>(s % 3), seed);
    case 3: return moralize(gen_rbnbt(n, 2 + static_cast<int>(s % 2), 0.3, seed));
    case 4: {
        const std::vector<double> p(static_cast<std::size_t>(n), 0.15 + 0.05 * static_cast<double>(s % 4));
        return moralize(gen_bn(n, p, seed, BnMode::raw));
    }
    default: return gen_gnm(n, n + static_cast<int>(s % 9), seed);
    }
}

Outcome balanced_partition_lemma()
{
    int forward_violations = 0;
    int certificate_violations = 0;
    int forward_checks = 0;
    int certificates = 0;
    int empty_window_skips = 0;
    for (int i = 0; i < kLemmaGraphs; ++i) {
        const auto g = lemma_graph(static_cast<std::uint64_t>(i));
        const int tw = exact_treewidth(g);
        for (int k = 0; k + 1 <= g.vertex_count(); ++k) {
            if (certify_treewidth_exceeds(g, k)) {
                ++certificates;
                certificate_violations += tw > k ? 0 : 1;
            }
            if (tw <= k) {
                if (g.vertex_count() - k - 1 == 1) {
                    ++empty_window_skips;
                    continue;
                }
                ++forward_checks;
                forward_violations += find_balanced_partition(g, k) ? 0 : 1;
            }
        }
    }
    int disagreements = 0;
    for (int i = 0; i < kTriLabelInstances; ++i) {
        const auto s = static_cast<std::uint64_t>(i);
        const int n = 6 + i % 5;
        const auto g = gen_clique_graph(n, std::min<int>(static_cast<int>(binomial(n, 3)), 3 + i % 12), 3, Seed{s, 505});
        const int k = i % (n - 1);
        disagreements += find_balanced_partition(g, k).has_value() == oracle::balanced_partition_by_labeling(g, k) ? 0 : 1;
    }
    std::ostringstream d;
    d << kLemmaGraphs << " graphs: forward violations " << forward_violations << "/" << forward_checks
      << ", certificate violations " << certificate_violations << "/" << certificates << " (n=k+2 cases excluded: "
      << empty_window_skips << "); tri-labeling disagreements " << disagreements << "/" << kTriLabelInstances;
    return {forward_violations == 0 && certificate_violations == 0 && disagreements == 0, d.str()};
}

Outcome bound_machinery()
{
    int split_mismatches = 0;
    int split_checked = 0;
    for (int n = 2; n <= 12; ++n) {
        for (int d = 2; d <= n; ++d) {
            for (int k = 0; k + 1 <= n; ++k) {
                for (int a = 0; a + k + 1 <= n; ++a) {
                    ++split_checked;
                    split_mismatches += split_hyperedge_count(n, k, a, d) == oracle::split_count(n, k, a, d) ? 0 : 1;
                }
            }
        }
    }
    int chain_violations = 0;
    int grid = 0;
    for (std::uint64_t s = 0; grid < kGridPoints; ++s) {
        CounterRng rng(Seed{s, 606});
        const int n = 6 + static_cast<int>(rng.below(95));
        const int d = 2 + static_cast<int>(rng.below(4));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
        const auto [lo, hi] = balanced_side_window(n, k);
        if (lo > hi) {
            continue;
        }
        const int a = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        const auto f = split_fraction_bound(n, k, a, d);
        chain_violations += (f.exact <= f.pairwise * (1 + 1e-12) && f.pairwise <= f.balanced * (1 + 1e-12)) ? 0 : 1;
        ++grid;
    }
    int bound_violations = 0;
    int bound_checked = 0;
    for (int n = 4; n <= 10; ++n) {
        for (int d = 2; d <= 3; ++d) {
            for (int k = 0; k + 3 <= n; ++k) {
                for (int m : {1, n / 2, n, 2 * n}) {
                    if (m < 1 || static_cast<std::uint64_t>(m) > binomial(n, d)) {
                        continue;
                    }
                    const long double exact = oracle::labeling_log_expectation(n, m, d, k);
                    ++bound_checked;
                    const double y = static_cast<double>(k + 1) / n;
                    if (!std::isinf(exact) && log_balanced_partition_bound(n, m, d, y) < static_cast<double>(exact)) {
                        ++bound_violations;
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << "split count mismatches " << split_mismatches << "/" << split_checked << "; chain violations "
      << chain_violations << "/" << grid << "; partition-count bound violations " << bound_violations << "/" << bound_checked;
    return {split_mismatches == 0 && chain_violations == 0 && bound_violations == 0, d.str()};
}

Outcome rbnbt_guarantee()
{
    int above = 0;
    int not_ktree = 0;
    int runs = 0;
    int widest = 0;
    for (double r : {0.0, 0.2, 0.5}) {
        for (int i = 0; i < kRbnbtInstances; ++i) {
            const auto g = moralize(gen_rbnbt(30, 3, r, Seed{static_cast<std::uint64_t>(i), 707}));
            const int tw = exact_treewidth(g, 30);
            widest = std::max(widest, tw);
            above += tw > 3 ? 1 : 0;
            if (r == 0.0) {
                not_ktree += is_ktree(g, 3) ? 0 : 1;
            }
            ++runs;
        }
    }
    std::ostringstream d;
    d << "tw<=3 in " << runs - above << "/" << runs << " (max " << widest << "); r=0 non-3-trees " << not_ktree;
    return {above == 0 && not_ktree == 0, d.str()};
}

Outcome solver_correctness()
{
    int agree = 0;
    int sat = 0;
    for (int i = 0; i < kCspInstances; ++i) {
        const auto s = static_cast<std::uint64_t>(i);
        const int n = 4 + i % 9;
        const int d = 2 + i % 2;
        const int domain = 2 + (i / 2) % 2;
        const int m = std::min<int>(static_cast<int>(binomial(n, d)), n + i % 8);
        const auto c = gen_csp(n, m, d, domain, 0.2 + 0.05 * (i % 5), Seed{s, 808});
        const auto g = primal_graph(c);
        const auto td = solve_csp_td(c, decomposition_from_order(g, greedy_order(g, Heuristic::min_fill)));
        const auto brute = solve_csp_bruteforce(c);
        const bool witness_ok = !td.satisfiable || c.satisfied_by(td.witness);
        agree += (td.satisfiable == brute.satisfiable && witness_ok) ? 1 : 0;
        sat += brute.satisfiable ? 1 : 0;
    }
    double worst = 0.0;
    int variables = 0;
    for (int i = 0; i < kBayesNets; ++i) {
        const auto s = static_cast<std::uint64_t>(i);
        const int n = 3 + i % 10;
        const std::vector<double> p(static_cast<std::size_t>(n), 0.2 + 0.05 * (i % 5));
        const auto b = fill_cpts(gen_bn(n, p, Seed{s, 909}, BnMode::ordered), 2 + i % 2, Seed{s, 910});
        for (int t = 0; t < n; ++t) {
            const auto ve = ve_marginal(b, t, inference_order(b, t));
            const auto joint = joint_enumerate_marginal(b, t);
            for (std::size_t x = 0; x < joint.size(); ++x) {
                worst = std::max(worst, std::abs(ve.distribution[x] - joint[x]));
            }
            ++variables;
        }
    }
    std::ostringstream d;
    d << "CSP agreement " << agree << "/" << kCspInstances << " (" << sat << " SAT); max |VE - joint| "
      << fmt("%.2e", worst) << " over " << variables << " variables in " << kBayesNets << " nets";
    return {agree == kCspInstances && worst <= kMarginalTolerance, d.str()};
}

Outcome scaling_direction()
{
    ScalingConfig c;
    c.d = 3;
    c.sizes = {20, 30, 40, 50};
    c.low_ratio = 0.1;
    c.high_ratio = 1.0;
    c.samples = 5;
    c.time_budget = std::chrono::milliseconds(2000);
    c.master_seed = 1111;
    const auto r = run_solver_scaling(c);
    std::vector<double> low;
    std::vector<double> high;
    int censored = 0;
    for (const auto& s : r.summaries) {
        (s.series == "low" ? low : high).push_back(s.median_width);
        censored += s.censored;
    }
    int low_max = 0;
    for (const auto& rec : r.records) {
        if (rec.series == "low") {
            low_max = std::max(low_max, rec.width);
        }
    }
    bool increasing = high.size() == 4;
    for (std::size_t i = 1; i < high.size(); ++i) {
        increasing = increasing && high[i] > high[i - 1];
    }
    std::ostringstream d;
    d << "median width at 1.0:";
    for (double w : high) {
        d << ' ' << w;
    }
    d << "; max width at 0.1: " << low_max << "; censored " << censored;
    return {increasing && low_max <= 4, d.str()};
}

Outcome two_layer_reduction()
{
    int within_one = 0;
    int equals_max_d = 0;
    int equals_max_d_plus_1 = 0;
    int both = 0;
    for (int i = 0; i < kTwoLayerInstances; ++i) {
        const auto s = static_cast<std::uint64_t>(i);
        CounterRng rng(Seed{s, 1212});
        const int d = 2 + static_cast<int>(rng.below(2));
        const int n1 = d + 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(14 - d - 1)));
        const int n2 = 1 + static_cast<int>(rng.below(10));
        const auto net = gen_two_layer(n1, n2, d, Seed{s, 1213});
        const auto moral = moralize(net);
        std::vector<Vertex> upper(static_cast<std::size_t>(n1));
        std::iota(upper.begin(), upper.end(), 0);
        const int tw = exact_treewidth(moral, 24);
        const int tw1 = exact_treewidth(induced_subgraph(moral, upper).graph, 24);
        const int as_max_d = std::max(d, tw1);
        const int as_max_d1 = std::max(d + 1, tw1);
        within_one += std::abs(tw - as_max_d) <= 1 ? 1 : 0;
        equals_max_d += tw == as_max_d ? 1 : 0;
        equals_max_d_plus_1 += tw == as_max_d1 ? 1 : 0;
        both += (tw == as_max_d && tw == as_max_d1) ? 1 : 0;
    }
    std::ostringstream d;
    d << "|tw - max(d, tw1)| <= 1 in " << within_one << "/" << kTwoLayerInstances << "; tw == max(d, tw1) in "
      << equals_max_d << ", tw == max(d+1, tw1) in " << equals_max_d_plus_1 << " (both " << both << ")";
    return {within_one == kTwoLayerInstances, d.str()};
}

Outcome bn_partition_monte_carlo()
{
    const int n = 10;
    int cases = 0;
    int violations = 0;
    int published_violations = 0;
    double worst_margin = -1.0;
    std::uint64_t stream = 0;
    for (int k : {0, 1, 2, 3}) {
        const auto [lo, hi] = balanced_side_window(n, k);
        const int a = lo;
        const int b = n - k - 1 - a;
        if (b < lo || b > hi) {
            continue;
        }
        std::vector<PartitionRole> roles;
        roles.insert(roles.end(), static_cast<std::size_t>(a), PartitionRole::a);
        roles.insert(roles.end(), static_cast<std::size_t>(k + 1), PartitionRole::separator);
        roles.insert(roles.end(), static_cast<std::size_t>(b), PartitionRole::b);
        for (double p : {0.02, 0.05, 0.1, 0.2, 0.3}) {
            const std::vector<double> ps(static_cast<std::size_t>(n), p);
            int hits = 0;
            for (int t = 0; t < kMonteCarloTrials; ++t) {
                const auto net = gen_bn(n, ps, Seed{1313, stream++}, BnMode::raw);
                bool separated = true;
                const auto moral = moralize(net);
                for (const auto& [u, v] : moral.edges()) {
                    const auto ru = roles[static_cast<std::size_t>(u)];
                    const auto rv = roles[static_cast<std::size_t>(v)];
                    if ((ru == PartitionRole::a && rv == PartitionRole::b) ||
                        (ru == PartitionRole::b && rv == PartitionRole::a)) {
                        separated = false;
                        break;
                    }
                }
                hits += separated ? 1 : 0;
            }
            const double estimate = static_cast<double>(hits) / kMonteCarloTrials;
            const double sigma = std::sqrt(estimate * (1 - estimate) / kMonteCarloTrials);
            const double bound = std::exp(bn_partition_log_bound(ps, k, roles).log_bound);
            const double published = std::exp(bn_partition_log_bound(ps, k, roles, SeparatorBound::as_published).log_bound);
            violations += estimate > bound + kSigmaMultiplier * sigma ? 1 : 0;
            published_violations += estimate > published + kSigmaMultiplier * sigma ? 1 : 0;
            worst_margin = std::max(worst_margin, estimate - bound);
            ++cases;
        }
    }
    std::ostringstream d;
    d << cases << " partitions x " << kMonteCarloTrials << " trials: violations " << violations
      << " (max estimate - bound " << fmt("%.4f", worst_margin) << "); as-published separator form would fail "
      << published_violations << "/" << cases;
    return {violations == 0, d.str()};
}

std::string sweep_bytes(SweepModel model, int threads)
{
    SweepConfig c;
    c.model = model;
    c.d = 3;
    c.sizes = {14, 18};
    c.ratios = model == SweepModel::bn_raw || model == SweepModel::bn_ordered || model == SweepModel::rbnbt
                   ? std::vector<double>{0.1, 0.3}
                   : std::vector<double>{0.1, 0.7, 1.2};
    c.samples = 5;
    c.master_seed = 77;
    c.threads = threads;
    std::ostringstream out;
    write_sweep_csv(out, run_sweep(c), false);
    return out.str();
}

std::string generator_bytes(std::uint64_t seed)
{
    std::ostringstream out;
    const Seed s{seed, 3};
    const std::vector<double> p(15, 0.2);
    out << to_json(gen_csp(15, 12, 3, 2, 0.3, s)) << to_json(gen_bn(15, p, s, BnMode::raw))
        << to_json(fill_cpts(gen_bn(15, p, s, BnMode::ordered), 2, s)) << to_json(gen_two_layer(8, 6, 3, s))
        << to_json(gen_rbnbt(15, 3, 0.2, s));
    for (const auto& g : {gen_clique_graph(15, 10, 3, s), gen_gnm(15, 20, s), gen_gnp(15, 0.2, s), gen_ktree(15, 3, s)}) {
        for (const auto& [u, v] : g.edges()) {
            out << u << ' ' << v << '\n';
        }
    }
    return out.str();
}

Outcome determinism()
{
    int identical = 0;
    int total = 0;
    for (auto model : {SweepModel::clique_graph, SweepModel::csp, SweepModel::bn_raw, SweepModel::bn_ordered,
                       SweepModel::two_layer, SweepModel::rbnbt, SweepModel::gnm}) {
        const auto first = sweep_bytes(model, 1);
        identical += first == sweep_bytes(model, 1) ? 1 : 0;
        identical += first == sweep_bytes(model, 4) ? 1 : 0;
        total += 2;
    }
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        identical += generator_bytes(seed) == generator_bytes(seed) ? 1 : 0;
        ++total;
    }
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) + " re-runs byte-identical"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"threshold constants", threshold_constants},
        {"sparse regime", sparse_regime},
        {"transition direction", transition_direction},
        {"balanced-partition lemma", balanced_partition_lemma},
        {"partition-count bound machinery", bound_machinery},
        {"RBNBT treewidth guarantee", rbnbt_guarantee},
        {"solver correctness", solver_correctness},
        {"solver width scaling", scaling_direction},
        {"two-layer reduction", two_layer_reduction},
        {"BN partition bound vs Monte Carlo", bn_partition_monte_carlo},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    seconds);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
