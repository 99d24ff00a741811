#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twlab/graph.hpp"
#include "twlab/rng.hpp"

namespace twlab {

enum class SweepModel { clique_graph, csp, bn_raw, bn_ordered, two_layer, rbnbt, gnm };
enum class TreewidthMode { exact, bounds };

const char* to_string(SweepModel model) noexcept;
SweepModel parse_sweep_model(const std::string& name);

/// One phase-transition sweep over an (n, ratio) grid.
///
/// What `ratio` means depends on the model:
///   clique_graph, gnm, csp  m/n, the number of hyperedges (constraints) per vertex
///   bn_raw, bn_ordered      the common parent probability p
///   two_layer               |V2| / |V1| with n = |V1| and d parents per lower node
///   rbnbt                   the arc removal probability, with k = d
struct SweepConfig {
    SweepModel model = SweepModel::clique_graph;
    int d = 3;
    std::vector<int> sizes;
    std::vector<double> ratios;
    int samples = 10;
    std::uint64_t master_seed = 1;
    TreewidthMode mode = TreewidthMode::bounds;
    int exact_cap = 22;
    // Balanced-partition certificates are attempted only when C(n, k+1)
    // stays within this budget.
    std::uint64_t partition_budget = 2'000'000;
    int domain_size = 2;
    double tightness = 0.2;
    // 0: take TWLAB_THREADS, else the hardware concurrency.
    int threads = 0;
};

// Default ratio grid: `count` points spread linearly over
// [0.5 sparse_ratio(d), 2 critical_ratio(d)].
std::vector<double> default_ratio_grid(int d, int count = 10);

struct SweepRecord {
    SweepModel model = SweepModel::clique_graph;
    int d = 0;
    int n = 0;
    double ratio = 0.0;
    int m = 0;
    int sample = 0;
    Seed seed;
    int vertices = 0;
    std::size_t edges = 0;
    int tw_lower = 0;
    int tw_upper = 0;
    std::optional<int> tw_exact;
    std::optional<int> cert_k;
    std::optional<bool> cert_exceeds;
    double wall_ms = 0.0;

    // Exact treewidth when known, else the upper bound.
    int treewidth() const noexcept { return tw_exact ? *tw_exact : tw_upper; }
};

struct CellSummary {
    SweepModel model = SweepModel::clique_graph;
    int d = 0;
    int n = 0;
    double ratio = 0.0;
    int m = 0;
    int samples = 0;
    double median_tw = 0.0;
    double frac_tw_le_d_plus_1 = 0.0;
    std::optional<double> frac_certified;
};

struct SweepResult {
    std::vector<SweepRecord> records;    // ordered by (cell, sample)
    std::vector<CellSummary> summaries;  // one per feasible cell, grid order
    std::vector<std::string> warnings;
};

// Graph whose treewidth a sweep measures for one sample.
Graph sweep_instance(const SweepConfig& config, int n, double ratio, Seed seed);

SweepResult run_sweep(const SweepConfig& config);

// Summary row recomputed from instance records alone.
CellSummary summarize_cell(const std::vector<SweepRecord>& cell, int d);

double median(std::vector<double> values);

// CSV starting with the "# twlab-sweep v1" line. Columns prefixed "t_" hold
// timings; they are left empty when include_timings is false.
void write_sweep_csv(std::ostream& out, const SweepResult& result, bool include_timings = true);

// Whitespace-separated summary blocks (one per n) for gnuplot.
void write_sweep_gnuplot(std::ostream& out, const SweepResult& result);

struct ScalingConfig {
    int d = 3;
    std::vector<int> sizes;
    double low_ratio = 0.1;
    double high_ratio = 1.0;
    int samples = 5;
    int domain_size = 2;
    double tightness = 0.2;
    std::chrono::milliseconds time_budget{5000};
    std::uint64_t master_seed = 1;
    int threads = 0;
};

struct ScalingRecord {
    std::string series;   // "low" or "high"
    double ratio = 0.0;
    int n = 0;
    int m = 0;
    int sample = 0;
    Seed seed;
    int width = 0;
    std::optional<bool> satisfiable;  // empty when censored
    bool censored = false;
    std::uint64_t max_table_entries = 0;
    double solve_ms = 0.0;
};

struct ScalingSummary {
    std::string series;
    double ratio = 0.0;
    int n = 0;
    int samples = 0;
    double median_width = 0.0;
    int censored = 0;
    double median_solve_ms = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRecord> records;
    std::vector<ScalingSummary> summaries;  // low series first, then high; n ascending
};

// Solver running time against n on both sides of the transition. Requires
// low_ratio < sparse_ratio(d) < critical_ratio(d) < high_ratio and ascending
// sizes. Instances that exceed the time budget are recorded as censored.
ScalingResult run_solver_scaling(const ScalingConfig& config);

void write_scaling_csv(std::ostream& out, const ScalingResult& result, bool include_timings = true);

// TWLAB_THREADS when set to a positive integer, else hardware concurrency (>= 1).
int default_thread_count();

} // namespace twlab
