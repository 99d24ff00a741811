#include "twlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "twlab/errors.hpp"
#include "twlab/random_models.hpp"
#include "twlab/solvers.hpp"
#include "twlab/thresholds.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
void parallel_for(std::size_t count, int threads, F&& body)
{
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

int scaled_count(double ratio, int n)
{
    return static_cast<int>(std::llround(ratio * n));
}

std::string format_real(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", x);
    return buffer;
}

std::string format_fixed(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", x);
    return buffer;
}

template <typename T>
std::string optional_field(const std::optional<T>& value)
{
    if (!value) {
        return "";
    }
    if constexpr (std::is_same_v<T, bool>) {
        return *value ? "1" : "0";
    } else if constexpr (std::is_floating_point_v<T>) {
        return format_fixed(*value);
    } else {
        return std::to_string(*value);
    }
}

bool uses_ratio_as_density(SweepModel model)
{
    return model == SweepModel::clique_graph || model == SweepModel::gnm || model == SweepModel::csp;
}

int effective_order(const SweepConfig& config)
{
    return config.model == SweepModel::gnm ? 2 : config.d;
}

// Vertex count of the measured graph; nullopt plus a reason when infeasible.
std::optional<int> cell_vertices(const SweepConfig& config, int n, double ratio, std::string& why)
{
    const int d = effective_order(config);
    switch (config.model) {
    case SweepModel::clique_graph:
    case SweepModel::gnm:
    case SweepModel::csp: {
        const int m = scaled_count(ratio, n);
        std::uint64_t total = 0;
        try {
            total = d <= n ? binomial(n, d) : 0;
        } catch (const InvalidArgument&) {
            total = ~std::uint64_t{0};
        }
        if (d > n || static_cast<std::uint64_t>(m) > total) {
            why = "m=" + std::to_string(m) + " exceeds C(" + std::to_string(n) + "," + std::to_string(d) + ")";
            return std::nullopt;
        }
        return n;
    }
    case SweepModel::bn_raw:
    case SweepModel::bn_ordered:
        if (ratio < 0.0 || ratio > 1.0) {
            why = "parent probability " + format_real(ratio) + " outside [0,1]";
            return std::nullopt;
        }
        return n;
    case SweepModel::two_layer:
        if (d > n) {
            why = "d exceeds the upper layer size";
            return std::nullopt;
        }
        return n + scaled_count(ratio, n);
    case SweepModel::rbnbt:
        if (d >= n || ratio < 0.0 || ratio >= 1.0) {
            why = "rbnbt needs k < n and removal probability in [0,1)";
            return std::nullopt;
        }
        return n;
    }
    return std::nullopt;
}

} // namespace

const char* to_string(SweepModel model) noexcept
{
    switch (model) {
    case SweepModel::clique_graph: return "clique_graph";
    case SweepModel::csp: return "csp";
    case SweepModel::bn_raw: return "bn_raw";
    case SweepModel::bn_ordered: return "bn_ordered";
    case SweepModel::two_layer: return "two_layer";
    case SweepModel::rbnbt: return "rbnbt";
    case SweepModel::gnm: return "gnm";
    }
    return "unknown";
}

SweepModel parse_sweep_model(const std::string& name)
{
    for (auto model : {SweepModel::clique_graph, SweepModel::csp, SweepModel::bn_raw, SweepModel::bn_ordered,
                       SweepModel::two_layer, SweepModel::rbnbt, SweepModel::gnm}) {
        if (name == to_string(model)) {
            return model;
        }
    }
    throw InvalidArgument("unknown sweep model '" + name + "'");
}

int default_thread_count()
{
    if (const char* env = std::getenv("TWLAB_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<int>(value);
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> default_ratio_grid(int d, int count)
{
    const double lo = 0.5 * sparse_ratio(d).value();
    const double hi = 2.0 * critical_ratio(d);
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return grid;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Graph sweep_instance(const SweepConfig& config, int n, double ratio, Seed seed)
{
    const int d = effective_order(config);
    switch (config.model) {
    case SweepModel::clique_graph:
    case SweepModel::gnm:
        return gen_clique_graph(n, scaled_count(ratio, n), d, seed);
    case SweepModel::csp:
        return primal_graph(gen_csp(n, scaled_count(ratio, n), d, config.domain_size, config.tightness, seed));
    case SweepModel::bn_raw:
    case SweepModel::bn_ordered: {
        const std::vector<double> p(static_cast<std::size_t>(n), ratio);
        return moralize(gen_bn(n, p, seed, config.model == SweepModel::bn_raw ? BnMode::raw : BnMode::ordered));
    }
    case SweepModel::two_layer:
        return moralize(gen_two_layer(n, scaled_count(ratio, n), d, seed));
    case SweepModel::rbnbt:
        return moralize(gen_rbnbt(n, d, ratio, seed));
    }
    throw InvalidArgument("unknown sweep model");
}

CellSummary summarize_cell(const std::vector<SweepRecord>& cell, int d)
{
    CellSummary s;
    if (cell.empty()) {
        return s;
    }
    s.model = cell.front().model;
    s.d = cell.front().d;
    s.n = cell.front().n;
    s.ratio = cell.front().ratio;
    s.m = cell.front().m;
    s.samples = static_cast<int>(cell.size());
    std::vector<double> tw;
    int small = 0;
    int attempted = 0;
    int certified = 0;
    for (const auto& r : cell) {
        tw.push_back(r.treewidth());
        small += r.treewidth() <= d + 1 ? 1 : 0;
        if (r.cert_exceeds) {
            ++attempted;
            certified += *r.cert_exceeds ? 1 : 0;
        }
    }
    s.median_tw = median(tw);
    s.frac_tw_le_d_plus_1 = static_cast<double>(small) / s.samples;
    if (attempted == s.samples) {
        s.frac_certified = static_cast<double>(certified) / s.samples;
    }
    return s;
}

SweepResult run_sweep(const SweepConfig& config)
{
    if (config.samples < 1) {
        throw InvalidArgument("samples must be at least 1");
    }
    if (config.sizes.empty() || config.ratios.empty()) {
        throw InvalidArgument("sweep needs at least one size and one ratio");
    }
    for (double r : config.ratios) {
        if (!(r > 0.0) && config.model != SweepModel::rbnbt) {
            throw InvalidArgument("ratios must be positive");
        }
    }
    const int d = effective_order(config);

    struct Cell {
        int n;
        double ratio;
        std::uint64_t index;
    };
    SweepResult result;
    std::vector<Cell> cells;
    std::uint64_t cell_index = 0;
    for (int n : config.sizes) {
        for (double ratio : config.ratios) {
            std::string why;
            const auto vertices = cell_vertices(config, n, ratio, why);
            if (!vertices) {
                result.warnings.push_back("skipping cell n=" + std::to_string(n) + " ratio=" + format_real(ratio) +
                                          ": " + why);
            } else if (config.mode == TreewidthMode::exact && *vertices > config.exact_cap) {
                throw InvalidArgument("exact mode needs at most " + std::to_string(config.exact_cap) +
                                      " vertices per instance; cell n=" + std::to_string(n) + " has " +
                                      std::to_string(*vertices));
            } else {
                cells.push_back({n, ratio, cell_index});
            }
            ++cell_index;
        }
    }

    const std::size_t samples = static_cast<std::size_t>(config.samples);
    std::vector<SweepRecord> records(cells.size() * samples);
    const int threads = config.threads > 0 ? config.threads : default_thread_count();
    parallel_for(records.size(), threads, [&](std::size_t job) {
        const auto& cell = cells[job / samples];
        const auto sample = static_cast<int>(job % samples);
        const auto start = Clock::now();
        SweepRecord r;
        r.model = config.model;
        r.d = d;
        r.n = cell.n;
        r.ratio = cell.ratio;
        r.m = config.model == SweepModel::bn_raw || config.model == SweepModel::bn_ordered ||
                      config.model == SweepModel::rbnbt
                  ? 0
                  : scaled_count(cell.ratio, cell.n);
        r.sample = sample;
        r.seed = Seed{config.master_seed, (cell.index << 32) | static_cast<std::uint64_t>(sample)};
        const Graph g = sweep_instance(config, cell.n, cell.ratio, r.seed);
        r.vertices = g.vertex_count();
        r.edges = g.edge_count();
        const auto bounds = treewidth_bounds(g, config.mode == TreewidthMode::exact, config.exact_cap);
        r.tw_lower = bounds.lower;
        r.tw_upper = bounds.upper;
        r.tw_exact = bounds.exact;
        if (uses_ratio_as_density(config.model)) {
            if (const auto delta = witness_delta(d, cell.ratio)) {
                const int k = static_cast<int>(std::ceil(*delta * cell.n));
                r.cert_k = k;
                if (k + 1 <= g.vertex_count()) {
                    try {
                        r.cert_exceeds = certify_treewidth_exceeds(g, k, config.partition_budget);
                    } catch (const BudgetExceeded&) {
                        r.cert_exceeds.reset();
                    }
                }
            }
        }
        r.wall_ms = elapsed_ms(start);
        records[job] = r;
    });

    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<SweepRecord> cell(records.begin() + static_cast<std::ptrdiff_t>(c * samples),
                                      records.begin() + static_cast<std::ptrdiff_t>((c + 1) * samples));
        result.summaries.push_back(summarize_cell(cell, d));
    }
    result.records = std::move(records);
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool include_timings)
{
    out << "# twlab-sweep v1\n";
    out << "kind,model,d,n,ratio,m,sample,seed_master,seed_stream,vertices,edges,tw_lower,tw_upper,tw_exact,tw,"
           "tw_over_n,cert_k,cert_exceeds,samples,median_tw,frac_tw_le_d_plus_1,frac_certified,t_wall_ms\n";
    std::size_t next = 0;
    for (const auto& s : result.summaries) {
        for (int i = 0; i < s.samples && next < result.records.size(); ++i) {
            const auto& r = result.records[next++];
            out << "instance," << to_string(r.model) << ',' << r.d << ',' << r.n << ',' << format_real(r.ratio) << ','
                << r.m << ',' << r.sample << ',' << r.seed.master << ',' << r.seed.stream << ',' << r.vertices << ','
                << r.edges << ',' << r.tw_lower << ',' << r.tw_upper << ',' << optional_field(r.tw_exact) << ','
                << r.treewidth() << ',' << format_fixed(static_cast<double>(r.treewidth()) / r.n) << ','
                << optional_field(r.cert_k) << ',' << optional_field(r.cert_exceeds) << ",,,,,"
                << (include_timings ? format_fixed(r.wall_ms) : "") << '\n';
        }
        out << "summary," << to_string(s.model) << ',' << s.d << ',' << s.n << ',' << format_real(s.ratio) << ','
            << s.m << ",,,,,,,,,,,,," << s.samples << ',' << format_fixed(s.median_tw) << ','
            << format_fixed(s.frac_tw_le_d_plus_1) << ',' << optional_field(s.frac_certified) << ",\n";
    }
}

void write_sweep_gnuplot(std::ostream& out, const SweepResult& result)
{
    out << "# n ratio median_tw frac_tw_le_d_plus_1 frac_certified\n";
    int current = -1;
    for (const auto& s : result.summaries) {
        if (current != -1 && s.n != current) {
            out << "\n\n";
        }
        current = s.n;
        out << s.n << ' ' << format_real(s.ratio) << ' ' << format_fixed(s.median_tw) << ' '
            << format_fixed(s.frac_tw_le_d_plus_1) << ' '
            << (s.frac_certified ? format_fixed(*s.frac_certified) : std::string("NaN")) << '\n';
    }
}

ScalingResult run_solver_scaling(const ScalingConfig& config)
{
    const double sparse = sparse_ratio(config.d).value();
    const double critical = critical_ratio(config.d);
    if (!(config.low_ratio > 0.0 && config.low_ratio < sparse)) {
        throw InvalidArgument("low ratio must lie in (0, 1/(d(d-1)))");
    }
    if (!(config.high_ratio > critical)) {
        throw InvalidArgument("high ratio must exceed the critical ratio " + format_real(critical));
    }
    if (config.sizes.empty() || !std::is_sorted(config.sizes.begin(), config.sizes.end())) {
        throw InvalidArgument("sizes must be non-empty and ascending");
    }
    if (config.samples < 1) {
        throw InvalidArgument("samples must be at least 1");
    }

    struct Job {
        int series;
        int n;
        int sample;
        std::uint64_t cell;
    };
    std::vector<Job> jobs;
    std::uint64_t cell = 0;
    for (int series = 0; series < 2; ++series) {
        for (int n : config.sizes) {
            for (int s = 0; s < config.samples; ++s) {
                jobs.push_back({series, n, s, cell});
            }
            ++cell;
        }
    }
    std::vector<ScalingRecord> records(jobs.size());
    const int threads = config.threads > 0 ? config.threads : default_thread_count();
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        const auto& job = jobs[i];
        ScalingRecord r;
        r.series = job.series == 0 ? "low" : "high";
        r.ratio = job.series == 0 ? config.low_ratio : config.high_ratio;
        r.n = job.n;
        r.m = scaled_count(r.ratio, job.n);
        r.sample = job.sample;
        r.seed = Seed{config.master_seed, (job.cell << 32) | static_cast<std::uint64_t>(job.sample)};
        const auto csp = gen_csp(job.n, r.m, config.d, config.domain_size, config.tightness, r.seed);
        const Graph g = primal_graph(csp);
        const auto td = decomposition_from_order(g, greedy_order(g, Heuristic::min_fill));
        r.width = td.width();
        const auto start = Clock::now();
        try {
            TdSolveOptions options;
            options.time_budget = config.time_budget;
            const auto solved = solve_csp_td(csp, td, options);
            r.satisfiable = solved.satisfiable;
            r.max_table_entries = solved.max_table_entries;
        } catch (const BudgetExceeded&) {
            r.censored = true;
        }
        r.solve_ms = elapsed_ms(start);
        records[i] = std::move(r);
    });

    ScalingResult result;
    for (std::size_t begin = 0; begin < records.size(); begin += static_cast<std::size_t>(config.samples)) {
        ScalingSummary s;
        const auto& first = records[begin];
        s.series = first.series;
        s.ratio = first.ratio;
        s.n = first.n;
        s.samples = config.samples;
        std::vector<double> widths;
        std::vector<double> times;
        for (std::size_t i = begin; i < begin + static_cast<std::size_t>(config.samples); ++i) {
            widths.push_back(records[i].width);
            times.push_back(records[i].solve_ms);
            s.censored += records[i].censored ? 1 : 0;
        }
        s.median_width = median(widths);
        s.median_solve_ms = median(times);
        result.summaries.push_back(s);
    }
    result.records = std::move(records);
    return result;
}

void write_scaling_csv(std::ostream& out, const ScalingResult& result, bool include_timings)
{
    out << "# twlab-scaling v1\n";
    out << "kind,series,ratio,n,m,sample,seed_master,seed_stream,width,status,max_table_entries,samples,"
           "median_width,censored,t_solve_ms,t_median_solve_ms\n";
    std::size_t next = 0;
    for (const auto& s : result.summaries) {
        for (int i = 0; i < s.samples && next < result.records.size(); ++i) {
            const auto& r = result.records[next++];
            const char* status = r.censored ? "timeout" : (*r.satisfiable ? "sat" : "unsat");
            out << "instance," << r.series << ',' << format_real(r.ratio) << ',' << r.n << ',' << r.m << ','
                << r.sample << ',' << r.seed.master << ',' << r.seed.stream << ',' << r.width << ',' << status << ','
                << (r.censored ? std::string() : std::to_string(r.max_table_entries)) << ",,,,"
                << (include_timings ? format_fixed(r.solve_ms) : "") << ",\n";
        }
        out << "summary," << s.series << ',' << format_real(s.ratio) << ',' << s.n << ",,,,,,,," << s.samples << ','
            << format_fixed(s.median_width) << ',' << s.censored << ",,"
            << (include_timings ? format_fixed(s.median_solve_ms) : "") << '\n';
    }
}

} // namespace twlab
