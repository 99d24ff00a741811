#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "twlab/errors.hpp"
#include "twlab/experiments.hpp"
#include "twlab/graph.hpp"
#include "twlab/pace_format.hpp"
#include "twlab/random_models.hpp"
#include "twlab/serialization.hpp"
#include "twlab/solvers.hpp"
#include "twlab/thresholds.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::string out_path;
    std::optional<Format> format;
};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback)
    {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw InvalidArgument("cannot open '" + path + "' for writing");
            }
        }
        stream_ = file_ ? file_.get() : &fallback;
    }

    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::string read_text(const std::string& path)
{
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool looks_like_json(const std::string& text)
{
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

json graph_json(const Graph& g)
{
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return {{"type", "graph"}, {"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const std::string& text)
{
    const auto type = json_document_type(text);
    if (type == "csp") {
        return primal_graph(csp_from_json(text));
    }
    if (type == "bayesnet") {
        return moralize(bayesnet_from_json(text).structure());
    }
    if (type == "digraph") {
        return moralize(digraph_from_json(text));
    }
    if (type == "graph") {
        try {
            const auto doc = json::parse(text);
            std::vector<Edge> edges;
            for (const auto& e : doc.at("edges")) {
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            }
            return Graph(doc.at("n").get<int>(), edges);
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed graph document: ") + e.what(), 0);
        }
    }
    throw InvalidArgument("unsupported document type '" + type + "'");
}

// A .gr file, or any JSON document with a graph view (primal or moral).
Graph load_graph(const std::string& path)
{
    const auto text = read_text(path);
    if (looks_like_json(text)) {
        return graph_from_json(text);
    }
    std::istringstream in(text);
    return read_gr(in);
}

void emit_json(std::ostream& out, const json& doc)
{
    out << doc.dump(2) << '\n';
}

double ms_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Format format_or(const GlobalOptions& g, Format fallback)
{
    return g.format.value_or(fallback);
}

[[noreturn]] void unsupported_format(const char* command)
{
    throw InvalidArgument(std::string("--format not supported by '") + command + "'");
}

json violation_json(const Violation& v)
{
    json item{{"kind", to_string(v.kind)}, {"message", v.message}};
    item["vertex"] = v.vertex >= 0 ? json(v.vertex) : json(nullptr);
    item["edge"] = v.edge.first >= 0 ? json::array({v.edge.first, v.edge.second}) : json(nullptr);
    return item;
}

// gen ---------------------------------------------------------------------

struct GenOptions {
    std::string model = "clique_graph";
    int n = 20;
    int m = -1;
    int d = 3;
    int k = 3;
    int n2 = -1;
    double p = 0.1;
    double removal = 0.0;
    int domain = 2;
    double tightness = 0.2;
};

void run_gen(const GenOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const Seed seed{g.seed, 0};
    const int m = o.m >= 0 ? o.m : o.n;
    std::optional<Graph> graph;
    std::optional<DiGraph> digraph;
    std::optional<CspInstance> csp;
    if (o.model == "clique_graph") {
        graph = gen_clique_graph(o.n, m, o.d, seed);
    } else if (o.model == "gnm") {
        graph = gen_gnm(o.n, m, seed);
    } else if (o.model == "gnp") {
        graph = gen_gnp(o.n, o.p, seed);
    } else if (o.model == "ktree") {
        graph = gen_ktree(o.n, o.k, seed);
    } else if (o.model == "csp") {
        csp = gen_csp(o.n, m, o.d, o.domain, o.tightness, seed);
    } else if (o.model == "bn_raw" || o.model == "bn_ordered") {
        const std::vector<double> p(static_cast<std::size_t>(std::max(o.n, 0)), o.p);
        digraph = gen_bn(o.n, p, seed, o.model == "bn_raw" ? BnMode::raw : BnMode::ordered);
    } else if (o.model == "two_layer") {
        digraph = gen_two_layer(o.n, o.n2 >= 0 ? o.n2 : o.n, o.d, seed);
    } else if (o.model == "rbnbt") {
        digraph = gen_rbnbt(o.n, o.k, o.removal, seed);
    } else {
        throw InvalidArgument("unknown model '" + o.model + "'");
    }

    const Format format = format_or(g, graph ? Format::text : Format::json);
    if (format == Format::csv) {
        unsupported_format("gen");
    }
    if (format == Format::text) {
        write_gr(out, graph ? *graph : csp ? primal_graph(*csp) : moralize(*digraph));
        return;
    }
    if (graph) {
        emit_json(out, graph_json(*graph));
    } else if (csp) {
        out << to_json(*csp);
    } else if (digraph->is_acyclic()) {
        out << to_json(fill_cpts(*digraph, o.domain, Seed{g.seed, 1}));
    } else {
        out << to_json(*digraph);
    }
}

// tw / td / validate ----------------------------------------------------------

struct TwOptions {
    std::string input = "-";
    bool exact = false;
    int cap = kDefaultExactCap;
};

void run_tw(const TwOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const Graph graph = load_graph(o.input);
    const auto bounds = treewidth_bounds(graph, false);
    std::optional<int> exact;
    double exact_ms = 0.0;
    if (o.exact) {
        const auto start = std::chrono::steady_clock::now();
        exact = exact_treewidth(graph, o.cap);
        exact_ms = ms_since(start);
    }
    const int value = exact ? *exact : bounds.upper;
    switch (format_or(g, Format::json)) {
    case Format::json: {
        json doc{{"vertices", graph.vertex_count()},
                 {"edges", graph.edge_count()},
                 {"treewidth", value},
                 {"exact", exact ? json(*exact) : json(nullptr)},
                 {"lower", bounds.lower},
                 {"upper", bounds.upper},
                 {"lower_method", bounds.lower_method},
                 {"upper_method", bounds.upper_method},
                 {"t_lower_ms", bounds.lower_ms},
                 {"t_upper_ms", bounds.upper_ms}};
        if (exact) {
            doc["t_exact_ms"] = exact_ms;
        }
        emit_json(out, doc);
        break;
    }
    case Format::text:
        if (exact) {
            out << "treewidth " << *exact << '\n';
        } else {
            out << "treewidth in [" << bounds.lower << ", " << bounds.upper << "]\n";
        }
        break;
    case Format::csv:
        out << "vertices,edges,lower,upper,exact\n"
            << graph.vertex_count() << ',' << graph.edge_count() << ',' << bounds.lower << ',' << bounds.upper << ','
            << (exact ? std::to_string(*exact) : "") << '\n';
        break;
    }
}

struct TdOptions {
    std::string input = "-";
    std::string heuristic = "min_fill";
};

void run_td(const TdOptions& o, const GlobalOptions& g, std::ostream& out)
{
    Heuristic heuristic = Heuristic::min_fill;
    if (o.heuristic == "min_degree") {
        heuristic = Heuristic::min_degree;
    } else if (o.heuristic != "min_fill") {
        throw InvalidArgument("unknown heuristic '" + o.heuristic + "'");
    }
    const Graph graph = load_graph(o.input);
    const auto order = greedy_order(graph, heuristic);
    const auto td = decomposition_from_order(graph, order);
    switch (format_or(g, Format::text)) {
    case Format::text:
        write_td(out, td, graph.vertex_count());
        break;
    case Format::json: {
        json tree = json::array();
        for (const auto& [a, b] : td.tree_edges) {
            tree.push_back({a, b});
        }
        emit_json(out, {{"type", "tree_decomposition"},
                        {"n", graph.vertex_count()},
                        {"width", td.width()},
                        {"order", order},
                        {"bags", td.bags},
                        {"tree_edges", std::move(tree)}});
        break;
    }
    case Format::csv:
        unsupported_format("td");
    }
}

struct ValidateOptions {
    std::string graph;
    std::string td;
};

void run_validate(const ValidateOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const Graph graph = load_graph(o.graph);
    json doc{{"valid", false}, {"width", nullptr}, {"violations", json::array()}};
    std::optional<ValidationReport> report;
    try {
        std::istringstream in(read_text(o.td));
        report = validate_decomposition(graph, read_td(in));
    } catch (const ParseError& e) {
        doc["violations"].push_back({{"kind", "parse_error"}, {"message", e.what()}, {"line", e.line()}});
    }
    if (report) {
        doc["valid"] = report->ok();
        doc["width"] = report->width;
        for (const auto& v : report->violations) {
            doc["violations"].push_back(violation_json(v));
        }
    }
    switch (format_or(g, Format::json)) {
    case Format::json:
        emit_json(out, doc);
        break;
    case Format::text:
        out << (doc["valid"].get<bool>() ? "valid" : "invalid");
        if (report) {
            out << " width " << report->width;
        }
        out << '\n';
        for (const auto& v : doc["violations"]) {
            out << v["kind"].get<std::string>() << ": " << v["message"].get<std::string>() << '\n';
        }
        break;
    case Format::csv:
        unsupported_format("validate");
    }
}

// solve -------------------------------------------------------------------------

struct SolveOptions {
    std::string input = "-";
    std::string td;
    int target = 0;
    bool bruteforce = false;
    std::int64_t time_budget_ms = 0;
};

int run_solve(const SolveOptions& o, const GlobalOptions& g, std::ostream& out)
{
    if (format_or(g, Format::json) != Format::json) {
        unsupported_format("solve");
    }
    const auto text = read_text(o.input);
    const auto type = json_document_type(text);
    if (type == "bayesnet") {
        const auto net = bayesnet_from_json(text);
        if (o.target < 0 || o.target >= net.structure().vertex_count()) {
            throw InvalidArgument("--target out of range");
        }
        const auto start = std::chrono::steady_clock::now();
        const auto order = inference_order(net, o.target);
        const auto marginal = ve_marginal(net, o.target, order);
        emit_json(out, {{"status", "ok"},
                        {"target", o.target},
                        {"distribution", marginal.distribution},
                        {"width_used", marginal.max_scope - 1},
                        {"elapsed_ms", ms_since(start)},
                        {"max_table_entries", marginal.max_table_size}});
        return kExitOk;
    }
    if (type != "csp") {
        throw InvalidArgument("solve expects a csp or bayesnet document, got '" + type + "'");
    }
    const auto csp = csp_from_json(text);
    json doc;
    try {
        CspResult result;
        if (o.bruteforce) {
            result = solve_csp_bruteforce(csp);
        } else {
            const Graph primal = primal_graph(csp);
            TreeDecomposition td;
            if (!o.td.empty()) {
                std::istringstream in(read_text(o.td));
                td = read_td(in);
            } else {
                td = decomposition_from_order(primal, greedy_order(primal, Heuristic::min_fill));
            }
            TdSolveOptions options;
            if (o.time_budget_ms > 0) {
                options.time_budget = std::chrono::milliseconds(o.time_budget_ms);
            }
            result = solve_csp_td(csp, td, options);
        }
        doc["status"] = result.satisfiable ? "SAT" : "UNSAT";
        doc["witness"] = result.satisfiable ? json(result.witness) : json(nullptr);
        doc["width_used"] = result.width_used;
        doc["elapsed_ms"] = result.elapsed_ms;
        doc["max_table_entries"] = result.max_table_entries;
    } catch (const BudgetExceeded& e) {
        emit_json(out, {{"status", dynamic_cast<const Timeout*>(&e) ? "timeout" : "budget_exceeded"},
                        {"message", e.what()}});
        return kExitRefused;
    }
    emit_json(out, doc);
    return kExitOk;
}

// thresholds ----------------------------------------------------------------------

struct ThresholdOptions {
    int d = 3;
    std::optional<double> ratio;
};

void run_thresholds(const ThresholdOptions& o, const GlobalOptions& g, std::ostream& out)
{
    if (o.d < 2) {
        throw InvalidArgument("--d must be at least 2");
    }
    const auto pair = threshold_pair(o.d);
    std::optional<double> delta;
    std::string regime;
    if (o.ratio) {
        delta = witness_delta(o.d, *o.ratio);
        regime = *o.ratio < pair.sparse.value() ? "sparse" : *o.ratio > pair.critical ? "linear" : "open";
    }
    const std::string sparse_text = std::to_string(pair.sparse.numerator) + "/" + std::to_string(pair.sparse.denominator);
    switch (format_or(g, Format::json)) {
    case Format::json: {
        json doc{{"d", o.d},
                 {"critical", pair.critical},
                 {"sparse", pair.sparse.value()},
                 {"sparse_fraction", sparse_text}};
        if (o.ratio) {
            doc["ratio"] = *o.ratio;
            doc["regime"] = regime;
            doc["witness_delta"] = delta ? json(*delta) : json(nullptr);
        }
        emit_json(out, doc);
        break;
    }
    case Format::text: {
        char line[160];
        std::snprintf(line, sizeof line, "d = %d\ncritical ratio c(d) = %.10f\nsparse ratio 1/(d(d-1)) = %s = %.10f\n",
                      o.d, pair.critical, sparse_text.c_str(), pair.sparse.value());
        out << line;
        if (o.ratio) {
            std::snprintf(line, sizeof line, "ratio = %.10g (%s regime)\n", *o.ratio, regime.c_str());
            out << line;
            if (delta) {
                std::snprintf(line, sizeof line, "witness delta = %.10f\n", *delta);
                out << line;
            } else {
                out << "witness delta: none\n";
            }
        }
        break;
    }
    case Format::csv:
        out << "d,critical,sparse,ratio,witness_delta\n" << o.d << ',' << pair.critical << ',' << pair.sparse.value()
            << ',' << (o.ratio ? std::to_string(*o.ratio) : "") << ',' << (delta ? std::to_string(*delta) : "")
            << '\n';
        break;
    }
}

// sweep / scaling -------------------------------------------------------------------

struct SweepOptions {
    std::string model = "clique_graph";
    int d = 3;
    std::vector<int> sizes{20, 40, 60};
    std::vector<double> ratios;
    int samples = 10;
    std::string mode = "bounds";
    int cap = kDefaultExactCap;
    std::uint64_t partition_budget = 2'000'000;
    int domain = 2;
    double tightness = 0.2;
    int threads = 0;
    bool no_timings = false;
    std::string gnuplot;
};

void run_sweep_command(const SweepOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err)
{
    SweepConfig config;
    config.model = parse_sweep_model(o.model);
    config.d = o.d;
    config.sizes = o.sizes;
    config.ratios = o.ratios.empty() ? default_ratio_grid(o.d) : o.ratios;
    config.samples = o.samples;
    config.master_seed = g.seed;
    if (o.mode == "exact") {
        config.mode = TreewidthMode::exact;
    } else if (o.mode != "bounds") {
        throw InvalidArgument("--mode must be exact or bounds");
    }
    config.exact_cap = o.cap;
    config.partition_budget = o.partition_budget;
    config.domain_size = o.domain;
    config.tightness = o.tightness;
    config.threads = o.threads;

    const auto result = run_sweep(config);
    for (const auto& w : result.warnings) {
        err << "warning: " << w << '\n';
    }
    switch (format_or(g, Format::csv)) {
    case Format::csv:
        write_sweep_csv(out, result, !o.no_timings);
        break;
    case Format::text:
        write_sweep_gnuplot(out, result);
        break;
    case Format::json:
        unsupported_format("sweep");
    }
    if (!o.gnuplot.empty()) {
        std::ofstream plot(o.gnuplot, std::ios::binary);
        if (!plot) {
            throw InvalidArgument("cannot open '" + o.gnuplot + "' for writing");
        }
        write_sweep_gnuplot(plot, result);
    }
}

struct ScalingOptions {
    int d = 3;
    std::vector<int> sizes{20, 30, 40, 50};
    double low = 0.1;
    double high = 1.0;
    int samples = 5;
    int domain = 2;
    double tightness = 0.2;
    std::int64_t time_budget_ms = 5000;
    int threads = 0;
    bool no_timings = false;
};

void run_scaling_command(const ScalingOptions& o, const GlobalOptions& g, std::ostream& out)
{
    if (format_or(g, Format::csv) != Format::csv) {
        unsupported_format("scaling");
    }
    ScalingConfig config;
    config.d = o.d;
    config.sizes = o.sizes;
    config.low_ratio = o.low;
    config.high_ratio = o.high;
    config.samples = o.samples;
    config.domain_size = o.domain;
    config.tightness = o.tightness;
    config.time_budget = std::chrono::milliseconds(o.time_budget_ms);
    config.master_seed = g.seed;
    config.threads = o.threads;
    write_scaling_csv(out, run_solver_scaling(config), !o.no_timings);
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Treewidth phase-transition laboratory", "twlab"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    std::string format_name;
    app.add_option("--seed", global.seed, "Master seed")->capture_default_str();
    app.add_option("--out", global.out_path, "Write output to this file instead of stdout");
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--model", gen.model, "clique_graph|gnm|gnp|ktree|csp|bn_raw|bn_ordered|two_layer|rbnbt")
        ->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Vertices (upper layer size for two_layer)")->capture_default_str();
    gen_cmd->add_option("--m", gen.m, "Hyperedges, edges or constraints (default n)");
    gen_cmd->add_option("--d", gen.d, "Hyperedge order or parents per lower node")->capture_default_str();
    gen_cmd->add_option("--k", gen.k, "Clique parameter for ktree and rbnbt")->capture_default_str();
    gen_cmd->add_option("--n2", gen.n2, "Lower layer size for two_layer (default n)");
    gen_cmd->add_option("--p", gen.p, "Edge or parent probability")->capture_default_str();
    gen_cmd->add_option("--removal", gen.removal, "Arc removal probability for rbnbt")->capture_default_str();
    gen_cmd->add_option("--domain", gen.domain, "Domain size for csp and CPTs")->capture_default_str();
    gen_cmd->add_option("--tightness", gen.tightness, "Forbidden tuple probability for csp")->capture_default_str();

    TwOptions tw;
    auto* tw_cmd = app.add_subcommand("tw", "Treewidth bounds, or the exact value");
    tw_cmd->add_option("input", tw.input, ".gr file or JSON document ('-' for stdin)")->capture_default_str();
    tw_cmd->add_flag("--exact", tw.exact, "Compute exact treewidth");
    tw_cmd->add_option("--cap", tw.cap, "Largest vertex count accepted by --exact")->capture_default_str();

    TdOptions td;
    auto* td_cmd = app.add_subcommand("td", "Heuristic tree decomposition");
    td_cmd->add_option("input", td.input, ".gr file or JSON document ('-' for stdin)")->capture_default_str();
    td_cmd->add_option("--heuristic", td.heuristic, "min_fill|min_degree")->capture_default_str();

    ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate", "Check a tree decomposition against a graph");
    validate_cmd->add_option("graph", validate.graph, ".gr file or JSON document")->required();
    validate_cmd->add_option("td", validate.td, ".td file")->required();

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a CSP or compute a Bayesian network marginal");
    solve_cmd->add_option("input", solve.input, "csp or bayesnet JSON ('-' for stdin)")->capture_default_str();
    solve_cmd->add_option("--td", solve.td, ".td file for the CSP primal graph (default min-fill)");
    solve_cmd->add_option("--target", solve.target, "Query variable for a bayesnet")->capture_default_str();
    solve_cmd->add_flag("--bruteforce", solve.bruteforce, "Exhaustive search instead of dynamic programming");
    solve_cmd->add_option("--time-budget", solve.time_budget_ms, "Milliseconds; 0 disables")->capture_default_str();

    ThresholdOptions thresholds;
    auto* thresholds_cmd = app.add_subcommand("thresholds", "Threshold ratios for d-uniform random cliques");
    thresholds_cmd->add_option("--d", thresholds.d, "Hyperedge order")->capture_default_str();
    thresholds_cmd->add_option("--ratio", thresholds.ratio, "m/n at which to evaluate the witness delta");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Phase-transition sweep over an (n, ratio) grid");
    sweep_cmd->add_option("--model", sweep.model, "clique_graph|csp|bn_raw|bn_ordered|two_layer|rbnbt|gnm")
        ->capture_default_str();
    sweep_cmd->add_option("--d", sweep.d, "Hyperedge order, parents, or k for rbnbt")->capture_default_str();
    sweep_cmd->add_option("--sizes", sweep.sizes, "Comma-separated n values")->delimiter(',')->capture_default_str();
    sweep_cmd->add_option("--ratios", sweep.ratios, "Comma-separated ratios (default grid)")->delimiter(',');
    sweep_cmd->add_option("--samples", sweep.samples, "Samples per cell")->capture_default_str();
    sweep_cmd->add_option("--mode", sweep.mode, "exact|bounds")->capture_default_str();
    sweep_cmd->add_option("--cap", sweep.cap, "Largest vertex count in exact mode")->capture_default_str();
    sweep_cmd->add_option("--partition-budget", sweep.partition_budget, "Largest C(n,k+1) for certificates")
        ->capture_default_str();
    sweep_cmd->add_option("--domain", sweep.domain, "CSP domain size")->capture_default_str();
    sweep_cmd->add_option("--tightness", sweep.tightness, "CSP tightness")->capture_default_str();
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: TWLAB_THREADS or hardware)");
    sweep_cmd->add_flag("--no-timings", sweep.no_timings, "Leave timing columns empty");
    sweep_cmd->add_option("--gnuplot", sweep.gnuplot, "Also write gnuplot summary data here");

    ScalingOptions scaling;
    auto* scaling_cmd = app.add_subcommand("scaling", "Solver width and time against n, both sides of the transition");
    scaling_cmd->add_option("--d", scaling.d, "Constraint arity")->capture_default_str();
    scaling_cmd->add_option("--sizes", scaling.sizes, "Ascending comma-separated n values")
        ->delimiter(',')
        ->capture_default_str();
    scaling_cmd->add_option("--low", scaling.low, "Ratio below the sparse threshold")->capture_default_str();
    scaling_cmd->add_option("--high", scaling.high, "Ratio above the critical threshold")->capture_default_str();
    scaling_cmd->add_option("--samples", scaling.samples, "Samples per n")->capture_default_str();
    scaling_cmd->add_option("--domain", scaling.domain, "Domain size")->capture_default_str();
    scaling_cmd->add_option("--tightness", scaling.tightness, "Forbidden tuple probability")->capture_default_str();
    scaling_cmd->add_option("--time-budget", scaling.time_budget_ms, "Milliseconds per instance")
        ->capture_default_str();
    scaling_cmd->add_option("--threads", scaling.threads, "Worker threads (0: TWLAB_THREADS or hardware)");
    scaling_cmd->add_flag("--no-timings", scaling.no_timings, "Leave timing columns empty");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    if (format_name == "json") {
        global.format = Format::json;
    } else if (format_name == "csv") {
        global.format = Format::csv;
    } else if (format_name == "text") {
        global.format = Format::text;
    }

    try {
        Sink sink(global.out_path, out);
        std::ostream& o = sink.stream();
        int code = kExitOk;
        if (*gen_cmd) {
            run_gen(gen, global, o);
        } else if (*tw_cmd) {
            run_tw(tw, global, o);
        } else if (*td_cmd) {
            run_td(td, global, o);
        } else if (*validate_cmd) {
            run_validate(validate, global, o);
        } else if (*solve_cmd) {
            code = run_solve(solve, global, o);
        } else if (*thresholds_cmd) {
            run_thresholds(thresholds, global, o);
        } else if (*sweep_cmd) {
            run_sweep_command(sweep, global, o, err);
        } else if (*scaling_cmd) {
            run_scaling_command(scaling, global, o);
        }
        o.flush();
        return code;
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefused;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cli_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace twlab
