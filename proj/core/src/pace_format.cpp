#include "twlab/pace_format.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

bool skippable(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == 'c';
}

long long read_int(std::istringstream& fields, std::size_t line_no, const char* what)
{
    long long value = 0;
    if (!(fields >> value)) {
        throw ParseError(std::string("expected ") + what, line_no);
    }
    return value;
}

void expect_end(std::istringstream& fields, std::size_t line_no)
{
    std::string extra;
    if (fields >> extra) {
        throw ParseError("unexpected token '" + extra + "'", line_no);
    }
}

std::ifstream open(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open " + path);
    }
    return in;
}

} // namespace

Graph read_gr(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    long long n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::istringstream fields(line);
        if (n < 0) {
            std::string p;
            std::string tw;
            fields >> p >> tw;
            if (p != "p" || tw != "tw") {
                throw ParseError("expected header 'p tw <n> <m>'", line_no);
            }
            n = read_int(fields, line_no, "vertex count");
            m = read_int(fields, line_no, "edge count");
            expect_end(fields, line_no);
            if (n < 0 || m < 0) {
                throw ParseError("negative count in header", line_no);
            }
            continue;
        }
        const long long u = read_int(fields, line_no, "edge endpoint");
        const long long v = read_int(fields, line_no, "edge endpoint");
        expect_end(fields, line_no);
        if (u < 1 || v < 1 || u > n || v > n) {
            throw ParseError("edge endpoint out of range 1.." + std::to_string(n), line_no);
        }
        if (u == v) {
            throw ParseError("self-loop", line_no);
        }
        edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    if (n < 0) {
        throw ParseError("missing 'p tw' header", line_no);
    }
    if (static_cast<long long>(edges.size()) != m) {
        throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                         line_no);
    }
    Graph g(static_cast<int>(n), std::move(edges));
    if (static_cast<long long>(g.edge_count()) != m) {
        throw ParseError("duplicate edges", line_no);
    }
    return g;
}

void write_gr(std::ostream& out, const Graph& g)
{
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << u + 1 << ' ' << v + 1 << '\n';
    }
}

TreeDecomposition read_td(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    long long bag_count = -1;
    long long max_bag = 0;
    long long n = 0;
    TreeDecomposition td;
    std::vector<char> bag_seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        std::istringstream fields(line);
        if (bag_count < 0) {
            std::string s;
            std::string kind;
            fields >> s >> kind;
            if (s != "s" || kind != "td") {
                throw ParseError("expected header 's td <bags> <width+1> <n>'", line_no);
            }
            bag_count = read_int(fields, line_no, "bag count");
            max_bag = read_int(fields, line_no, "largest bag size");
            n = read_int(fields, line_no, "vertex count");
            expect_end(fields, line_no);
            if (bag_count < 0 || max_bag < 0 || n < 0) {
                throw ParseError("negative count in header", line_no);
            }
            td.bags.resize(static_cast<std::size_t>(bag_count));
            bag_seen.assign(static_cast<std::size_t>(bag_count), 0);
            continue;
        }
        if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] == 'b') {
            std::string b;
            fields >> b;
            const long long index = read_int(fields, line_no, "bag index");
            if (index < 1 || index > bag_count) {
                throw ParseError("bag index out of range", line_no);
            }
            if (bag_seen[static_cast<std::size_t>(index - 1)]) {
                throw ParseError("bag " + std::to_string(index) + " listed twice", line_no);
            }
            bag_seen[static_cast<std::size_t>(index - 1)] = 1;
            auto& bag = td.bags[static_cast<std::size_t>(index - 1)];
            long long v = 0;
            while (fields >> v) {
                // Range violations are left for the validator to report.
                bag.push_back(static_cast<Vertex>(v - 1));
            }
            if (!fields.eof()) {
                throw ParseError("malformed bag entry", line_no);
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            continue;
        }
        const long long a = read_int(fields, line_no, "tree edge endpoint");
        const long long c = read_int(fields, line_no, "tree edge endpoint");
        expect_end(fields, line_no);
        td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(c - 1));
    }
    if (bag_count < 0) {
        throw ParseError("missing 's td' header", line_no);
    }
    const auto missing = std::find(bag_seen.begin(), bag_seen.end(), 0);
    if (missing != bag_seen.end()) {
        throw ParseError("bag " + std::to_string(missing - bag_seen.begin() + 1) + " never listed", line_no);
    }
    return td;
}

void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count)
{
    std::size_t largest = 0;
    for (const auto& bag : td.bags) {
        largest = std::max(largest, bag.size());
    }
    out << "s td " << td.bags.size() << ' ' << largest << ' ' << vertex_count << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) {
            out << ' ' << v + 1;
        }
        out << '\n';
    }
    auto edges = td.tree_edges;
    for (auto& e : edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
        out << a + 1 << ' ' << b + 1 << '\n';
    }
}

Graph read_gr_file(const std::string& path)
{
    auto in = open(path);
    return read_gr(in);
}

TreeDecomposition read_td_file(const std::string& path)
{
    auto in = open(path);
    return read_td(in);
}

} // namespace twlab
