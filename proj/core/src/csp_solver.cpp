#include <algorithm>
#include <chrono>
#include <limits>
#include <string>
#include <unordered_set>

#include "twlab/errors.hpp"
#include "twlab/solvers.hpp"

namespace twlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t saturating_pow(int base, int exponent)
{
    std::uint64_t result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= static_cast<std::uint64_t>(base);
    }
    return result;
}

// A constraint plus the position, within some variable order, after which
// all of its scope is assigned.
struct Check {
    const Constraint* constraint;
    std::size_t ready_at;
};

bool passes(const Check& check, std::span<const int> values, int domain_size, std::vector<int>& scratch)
{
    scratch.clear();
    for (Vertex v : check.constraint->scope) {
        scratch.push_back(values[static_cast<std::size_t>(v)]);
    }
    return check.constraint->allows(scratch, domain_size);
}

struct BagTable {
    std::vector<Vertex> vars;         // sorted bag
    std::vector<int> rows;            // flattened consistent assignments, lexicographic
    std::vector<Vertex> separator;    // vars shared with the parent bag
    std::unordered_set<std::uint64_t> projection;  // surviving separator tuples
};

} // namespace

CspResult solve_csp_bruteforce(const CspInstance& c, std::uint64_t budget)
{
    const auto start = Clock::now();
    const int n = c.variable_count();
    const int domain = c.domain_size();
    const std::uint64_t states = saturating_pow(domain, n);
    if (states > budget) {
        throw BudgetExceeded("brute force refused: " + std::to_string(domain) + "^" + std::to_string(n) +
                             " assignments exceed the budget of " + std::to_string(budget));
    }

    std::vector<std::vector<Check>> checks(static_cast<std::size_t>(std::max(n, 1)));
    for (const auto& constraint : c.constraints()) {
        const auto last = static_cast<std::size_t>(constraint.scope.back());
        checks[last].push_back({&constraint, last});
    }

    CspResult result;
    result.width_used = std::max(n - 1, 0);
    std::vector<int> values(static_cast<std::size_t>(n), 0);
    std::vector<int> scratch;
    if (n == 0) {
        result.satisfiable = c.constraints().empty();
        result.elapsed_ms = elapsed_ms(start);
        return result;
    }

    // Depth-first in lexicographic order; values[i] = -1 marks "not yet tried".
    std::fill(values.begin(), values.end(), -1);
    int depth = 0;
    while (depth >= 0) {
        auto& x = values[static_cast<std::size_t>(depth)];
        bool advanced = false;
        while (++x < domain) {
            bool ok = true;
            for (const auto& check : checks[static_cast<std::size_t>(depth)]) {
                if (!passes(check, values, domain, scratch)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            x = -1;
            --depth;
            continue;
        }
        if (depth == n - 1) {
            result.satisfiable = true;
            result.witness = values;
            break;
        }
        ++depth;
    }
    result.elapsed_ms = elapsed_ms(start);
    return result;
}

CspResult solve_csp_td(const CspInstance& c, const TreeDecomposition& td, const TdSolveOptions& options)
{
    const auto start = Clock::now();
    const int n = c.variable_count();
    const int domain = c.domain_size();
    const auto report = validate_decomposition(primal_graph(c), td);
    if (!report.ok()) {
        throw InvalidArgument("decomposition does not fit the primal graph: " + report.violations.front().message);
    }
    CspResult result;
    result.width_used = td.width();
    if (td.bags.empty()) {
        result.satisfiable = c.constraints().empty();
        result.elapsed_ms = elapsed_ms(start);
        return result;
    }
    const auto deadline = options.time_budget ? std::optional(start + *options.time_budget) : std::nullopt;

    // Root at bag 0: parents and a top-down order.
    const auto bag_count = td.bags.size();
    std::vector<std::vector<int>> adjacent(bag_count);
    for (const auto& [a, b] : td.tree_edges) {
        adjacent[static_cast<std::size_t>(a)].push_back(b);
        adjacent[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> parent(bag_count, -1);
    std::vector<int> top_down{0};
    std::vector<char> seen(bag_count, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < top_down.size(); ++i) {
        const int x = top_down[i];
        for (int y : adjacent[static_cast<std::size_t>(x)]) {
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                parent[static_cast<std::size_t>(y)] = x;
                top_down.push_back(y);
            }
        }
    }
    std::vector<std::vector<int>> children(bag_count);
    for (int x : top_down) {
        if (parent[static_cast<std::size_t>(x)] >= 0) {
            children[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])].push_back(x);
        }
    }

    std::vector<BagTable> tables(bag_count);
    for (std::size_t i = 0; i < bag_count; ++i) {
        tables[i].vars = td.bags[i];
        if (parent[i] >= 0) {
            const auto& up = td.bags[static_cast<std::size_t>(parent[i])];
            std::set_intersection(tables[i].vars.begin(), tables[i].vars.end(), up.begin(), up.end(),
                                  std::back_inserter(tables[i].separator));
        }
        if (saturating_pow(domain, static_cast<int>(tables[i].vars.size())) == std::numeric_limits<std::uint64_t>::max()) {
            throw BudgetExceeded("bag of size " + std::to_string(tables[i].vars.size()) + " is too large to enumerate");
        }
    }

    // Each constraint goes to the smallest-index bag covering its scope.
    std::vector<std::vector<const Constraint*>> assigned(bag_count);
    for (const auto& constraint : c.constraints()) {
        bool placed = false;
        for (std::size_t i = 0; i < bag_count && !placed; ++i) {
            const auto& bag = td.bags[i];
            if (std::includes(bag.begin(), bag.end(), constraint.scope.begin(), constraint.scope.end())) {
                assigned[i].push_back(&constraint);
                placed = true;
            }
        }
        if (!placed) {
            throw InvalidArgument("no bag covers a constraint scope");
        }
    }

    std::vector<int> values(static_cast<std::size_t>(n), 0);
    std::vector<int> scratch;
    std::uint64_t stored = 0;
    std::uint64_t steps = 0;
    auto encode = [&](std::span<const Vertex> vars) {
        std::uint64_t code = 0;
        for (Vertex v : vars) {
            code = code * static_cast<std::uint64_t>(domain) + static_cast<std::uint64_t>(values[static_cast<std::size_t>(v)]);
        }
        return code;
    };

    for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
        auto& table = tables[static_cast<std::size_t>(*it)];
        const auto& vars = table.vars;
        const std::size_t width = vars.size();
        std::vector<std::size_t> position(static_cast<std::size_t>(n), 0);
        for (std::size_t t = 0; t < width; ++t) {
            position[static_cast<std::size_t>(vars[t])] = t;
        }

        // Checks keyed by the bag position after which they can run.
        std::vector<std::vector<Check>> checks(width);
        for (const auto* constraint : assigned[static_cast<std::size_t>(*it)]) {
            const auto at = position[static_cast<std::size_t>(constraint->scope.back())];
            checks[at].push_back({constraint, at});
        }
        std::vector<std::vector<int>> child_checks(width);
        bool blocked = false;
        for (int child : children[static_cast<std::size_t>(*it)]) {
            const auto& below = tables[static_cast<std::size_t>(child)];
            if (below.separator.empty()) {
                // Shares nothing with this bag: only its satisfiability matters.
                blocked = blocked || below.projection.empty();
                continue;
            }
            child_checks[position[static_cast<std::size_t>(below.separator.back())]].push_back(child);
        }
        if (!blocked && width > 0) {
            std::vector<int> trial(width, -1);
            int depth = 0;
            while (depth >= 0) {
                if ((++steps & 0xfff) == 0 && deadline && Clock::now() > *deadline) {
                    throw Timeout("tree-decomposition solve exceeded its time budget");
                }
                const Vertex var = vars[static_cast<std::size_t>(depth)];
                auto& x = trial[static_cast<std::size_t>(depth)];
                bool advanced = false;
                while (++x < domain) {
                    values[static_cast<std::size_t>(var)] = x;
                    bool ok = true;
                    for (const auto& check : checks[static_cast<std::size_t>(depth)]) {
                        if (!passes(check, values, domain, scratch)) {
                            ok = false;
                            break;
                        }
                    }
                    for (std::size_t j = 0; ok && j < child_checks[static_cast<std::size_t>(depth)].size(); ++j) {
                        const auto& below = tables[static_cast<std::size_t>(child_checks[static_cast<std::size_t>(depth)][j])];
                        ok = below.projection.contains(encode(below.separator));
                    }
                    if (ok) {
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) {
                    x = -1;
                    --depth;
                    continue;
                }
                if (static_cast<std::size_t>(depth) + 1 == width) {
                    table.rows.insert(table.rows.end(), trial.begin(), trial.end());
                    stored += 1;
                    if (stored > options.max_total_entries) {
                        throw BudgetExceeded("tree-decomposition tables exceed " +
                                             std::to_string(options.max_total_entries) + " entries");
                    }
                    continue;
                }
                ++depth;
            }
        }
        const std::size_t row_count = width == 0 ? 0 : table.rows.size() / width;
        result.max_table_entries = std::max<std::uint64_t>(result.max_table_entries, row_count);
        for (std::size_t r = 0; r < row_count; ++r) {
            for (std::size_t t = 0; t < width; ++t) {
                values[static_cast<std::size_t>(vars[t])] = table.rows[r * width + t];
            }
            table.projection.insert(encode(table.separator));
        }
        if (width == 0 && !blocked) {
            // An empty bag survives iff every child subtree is satisfiable.
            table.projection.insert(0);
        }
        // Children's projections are no longer needed.
        for (int child : children[static_cast<std::size_t>(*it)]) {
            tables[static_cast<std::size_t>(child)].projection.clear();
            tables[static_cast<std::size_t>(child)].projection.rehash(0);
        }
    }

    auto& root = tables[0];
    result.satisfiable = root.vars.empty() ? !root.projection.empty() : !root.rows.empty();
    if (result.satisfiable) {
        // Top-down: first row agreeing with the already fixed separator values.
        std::fill(values.begin(), values.end(), 0);
        for (int x : top_down) {
            const auto& table = tables[static_cast<std::size_t>(x)];
            const std::size_t width = table.vars.size();
            if (width == 0) {
                continue;
            }
            const std::size_t row_count = table.rows.size() / width;
            bool found = false;
            for (std::size_t r = 0; r < row_count && !found; ++r) {
                bool agree = true;
                for (std::size_t t = 0; t < width && agree; ++t) {
                    const Vertex v = table.vars[t];
                    if (std::binary_search(table.separator.begin(), table.separator.end(), v)) {
                        agree = values[static_cast<std::size_t>(v)] == table.rows[r * width + t];
                    }
                }
                if (agree) {
                    for (std::size_t t = 0; t < width; ++t) {
                        values[static_cast<std::size_t>(table.vars[t])] = table.rows[r * width + t];
                    }
                    found = true;
                }
            }
            if (!found) {
                throw std::logic_error("witness reconstruction found no compatible row");
            }
        }
        result.witness = values;
    }
    result.elapsed_ms = elapsed_ms(start);
    return result;
}

} // namespace twlab
