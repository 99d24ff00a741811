#include <algorithm>
#include <limits>
#include <string>

#include "twlab/errors.hpp"
#include "twlab/solvers.hpp"

namespace twlab {

namespace {

std::size_t table_size(const std::vector<int>& cardinality)
{
    std::size_t size = 1;
    for (int c : cardinality) {
        size *= static_cast<std::size_t>(c);
    }
    return size;
}

// Strides of `f` laid onto the variables of `scope` (0 for variables f lacks).
std::vector<std::size_t> strides_within(const Factor& f, const std::vector<Vertex>& scope)
{
    std::vector<std::size_t> own(f.scope.size());
    std::size_t stride = 1;
    for (std::size_t i = f.scope.size(); i > 0; --i) {
        own[i - 1] = stride;
        stride *= static_cast<std::size_t>(f.cardinality[i - 1]);
    }
    std::vector<std::size_t> out(scope.size(), 0);
    for (std::size_t i = 0, j = 0; i < scope.size() && j < f.scope.size(); ++i) {
        if (scope[i] == f.scope[j]) {
            out[i] = own[j++];
        }
    }
    return out;
}

} // namespace

Factor multiply(const Factor& f, const Factor& g)
{
    Factor out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < f.scope.size() || j < g.scope.size()) {
        if (j == g.scope.size() || (i < f.scope.size() && f.scope[i] < g.scope[j])) {
            out.scope.push_back(f.scope[i]);
            out.cardinality.push_back(f.cardinality[i++]);
        } else if (i == f.scope.size() || g.scope[j] < f.scope[i]) {
            out.scope.push_back(g.scope[j]);
            out.cardinality.push_back(g.cardinality[j++]);
        } else {
            out.scope.push_back(f.scope[i]);
            out.cardinality.push_back(f.cardinality[i]);
            ++i;
            ++j;
        }
    }
    const auto sf = strides_within(f, out.scope);
    const auto sg = strides_within(g, out.scope);
    out.table.resize(table_size(out.cardinality));

    // Odometer over the product scope, last variable fastest.
    std::vector<int> digit(out.scope.size(), 0);
    std::size_t fi = 0;
    std::size_t gi = 0;
    for (std::size_t k = 0; k < out.table.size(); ++k) {
        out.table[k] = f.table[fi] * g.table[gi];
        for (std::size_t t = out.scope.size(); t > 0; --t) {
            const std::size_t d = t - 1;
            if (++digit[d] < out.cardinality[d]) {
                fi += sf[d];
                gi += sg[d];
                break;
            }
            fi -= sf[d] * static_cast<std::size_t>(out.cardinality[d] - 1);
            gi -= sg[d] * static_cast<std::size_t>(out.cardinality[d] - 1);
            digit[d] = 0;
        }
    }
    return out;
}

Factor sum_out(const Factor& f, Vertex v)
{
    const auto at = std::find(f.scope.begin(), f.scope.end(), v);
    if (at == f.scope.end()) {
        return f;
    }
    const auto pos = static_cast<std::size_t>(at - f.scope.begin());
    Factor out;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
        if (i != pos) {
            out.scope.push_back(f.scope[i]);
            out.cardinality.push_back(f.cardinality[i]);
        }
    }
    std::size_t inner = 1;
    for (std::size_t i = pos + 1; i < f.scope.size(); ++i) {
        inner *= static_cast<std::size_t>(f.cardinality[i]);
    }
    const auto card = static_cast<std::size_t>(f.cardinality[pos]);
    const std::size_t outer = f.table.size() / (inner * card);
    out.table.assign(outer * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t c = 0; c < card; ++c) {
            for (std::size_t r = 0; r < inner; ++r) {
                out.table[o * inner + r] += f.table[(o * card + c) * inner + r];
            }
        }
    }
    return out;
}

Factor cpt_factor(const BayesNet& b, Vertex v)
{
    const auto parents = b.structure().parents(v);
    Factor out;
    out.scope.assign(parents.begin(), parents.end());
    out.scope.push_back(v);
    std::sort(out.scope.begin(), out.scope.end());
    for (Vertex u : out.scope) {
        out.cardinality.push_back(b.domain_size(u));
    }
    out.table.resize(table_size(out.cardinality));

    std::vector<int> digit(out.scope.size(), 0);
    std::vector<int> parent_values(parents.size());
    const auto self = static_cast<std::size_t>(std::find(out.scope.begin(), out.scope.end(), v) - out.scope.begin());
    for (std::size_t k = 0; k < out.table.size(); ++k) {
        for (std::size_t i = 0, j = 0; i < out.scope.size(); ++i) {
            if (i != self) {
                parent_values[j++] = digit[i];
            }
        }
        out.table[k] = b.probability(v, digit[self], parent_values);
        for (std::size_t t = out.scope.size(); t > 0; --t) {
            if (++digit[t - 1] < out.cardinality[t - 1]) {
                break;
            }
            digit[t - 1] = 0;
        }
    }
    return out;
}

Marginal ve_marginal(const BayesNet& b, Vertex target, std::span<const Vertex> order)
{
    const int n = b.node_count();
    if (target < 0 || target >= n) {
        throw InvalidArgument("target node out of range");
    }
    if (!b.structure().is_acyclic()) {
        throw InvalidArgument("variable elimination requires an acyclic network");
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(target)] = 1;
    for (Vertex v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw InvalidArgument("order must list every node except the target exactly once");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    if (order.size() + 1 != static_cast<std::size_t>(n)) {
        throw InvalidArgument("order must list every node except the target exactly once");
    }

    Marginal result;
    std::vector<Factor> pool;
    for (Vertex v = 0; v < n; ++v) {
        pool.push_back(cpt_factor(b, v));
        result.max_table_size = std::max<std::uint64_t>(result.max_table_size, pool.back().table.size());
    }
    for (Vertex v : order) {
        Factor product{{}, {}, {1.0}};
        std::vector<Factor> rest;
        bool touched = false;
        for (auto& f : pool) {
            if (std::binary_search(f.scope.begin(), f.scope.end(), v)) {
                product = multiply(product, f);
                touched = true;
            } else {
                rest.push_back(std::move(f));
            }
        }
        if (touched) {
            result.max_scope = std::max(result.max_scope, static_cast<int>(product.scope.size()));
            result.max_table_size = std::max<std::uint64_t>(result.max_table_size, product.table.size());
            rest.push_back(sum_out(product, v));
        }
        pool = std::move(rest);
    }
    Factor final_factor{{}, {}, {1.0}};
    for (const auto& f : pool) {
        final_factor = multiply(final_factor, f);
    }
    result.max_scope = std::max(result.max_scope, static_cast<int>(final_factor.scope.size()));
    if (final_factor.scope.empty()) {
        // Target had no factor left: cannot happen, its own CPT mentions it.
        throw std::logic_error("target factor vanished during elimination");
    }
    double total = 0.0;
    for (double x : final_factor.table) {
        total += x;
    }
    result.distribution.resize(final_factor.table.size());
    for (std::size_t i = 0; i < final_factor.table.size(); ++i) {
        result.distribution[i] = final_factor.table[i] / total;
    }
    return result;
}

EliminationOrder inference_order(const BayesNet& b, Vertex target, Heuristic heuristic)
{
    auto order = greedy_order(moralize(b.structure()), heuristic);
    order.erase(std::remove(order.begin(), order.end(), target), order.end());
    return order;
}

std::vector<double> joint_enumerate_marginal(const BayesNet& b, Vertex target, std::uint64_t budget)
{
    const int n = b.node_count();
    if (target < 0 || target >= n) {
        throw InvalidArgument("target node out of range");
    }
    std::uint64_t states = 1;
    for (Vertex v = 0; v < n; ++v) {
        const auto size = static_cast<std::uint64_t>(b.domain_size(v));
        if (states > budget / size) {
            throw BudgetExceeded("joint enumeration refused: state count exceeds the budget of " +
                                 std::to_string(budget));
        }
        states *= size;
    }
    std::vector<double> marginal(static_cast<std::size_t>(b.domain_size(target)), 0.0);
    std::vector<int> values(static_cast<std::size_t>(n), 0);
    std::vector<int> parent_values;
    for (std::uint64_t s = 0; s < states; ++s) {
        double p = 1.0;
        for (Vertex v = 0; v < n && p > 0.0; ++v) {
            parent_values.clear();
            for (Vertex u : b.structure().parents(v)) {
                parent_values.push_back(values[static_cast<std::size_t>(u)]);
            }
            p *= b.probability(v, values[static_cast<std::size_t>(v)], parent_values);
        }
        marginal[static_cast<std::size_t>(values[static_cast<std::size_t>(target)])] += p;
        for (Vertex v = n - 1; v >= 0; --v) {
            if (++values[static_cast<std::size_t>(v)] < b.domain_size(v)) {
                break;
            }
            values[static_cast<std::size_t>(v)] = 0;
        }
    }
    return marginal;
}

} // namespace twlab
