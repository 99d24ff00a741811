#include <algorithm>
#include <numeric>
#include <string>

#include "twlab/errors.hpp"
#include "twlab/random_models.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

namespace {

void require_k(const Graph& g, int k)
{
    if (k < 0 || k + 1 > g.vertex_count()) {
        throw InvalidArgument("balanced k-partition needs 0 <= k and k+1 <= n (k=" + std::to_string(k) +
                              ", n=" + std::to_string(g.vertex_count()) + ")");
    }
}

void require_budget(const Graph& g, int k, std::uint64_t budget)
{
    std::uint64_t subsets = 0;
    try {
        subsets = binomial(g.vertex_count(), k + 1);
    } catch (const InvalidArgument&) {
        subsets = ~std::uint64_t{0};
    }
    if (subsets > budget) {
        throw BudgetExceeded("balanced partition search refused: C(" + std::to_string(g.vertex_count()) + ", " +
                             std::to_string(k + 1) + ") = " + std::to_string(subsets) +
                             " separators exceed the enumeration budget of " + std::to_string(budget));
    }
}

bool is_complete(const Graph& g)
{
    const auto n = static_cast<std::size_t>(g.vertex_count());
    return g.edge_count() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

} // namespace

std::pair<int, int> balanced_side_window(int n, int k)
{
    const int rest = n - k - 1;
    return {(rest + 2) / 3, (2 * rest) / 3};
}

bool is_balanced_partition(const Graph& g, const BalancedPartition& p)
{
    const int n = g.vertex_count();
    if (static_cast<int>(p.separator.size()) != p.k + 1) {
        return false;
    }
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    auto place = [&](const std::vector<Vertex>& part, int label) {
        for (Vertex v : part) {
            if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1) {
                return false;
            }
            side[static_cast<std::size_t>(v)] = label;
        }
        return true;
    };
    if (!place(p.separator, 0) || !place(p.side_a, 1) || !place(p.side_b, 2)) {
        return false;
    }
    if (std::count(side.begin(), side.end(), -1) != 0) {
        return false;
    }
    const auto [lo, hi] = balanced_side_window(n, p.k);
    const auto a = static_cast<int>(p.side_a.size());
    const auto b = static_cast<int>(p.side_b.size());
    if (a < lo || a > hi || b < lo || b > hi) {
        return false;
    }
    for (const auto& [u, v] : g.edges()) {
        const int su = side[static_cast<std::size_t>(u)];
        const int sv = side[static_cast<std::size_t>(v)];
        if (su + sv == 3 && su != 0 && sv != 0) {
            return false;
        }
    }
    return true;
}

std::optional<BalancedPartition> find_balanced_partition(const Graph& g, int k, std::uint64_t budget)
{
    require_k(g, k);
    require_budget(g, k, budget);
    const int n = g.vertex_count();
    const int rest = n - k - 1;
    const auto [lo, hi] = balanced_side_window(n, k);
    if (lo > hi) {
        return std::nullopt;
    }

    std::vector<int> separator(static_cast<std::size_t>(k + 1));
    std::iota(separator.begin(), separator.end(), 0);
    std::vector<char> removed(static_cast<std::size_t>(n));
    std::vector<int> component_of(static_cast<std::size_t>(n));
    std::vector<Vertex> stack;
    while (true) {
        std::fill(removed.begin(), removed.end(), 0);
        for (int v : separator) {
            removed[static_cast<std::size_t>(v)] = 1;
        }

        // Components of g - S.
        std::fill(component_of.begin(), component_of.end(), -1);
        std::vector<int> sizes;
        for (Vertex root = 0; root < n; ++root) {
            if (removed[static_cast<std::size_t>(root)] || component_of[static_cast<std::size_t>(root)] != -1) {
                continue;
            }
            const auto id = static_cast<int>(sizes.size());
            sizes.push_back(0);
            component_of[static_cast<std::size_t>(root)] = id;
            stack.push_back(root);
            while (!stack.empty()) {
                const Vertex v = stack.back();
                stack.pop_back();
                ++sizes.back();
                for (Vertex w : g.neighbors(v)) {
                    if (!removed[static_cast<std::size_t>(w)] && component_of[static_cast<std::size_t>(w)] == -1) {
                        component_of[static_cast<std::size_t>(w)] = id;
                        stack.push_back(w);
                    }
                }
            }
        }

        // reachable[i][s]: some subset of the first i components sums to s.
        const std::size_t count = sizes.size();
        std::vector<std::vector<char>> reachable(count + 1, std::vector<char>(static_cast<std::size_t>(rest) + 1, 0));
        reachable[0][0] = 1;
        for (std::size_t i = 0; i < count; ++i) {
            const auto size = static_cast<std::size_t>(sizes[i]);
            for (std::size_t s = 0; s <= static_cast<std::size_t>(rest); ++s) {
                if (reachable[i][s]) {
                    reachable[i + 1][s] = 1;
                    if (s + size <= static_cast<std::size_t>(rest)) {
                        reachable[i + 1][s + size] = 1;
                    }
                }
            }
        }
        for (int a = lo; a <= hi; ++a) {
            const int b = rest - a;
            if (b < lo || b > hi || !reachable[count][static_cast<std::size_t>(a)]) {
                continue;
            }
            std::vector<char> in_a(count, 0);
            auto s = static_cast<std::size_t>(a);
            for (std::size_t i = count; i > 0; --i) {
                if (!reachable[i - 1][s]) {
                    in_a[i - 1] = 1;
                    s -= static_cast<std::size_t>(sizes[i - 1]);
                }
            }
            BalancedPartition witness;
            witness.k = k;
            witness.separator = separator;
            for (Vertex v = 0; v < n; ++v) {
                if (removed[static_cast<std::size_t>(v)]) {
                    continue;
                }
                (in_a[static_cast<std::size_t>(component_of[static_cast<std::size_t>(v)])] ? witness.side_a : witness.side_b)
                    .push_back(v);
            }
            return witness;
        }

        // Next (k+1)-subset in lexicographic order.
        int i = k;
        while (i >= 0 && separator[static_cast<std::size_t>(i)] == n - (k + 1) + i) {
            --i;
        }
        if (i < 0) {
            return std::nullopt;
        }
        ++separator[static_cast<std::size_t>(i)];
        for (int j = i + 1; j <= k; ++j) {
            separator[static_cast<std::size_t>(j)] = separator[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

bool certify_treewidth_exceeds(const Graph& g, int k, std::uint64_t budget)
{
    require_k(g, k);
    if (g.vertex_count() - k - 1 == 1) {
        // Window [1, 0] is empty for every graph on k+2 vertices; only
        // K_{k+2} has treewidth above k there.
        return is_complete(g);
    }
    return !find_balanced_partition(g, k, budget).has_value();
}

} // namespace twlab
