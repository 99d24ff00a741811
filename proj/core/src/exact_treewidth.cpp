#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "twlab/errors.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int v) { return Mask{1} << v; }

int popcount(Mask m) { return std::popcount(m); }

struct MaskGraph {
    int n = 0;
    std::vector<Mask> adj;
    Mask alive = 0;
};

MaskGraph to_masks(const Graph& g)
{
    MaskGraph m{g.vertex_count(), std::vector<Mask>(static_cast<std::size_t>(g.vertex_count()), 0), 0};
    for (const auto& [u, v] : g.edges()) {
        m.adj[static_cast<std::size_t>(u)] |= bit(v);
        m.adj[static_cast<std::size_t>(v)] |= bit(u);
    }
    m.alive = m.n == 64 ? ~Mask{0} : bit(m.n) - 1;
    return m;
}

bool is_clique(const MaskGraph& g, Mask set)
{
    for (Mask rest = set; rest != 0; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        if ((set & ~bit(u) & ~g.adj[static_cast<std::size_t>(u)]) != 0) {
            return false;
        }
    }
    return true;
}

void remove_vertex(MaskGraph& g, int v)
{
    for (Mask rest = g.adj[static_cast<std::size_t>(v)]; rest != 0; rest &= rest - 1) {
        g.adj[static_cast<std::size_t>(std::countr_zero(rest))] &= ~bit(v);
    }
    g.adj[static_cast<std::size_t>(v)] = 0;
    g.alive &= ~bit(v);
}

void eliminate_vertex(MaskGraph& g, int v)
{
    const Mask nb = g.adj[static_cast<std::size_t>(v)];
    for (Mask rest = nb; rest != 0; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        g.adj[static_cast<std::size_t>(u)] |= nb & ~bit(u);
    }
    remove_vertex(g, v);
}

// Simplicial and almost-simplicial reductions. Maintains the invariant
// tw(original) = max(low, tw(current)).
void reduce(MaskGraph& g, int& low)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (Mask rest = g.alive; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const Mask nb = g.adj[static_cast<std::size_t>(v)];
            const int degree = popcount(nb);
            if (is_clique(g, nb)) {
                low = std::max(low, degree);
                remove_vertex(g, v);
                changed = true;
                continue;
            }
            if (degree > low) {
                continue;
            }
            for (Mask cand = nb; cand != 0; cand &= cand - 1) {
                const int w = std::countr_zero(cand);
                if (is_clique(g, nb & ~bit(w))) {
                    eliminate_vertex(g, v);
                    changed = true;
                    break;
                }
            }
        }
    }
}

// Number of vertices outside prefix ∪ {v} adjacent to v's component in
// G[prefix ∪ {v}]: the degree v has when eliminated right after `prefix`.
int elimination_degree(const std::vector<Mask>& adj, Mask prefix, int v)
{
    Mask component = bit(v);
    Mask frontier = bit(v);
    Mask reach = 0;
    while (frontier != 0) {
        const int u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const Mask nb = adj[static_cast<std::size_t>(u)];
        reach |= nb;
        const Mask fresh = nb & prefix & ~component;
        component |= fresh;
        frontier |= fresh;
    }
    return popcount(reach & ~prefix & ~bit(v));
}

int degeneracy(const std::vector<Mask>& adj, Mask alive)
{
    int best = 0;
    while (alive != 0) {
        int pick = -1;
        int low = 65;
        for (Mask rest = alive; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const int d = popcount(adj[static_cast<std::size_t>(v)] & alive);
            if (d < low) {
                low = d;
                pick = v;
            }
        }
        best = std::max(best, low);
        alive &= ~bit(pick);
    }
    return best;
}

// Exact treewidth of a connected graph on vertices 0..n-1 via the
// elimination-prefix recurrence
//   TW(S ∪ {v}) = min over v of max(TW(S), Q(S, v)),
// expanded level by level (|S| = 0, 1, ...) and pruned against the best
// width found so far. Finishing the order from a prefix S with r vertices
// left costs at most r - 1, which gives upper-bound candidates on the way.
int component_treewidth(const std::vector<Mask>& adj, int n, int lower, int upper)
{
    if (lower >= upper) {
        return upper;
    }
    int best = upper;
    std::vector<std::pair<Mask, int>> level{{Mask{0}, 0}};
    std::vector<std::pair<Mask, int>> next;
    for (int size = 0; size < n && !level.empty() && best > lower; ++size) {
        next.clear();
        for (const auto& [prefix, value] : level) {
            if (value >= best) {
                continue;
            }
            const int remaining = n - size;
            if (std::max(value, remaining - 1) < best) {
                best = std::max(value, remaining - 1);
                if (best <= lower) {
                    break;
                }
            }
            for (int v = 0; v < n; ++v) {
                if (prefix & bit(v)) {
                    continue;
                }
                const int q = elimination_degree(adj, prefix, v);
                const int candidate = std::max(value, q);
                if (candidate < best) {
                    next.emplace_back(prefix | bit(v), candidate);
                }
            }
        }
        std::sort(next.begin(), next.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (out > 0 && next[out - 1].first == next[i].first) {
                continue;  // sorted: the first copy carries the smallest value
            }
            next[out++] = next[i];
        }
        next.resize(out);
        level.swap(next);
    }
    return std::max(best, lower);
}

} // namespace

int exact_treewidth(const Graph& g, int max_vertices)
{
    if (max_vertices > 64) {
        throw InvalidArgument("exact treewidth supports at most 64 vertices");
    }
    const int n = g.vertex_count();
    if (n > max_vertices) {
        throw BudgetExceeded("exact treewidth refused: graph has " + std::to_string(n) +
                             " vertices, cap is " + std::to_string(max_vertices) +
                             "; use the lower/upper bounds instead");
    }
    if (n == 0) {
        return 0;
    }

    MaskGraph work = to_masks(g);
    int low = lower_bound_mmd(g);
    reduce(work, low);

    int result = low;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Mask rest = work.alive; rest != 0; rest &= rest - 1) {
        const int root = std::countr_zero(rest);
        if (seen[static_cast<std::size_t>(root)]) {
            continue;
        }
        // Collect the component and relabel it densely.
        Mask component = bit(root);
        for (Mask frontier = bit(root); frontier != 0;) {
            const int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            const Mask fresh = work.adj[static_cast<std::size_t>(u)] & ~component;
            component |= fresh;
            frontier |= fresh;
        }
        std::vector<int> members;
        for (Mask m = component; m != 0; m &= m - 1) {
            members.push_back(std::countr_zero(m));
            seen[static_cast<std::size_t>(members.back())] = 1;
        }
        const auto size = static_cast<int>(members.size());
        if (size - 1 <= result) {
            continue;
        }
        std::vector<int> local(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < size; ++i) {
            local[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;
        }
        std::vector<Mask> adj(static_cast<std::size_t>(size), 0);
        std::vector<Edge> edges;
        for (int i = 0; i < size; ++i) {
            for (Mask m = work.adj[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])]; m != 0; m &= m - 1) {
                const int j = local[static_cast<std::size_t>(std::countr_zero(m))];
                adj[static_cast<std::size_t>(i)] |= bit(j);
                if (i < j) {
                    edges.emplace_back(i, j);
                }
            }
        }
        const Graph piece(size, std::move(edges));
        const int upper = std::min(width_of_order(piece, greedy_order(piece, Heuristic::min_fill)),
                                   width_of_order(piece, greedy_order(piece, Heuristic::min_degree)));
        const Mask all = size == 64 ? ~Mask{0} : bit(size) - 1;
        const int lower = std::max(result, degeneracy(adj, all));
        if (upper <= result) {
            continue;
        }
        result = std::max(result, component_treewidth(adj, size, lower, upper));
    }
    return result;
}

} // namespace twlab
