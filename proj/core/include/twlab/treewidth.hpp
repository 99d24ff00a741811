#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twlab/graph.hpp"

namespace twlab {

using EliminationOrder = std::vector<Vertex>;

/// Bags plus a tree over bag indices. Bags are kept sorted.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;

    // Largest bag size minus one; 0 for a decomposition with no bags.
    int width() const noexcept;
};

inline constexpr int kDefaultExactCap = 22;

// Exact treewidth by dynamic programming over elimination prefixes. Refuses
// graphs with more than `max_vertices` vertices (BudgetExceeded); the cap
// itself may not exceed 64.
int exact_treewidth(const Graph& g, int max_vertices = kDefaultExactCap);

enum class Heuristic { min_fill, min_degree };

// Greedy elimination ordering; ties broken by smallest vertex id.
EliminationOrder greedy_order(const Graph& g, Heuristic heuristic);

// Induced width: largest number of not-yet-eliminated neighbors a vertex has
// when it is eliminated (fill-in included). Throws InvalidArgument when
// `order` is not a permutation of the vertices.
int width_of_order(const Graph& g, std::span<const Vertex> order);

// One bag per vertex ({v} plus its later fill-graph neighbors) linked to the
// bag of its earliest-eliminated later neighbor; bags contained in a tree
// neighbor are then merged away.
TreeDecomposition decomposition_from_order(const Graph& g, std::span<const Vertex> order);

enum class ViolationKind {
    bag_vertex_out_of_range,
    vertex_uncovered,
    edge_uncovered,
    vertex_bags_disconnected,
    tree_edge_invalid,
    not_a_tree,
};

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind;
    Vertex vertex = -1;           // witnessing vertex, when any
    Edge edge{-1, -1};            // witnessing graph edge or tree edge, when any
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    int width = 0;

    bool ok() const noexcept { return violations.empty(); }
};

// Checks vertex coverage, edge coverage, per-vertex subtree connectivity and
// that tree_edges form a tree. Violations are reported, never thrown.
ValidationReport validate_decomposition(const Graph& g, const TreeDecomposition& td);

// Maximum minimum degree seen while repeatedly deleting a minimum-degree vertex.
int lower_bound_mmd(const Graph& g);

/// (S, A, B) with |S| = k+1, ceil(r/3) <= |A|,|B| <= floor(2r/3) for
/// r = n-k-1, and no edge between A and B.
struct BalancedPartition {
    int k = 0;
    std::vector<Vertex> separator;
    std::vector<Vertex> side_a;
    std::vector<Vertex> side_b;
};

inline constexpr std::uint64_t kDefaultPartitionBudget = 20'000'000;

// Integer size window [lo, hi] for |A| and |B|; empty when lo > hi.
std::pair<int, int> balanced_side_window(int n, int k);

bool is_balanced_partition(const Graph& g, const BalancedPartition& p);

// Enumerates every (k+1)-subset S in lexicographic order and groups the
// components of g - S by subset-sum DP. Returns the first witness, or
// nullopt when none exists. Throws BudgetExceeded when C(n, k+1) exceeds
// `budget`.
std::optional<BalancedPartition> find_balanced_partition(const Graph& g, int k,
                                                         std::uint64_t budget = kDefaultPartitionBudget);

// True certifies treewidth > k. Decided by the absence of a balanced
// k-partition, except when n = k+2 where the size window is empty for every
// graph; there the answer is whether g is complete.
bool certify_treewidth_exceeds(const Graph& g, int k, std::uint64_t budget = kDefaultPartitionBudget);

// Reducible to K_{k+1} by repeatedly deleting a degree-k vertex whose
// neighborhood is a clique.
bool is_ktree(const Graph& g, int k);

struct BoundsReport {
    int lower = 0;
    int upper = 0;
    std::optional<int> exact;
    std::string lower_method = "mmd";
    std::string upper_method;
    double lower_ms = 0.0;
    double upper_ms = 0.0;
    double exact_ms = 0.0;
};

// MMD lower bound, min-fill upper bound, and the exact value when requested
// and n <= max_vertices.
BoundsReport treewidth_bounds(const Graph& g, bool want_exact, int max_vertices = kDefaultExactCap);

} // namespace twlab
