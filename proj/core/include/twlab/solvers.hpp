#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twlab/graph.hpp"
#include "twlab/random_models.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

struct CspResult {
    bool satisfiable = false;
    std::vector<int> witness;          // one value per variable when satisfiable
    int width_used = 0;                // decomposition width, or n-1 for brute force
    std::uint64_t max_table_entries = 0;
    double elapsed_ms = 0.0;
};

inline constexpr std::uint64_t kDefaultBruteForceBudget = std::uint64_t{1} << 24;

// Lexicographic backtracking over all domain_size^n assignments (x0 most
// significant); returns the first solution. Throws BudgetExceeded when
// domain_size^n exceeds `budget`.
CspResult solve_csp_bruteforce(const CspInstance& c, std::uint64_t budget = kDefaultBruteForceBudget);

struct TdSolveOptions {
    std::optional<std::chrono::milliseconds> time_budget;
    std::uint64_t max_total_entries = 200'000'000;
};

/// Dynamic programming over a tree decomposition of the primal graph.
///
/// Bags are processed bottom-up from root bag 0. Each bag keeps only the
/// assignments that satisfy the constraints checked there and agree with
/// every child's surviving separator projections. Each constraint is
/// checked in the smallest-index bag covering its scope. A witness is rebuilt
/// top-down taking the lexicographically smallest compatible row per bag.
///
/// Throws InvalidArgument when `td` does not validate against
/// primal_graph(c), Timeout when the time budget runs out and
/// BudgetExceeded when stored tables outgrow max_total_entries.
CspResult solve_csp_td(const CspInstance& c, const TreeDecomposition& td, const TdSolveOptions& options = {});

/// Non-negative table over the joint values of a sorted variable scope. The
/// last scope variable varies fastest.
struct Factor {
    std::vector<Vertex> scope;
    std::vector<int> cardinality;
    std::vector<double> table;
};

Factor multiply(const Factor& f, const Factor& g);
Factor sum_out(const Factor& f, Vertex v);

// Pr{X_v | pa(X_v)} as a factor over pa(v) ∪ {v}.
Factor cpt_factor(const BayesNet& b, Vertex v);

struct Marginal {
    std::vector<double> distribution;
    int max_scope = 0;                 // largest product scope formed (induced width + 1)
    std::uint64_t max_table_size = 0;
};

// Variable elimination along `order`, a permutation of every node except
// `target`. Throws InvalidArgument for cyclic structures or bad orders.
Marginal ve_marginal(const BayesNet& b, Vertex target, std::span<const Vertex> order);

// Greedy order on the moral graph with the target moved out (eliminated last).
EliminationOrder inference_order(const BayesNet& b, Vertex target, Heuristic heuristic = Heuristic::min_fill);

inline constexpr std::uint64_t kDefaultJointBudget = std::uint64_t{1} << 22;

// Sums the full joint distribution; throws BudgetExceeded when the number of
// joint states exceeds `budget`.
std::vector<double> joint_enumerate_marginal(const BayesNet& b, Vertex target,
                                             std::uint64_t budget = kDefaultJointBudget);

} // namespace twlab
