#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twlab/graph.hpp"
#include "twlab/rng.hpp"

namespace twlab {

// One order-d constraint: a sorted scope and the set of forbidden value
// tuples over that scope. Tuples are encoded mixed-radix, first scope
// variable most significant, and kept sorted.
struct Constraint {
    std::vector<Vertex> scope;
    std::vector<std::uint64_t> forbidden;

    bool allows(std::span<const int> values, int domain_size) const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

std::uint64_t encode_tuple(std::span<const int> values, int domain_size);
std::vector<int> decode_tuple(std::uint64_t code, int arity, int domain_size);

/// CSP with n variables over a uniform domain {0..domain_size-1} and
/// constraints of a fixed order d given as forbidden-tuple tables.
class CspInstance {
public:
    CspInstance() = default;
    CspInstance(int n, int domain_size, int order, std::vector<Constraint> constraints);

    int variable_count() const noexcept { return n_; }
    int domain_size() const noexcept { return domain_size_; }
    int order() const noexcept { return order_; }
    std::span<const Constraint> constraints() const noexcept { return constraints_; }

    // Full assignment, one value per variable.
    bool satisfied_by(std::span<const int> assignment) const;

    friend bool operator==(const CspInstance&, const CspInstance&) = default;

private:
    int n_ = 0;
    int domain_size_ = 2;
    int order_ = 2;
    std::vector<Constraint> constraints_;
};

Hypergraph scope_hypergraph(const CspInstance& c);
Graph primal_graph(const CspInstance& c);

/// Directed structure plus one conditional probability table per node.
///
/// cpt(v) is a flattened table of row_count(v) rows, each holding
/// domain_size(v) probabilities. Rows are indexed by the parent values with
/// parents in increasing id order and the last parent varying fastest.
class BayesNet {
public:
    BayesNet() = default;
    BayesNet(DiGraph structure, std::vector<int> domain_sizes, std::vector<std::vector<double>> cpts);

    const DiGraph& structure() const noexcept { return structure_; }
    int node_count() const noexcept { return structure_.vertex_count(); }
    int domain_size(Vertex v) const { return domain_sizes_[static_cast<std::size_t>(v)]; }
    std::span<const int> domain_sizes() const noexcept { return domain_sizes_; }
    std::span<const double> cpt(Vertex v) const { return cpts_[static_cast<std::size_t>(v)]; }
    std::size_t row_count(Vertex v) const;

    // Pr{X_v = value | parents take `parent_values`} (parent_values in parent order).
    double probability(Vertex v, int value, std::span<const int> parent_values) const;

    friend bool operator==(const BayesNet&, const BayesNet&) = default;

private:
    DiGraph structure_;
    std::vector<int> domain_sizes_;
    std::vector<std::vector<double>> cpts_;
};

// Exact binomial coefficient. Throws InvalidArgument on overflow of 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

// m distinct uniformly random d-subsets of 0..n-1 (drawn without replacement).
Hypergraph gen_hypergraph(int n, int m, int d, Seed seed);

// Graph of random cliques: clique expansion of gen_hypergraph. d=2 is G(n,m).
Graph gen_clique_graph(int n, int m, int d, Seed seed);

Graph gen_gnm(int n, int m, Seed seed);

// Every pair independently with probability p.
Graph gen_gnp(int n, double p, Seed seed);

// Scopes from gen_hypergraph(n, m, d, seed); every value tuple of every scope
// forbidden independently with probability `tightness`.
CspInstance gen_csp(int n, int m, int d, int domain_size, double tightness, Seed seed);

enum class BnMode { raw, ordered };

// Node i picks each other node as a parent independently with probability
// p[i]. `ordered` first draws a uniform permutation and only allows parents
// that precede the child in it, which guarantees acyclicity.
DiGraph gen_bn(int n, std::span<const double> p, Seed seed, BnMode mode);

// Upper layer 0..n1-1, lower layer n1..n1+n2-1. Every lower node gets exactly
// d distinct uniformly chosen upper parents.
DiGraph gen_two_layer(int n1, int n2, int d, Seed seed);

// Random Bayesian network with bounded treewidth: k-tree style attachment of
// every node to a uniformly chosen k-clique of the current moral graph, then
// independent removal of each arc with probability `removal`.
DiGraph gen_rbnbt(int n, int k, double removal, Seed seed);

// Random k-tree: K_{k+1}, then each new vertex joined to a uniformly chosen
// k-clique. Vertex labels are a uniform random permutation of build order.
Graph gen_ktree(int n, int k, Seed seed);

// Each CPT row drawn from a symmetric Dirichlet(1, ..., 1). Cyclic input rejected.
BayesNet fill_cpts(const DiGraph& g, int domain_size, Seed seed);

} // namespace twlab
