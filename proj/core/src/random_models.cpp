#include "twlab/random_models.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw InvalidArgument(message);
    }
}

void require_probability(double p, const char* name)
{
    require(p >= 0.0 && p <= 1.0 && !std::isnan(p), std::string(name) + " must lie in [0, 1]");
}

std::uint64_t checked_pow(int base, std::size_t exponent)
{
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
            throw InvalidArgument("table size overflows 64 bits");
        }
        result *= static_cast<std::uint64_t>(base);
    }
    return result;
}

// Next d-subset of 0..n-1 in lexicographic order; false after the last one.
bool next_combination(std::vector<int>& c, int n)
{
    const auto d = static_cast<int>(c.size());
    int i = d - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - d + i) {
        --i;
    }
    if (i < 0) {
        return false;
    }
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

} // namespace

std::uint64_t encode_tuple(std::span<const int> values, int domain_size)
{
    std::uint64_t code = 0;
    for (int v : values) {
        code = code * static_cast<std::uint64_t>(domain_size) + static_cast<std::uint64_t>(v);
    }
    return code;
}

std::vector<int> decode_tuple(std::uint64_t code, int arity, int domain_size)
{
    std::vector<int> values(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        values[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(domain_size));
        code /= static_cast<std::uint64_t>(domain_size);
    }
    return values;
}

bool Constraint::allows(std::span<const int> values, int domain_size) const
{
    return !std::binary_search(forbidden.begin(), forbidden.end(), encode_tuple(values, domain_size));
}

CspInstance::CspInstance(int n, int domain_size, int order, std::vector<Constraint> constraints)
    : n_(n), domain_size_(domain_size), order_(order), constraints_(std::move(constraints))
{
    require(n >= 0, "variable count must be non-negative");
    require(domain_size >= 2, "domain size must be at least 2");
    require(order >= 2, "constraint order must be at least 2");
    const std::uint64_t tuples = checked_pow(domain_size, static_cast<std::size_t>(order));
    std::set<std::vector<Vertex>> scopes;
    for (auto& c : constraints_) {
        require(c.scope.size() == static_cast<std::size_t>(order), "every scope must have exactly `order` variables");
        require(std::adjacent_find(c.scope.begin(), c.scope.end(), std::greater_equal<>()) == c.scope.end(),
                "scope variables must be strictly increasing");
        require(c.scope.front() >= 0 && c.scope.back() < n, "scope variable out of range");
        require(scopes.insert(c.scope).second, "scopes must be distinct");
        std::sort(c.forbidden.begin(), c.forbidden.end());
        c.forbidden.erase(std::unique(c.forbidden.begin(), c.forbidden.end()), c.forbidden.end());
        require(c.forbidden.empty() || c.forbidden.back() < tuples, "forbidden tuple entry out of domain");
    }
}

bool CspInstance::satisfied_by(std::span<const int> assignment) const
{
    if (assignment.size() != static_cast<std::size_t>(n_)) {
        return false;
    }
    std::vector<int> values(static_cast<std::size_t>(order_));
    for (const auto& c : constraints_) {
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
            values[i] = assignment[static_cast<std::size_t>(c.scope[i])];
        }
        if (!c.allows(values, domain_size_)) {
            return false;
        }
    }
    return true;
}

Hypergraph scope_hypergraph(const CspInstance& c)
{
    std::vector<std::vector<Vertex>> scopes;
    scopes.reserve(c.constraints().size());
    for (const auto& constraint : c.constraints()) {
        scopes.push_back(constraint.scope);
    }
    return Hypergraph(c.variable_count(), std::move(scopes));
}

Graph primal_graph(const CspInstance& c)
{
    return clique_expand(scope_hypergraph(c));
}

BayesNet::BayesNet(DiGraph structure, std::vector<int> domain_sizes, std::vector<std::vector<double>> cpts)
    : structure_(std::move(structure)), domain_sizes_(std::move(domain_sizes)), cpts_(std::move(cpts))
{
    const auto n = static_cast<std::size_t>(structure_.vertex_count());
    require(domain_sizes_.size() == n, "one domain size per node required");
    require(cpts_.size() == n, "one CPT per node required");
    for (int s : domain_sizes_) {
        require(s >= 1, "domain sizes must be positive");
    }
    for (Vertex v = 0; v < structure_.vertex_count(); ++v) {
        const auto rows = row_count(v);
        const auto width = static_cast<std::size_t>(domain_size(v));
        const auto& table = cpts_[static_cast<std::size_t>(v)];
        require(table.size() == rows * width,
                "CPT of node " + std::to_string(v) + " must have " + std::to_string(rows) + " rows");
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (std::size_t j = 0; j < width; ++j) {
                const double x = table[r * width + j];
                require(x >= 0.0 && std::isfinite(x), "CPT entries must be finite and non-negative");
                sum += x;
            }
            require(std::abs(sum - 1.0) <= 1e-12,
                    "CPT row " + std::to_string(r) + " of node " + std::to_string(v) + " does not sum to 1");
        }
    }
}

std::size_t BayesNet::row_count(Vertex v) const
{
    std::size_t rows = 1;
    for (Vertex p : structure_.parents(v)) {
        rows *= static_cast<std::size_t>(domain_size(p));
    }
    return rows;
}

double BayesNet::probability(Vertex v, int value, std::span<const int> parent_values) const
{
    const auto parents = structure_.parents(v);
    std::size_t row = 0;
    for (std::size_t i = 0; i < parents.size(); ++i) {
        row = row * static_cast<std::size_t>(domain_size(parents[i])) + static_cast<std::size_t>(parent_values[i]);
    }
    return cpt(v)[row * static_cast<std::size_t>(domain_size(v)) + static_cast<std::size_t>(value)];
}

std::uint64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    uint128 result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result = result * static_cast<uint128>(n - i) / static_cast<uint128>(i + 1);
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw InvalidArgument("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(result);
}

Hypergraph gen_hypergraph(int n, int m, int d, Seed seed)
{
    require(d >= 2 && d <= n, "hyperedge size d must satisfy 2 <= d <= n");
    require(m >= 0, "hyperedge count must be non-negative");
    std::uint64_t total = std::numeric_limits<std::uint64_t>::max();
    try {
        total = binomial(n, d);
    } catch (const InvalidArgument&) {
        // C(n, d) beyond 64 bits is certainly larger than m.
    }
    require(static_cast<std::uint64_t>(m) <= total,
            "cannot draw " + std::to_string(m) + " distinct " + std::to_string(d) + "-subsets of " +
                std::to_string(n) + " vertices");

    CounterRng rng(seed);
    std::vector<std::vector<Vertex>> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    constexpr std::uint64_t kEnumerateLimit = 1u << 22;
    if (total <= kEnumerateLimit && total <= 4 * static_cast<std::uint64_t>(m)) {
        // Dense request: partial Fisher-Yates over the full list of subsets.
        std::vector<std::vector<Vertex>> all;
        all.reserve(static_cast<std::size_t>(total));
        std::vector<int> c(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            c[static_cast<std::size_t>(i)] = i;
        }
        do {
            all.push_back(c);
        } while (next_combination(c, n));
        for (int i = 0; i < m; ++i) {
            const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(total - static_cast<std::uint64_t>(i)));
            std::swap(all[static_cast<std::size_t>(i)], all[j]);
            chosen.push_back(std::move(all[static_cast<std::size_t>(i)]));
        }
    } else {
        std::set<std::vector<Vertex>> seen;
        while (chosen.size() < static_cast<std::size_t>(m)) {
            auto subset = rng.sample_subset(n, d);
            if (seen.insert(subset).second) {
                chosen.push_back(std::move(subset));
            }
        }
    }
    return Hypergraph(n, std::move(chosen));
}

Graph gen_clique_graph(int n, int m, int d, Seed seed)
{
    return clique_expand(gen_hypergraph(n, m, d, seed));
}

Graph gen_gnm(int n, int m, Seed seed)
{
    return gen_clique_graph(n, m, 2, seed);
}

Graph gen_gnp(int n, double p, Seed seed)
{
    require(n >= 0, "vertex count must be non-negative");
    require_probability(p, "p");
    CounterRng rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (rng.bernoulli(p)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(n, std::move(edges));
}

CspInstance gen_csp(int n, int m, int d, int domain_size, double tightness, Seed seed)
{
    require(domain_size >= 2, "domain size must be at least 2");
    require_probability(tightness, "tightness");
    const auto scopes = gen_hypergraph(n, m, d, seed);
    const std::uint64_t tuples = checked_pow(domain_size, static_cast<std::size_t>(d));

    // Tuple draws continue on a sibling stream so the scopes stay identical
    // to gen_hypergraph with the same seed.
    CounterRng rng(Seed{seed.master ^ 0x6a09e667f3bcc909ULL, seed.stream});
    std::vector<Constraint> constraints;
    constraints.reserve(scopes.hyperedge_count());
    for (const auto& scope : scopes.hyperedges()) {
        Constraint c{scope, {}};
        for (std::uint64_t code = 0; code < tuples; ++code) {
            if (rng.bernoulli(tightness)) {
                c.forbidden.push_back(code);
            }
        }
        constraints.push_back(std::move(c));
    }
    return CspInstance(n, domain_size, d, std::move(constraints));
}

DiGraph gen_bn(int n, std::span<const double> p, Seed seed, BnMode mode)
{
    require(n >= 0, "node count must be non-negative");
    require(p.size() == static_cast<std::size_t>(n), "need one parent probability per node");
    for (double x : p) {
        require_probability(x, "parent probability");
    }
    CounterRng rng(seed);
    std::vector<int> position(static_cast<std::size_t>(n));
    if (mode == BnMode::ordered) {
        const auto order = rng.permutation(n);
        for (int i = 0; i < n; ++i) {
            position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
        }
    }
    std::vector<Arc> arcs;
    for (Vertex child = 0; child < n; ++child) {
        const double pc = p[static_cast<std::size_t>(child)];
        for (Vertex parent = 0; parent < n; ++parent) {
            if (parent == child) {
                continue;
            }
            if (mode == BnMode::ordered &&
                position[static_cast<std::size_t>(parent)] >= position[static_cast<std::size_t>(child)]) {
                continue;
            }
            if (rng.bernoulli(pc)) {
                arcs.emplace_back(parent, child);
            }
        }
    }
    return DiGraph(n, std::move(arcs));
}

DiGraph gen_two_layer(int n1, int n2, int d, Seed seed)
{
    require(n1 >= 0 && n2 >= 0, "layer sizes must be non-negative");
    require(d >= 1, "parent count d must be positive");
    require(d <= n1, "parent count d exceeds the upper layer size");
    CounterRng rng(seed);
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(n2) * static_cast<std::size_t>(d));
    for (int i = 0; i < n2; ++i) {
        const Vertex child = n1 + i;
        for (Vertex parent : rng.sample_subset(n1, d)) {
            arcs.emplace_back(parent, child);
        }
    }
    return DiGraph(n1 + n2, std::move(arcs));
}

DiGraph gen_rbnbt(int n, int k, double removal, Seed seed)
{
    require(k >= 1, "k must be positive");
    require(k < n, "k must be smaller than n");
    require(removal >= 0.0 && removal < 1.0, "removal probability must lie in [0, 1)");
    CounterRng rng(seed);
    const auto order = rng.permutation(n);

    std::vector<Arc> arcs;
    std::vector<Vertex> first(order.begin(), order.begin() + k);
    for (int i = 0; i + 1 < k; ++i) {
        arcs.emplace_back(first[static_cast<std::size_t>(i)], first.back());
    }
    std::sort(first.begin(), first.end());

    // Every k-clique of the moral graph built so far: the seed clique plus k
    // new ones per attachment.
    std::vector<std::vector<Vertex>> cliques{first};
    for (int idx = k; idx < n; ++idx) {
        const Vertex node = order[static_cast<std::size_t>(idx)];
        const auto clique = cliques[static_cast<std::size_t>(rng.below(cliques.size()))];
        for (Vertex parent : clique) {
            arcs.emplace_back(parent, node);
        }
        for (std::size_t drop = 0; drop < clique.size(); ++drop) {
            std::vector<Vertex> next;
            next.reserve(clique.size());
            for (std::size_t j = 0; j < clique.size(); ++j) {
                if (j != drop) {
                    next.push_back(clique[j]);
                }
            }
            next.push_back(node);
            std::sort(next.begin(), next.end());
            cliques.push_back(std::move(next));
        }
    }

    std::sort(arcs.begin(), arcs.end());
    std::vector<Arc> kept;
    kept.reserve(arcs.size());
    for (const auto& arc : arcs) {
        if (!rng.bernoulli(removal)) {
            kept.push_back(arc);
        }
    }
    return DiGraph(n, std::move(kept));
}

Graph gen_ktree(int n, int k, Seed seed)
{
    require(k >= 0, "k must be non-negative");
    require(n >= k + 1, "a k-tree needs at least k+1 vertices");
    CounterRng rng(seed);
    const auto label = rng.permutation(n);
    auto id = [&](int build) { return label[static_cast<std::size_t>(build)]; };

    std::vector<Edge> edges;
    for (int u = 0; u <= k; ++u) {
        for (int v = u + 1; v <= k; ++v) {
            edges.emplace_back(id(u), id(v));
        }
    }
    std::vector<std::vector<int>> cliques;
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<int> c;
        for (int u = 0; u <= k; ++u) {
            if (u != drop) {
                c.push_back(u);
            }
        }
        cliques.push_back(std::move(c));
        if (k == 0) {
            break;
        }
    }
    for (int v = k + 1; v < n; ++v) {
        const auto clique = cliques[static_cast<std::size_t>(rng.below(cliques.size()))];
        for (int u : clique) {
            edges.emplace_back(id(u), id(v));
        }
        for (std::size_t drop = 0; drop < clique.size(); ++drop) {
            std::vector<int> next;
            for (std::size_t j = 0; j < clique.size(); ++j) {
                if (j != drop) {
                    next.push_back(clique[j]);
                }
            }
            next.push_back(v);
            cliques.push_back(std::move(next));
        }
    }
    return Graph(n, std::move(edges));
}

BayesNet fill_cpts(const DiGraph& g, int domain_size, Seed seed)
{
    require(domain_size >= 1, "domain size must be positive");
    if (!g.is_acyclic()) {
        throw InvalidArgument("fill_cpts requires an acyclic structure");
    }
    CounterRng rng(seed);
    const int n = g.vertex_count();
    std::vector<int> sizes(static_cast<std::size_t>(n), domain_size);
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    const auto width = static_cast<std::size_t>(domain_size);
    for (Vertex v = 0; v < n; ++v) {
        const std::uint64_t rows = checked_pow(domain_size, g.parents(v).size());
        auto& table = cpts[static_cast<std::size_t>(v)];
        table.resize(static_cast<std::size_t>(rows) * width);
        for (std::size_t r = 0; r < rows; ++r) {
            // Normalized unit exponentials are Dirichlet(1, ..., 1).
            double sum = 0.0;
            for (std::size_t j = 0; j < width; ++j) {
                table[r * width + j] = rng.exponential();
                sum += table[r * width + j];
            }
            for (std::size_t j = 0; j < width; ++j) {
                table[r * width + j] /= sum;
            }
        }
    }
    return BayesNet(g, std::move(sizes), std::move(cpts));
}

} // namespace twlab
