#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace twlab {

struct Rational {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

// Ratio m/n below which graphs of random cliques keep treewidth <= d+1, and
// the ratio above which they almost surely have linear treewidth.
struct ThresholdPair {
    int d = 2;
    Rational sparse;
    double critical = 0.0;
};

// ln 2 / (d ln 3 - ln(1 + 2^d)). Throws InvalidArgument for d < 2.
double critical_ratio(int d);

// Exactly 1 / (d (d - 1)).
Rational sparse_ratio(int d);

ThresholdPair threshold_pair(int d);

// ln((1/3)^d + (2/3)^d), evaluated as ln(1 + 2^d) - d ln 3.
double log_split_base(int d);

// Number of d-subsets of an n-set lying inside A∪S or B∪S for |S| = k+1 and
// |A| = a: C(a+k+1, d) + C(n-a, d) - C(k+1, d).
std::uint64_t split_hyperedge_count(int n, int k, int a, int d);

struct SplitFraction {
    double exact = 0.0;     // N_P / C(n, d)
    double pairwise = 0.0;  // ((a+k+1)^d + (n-a)^d) / n^d
    double balanced = 0.0;  // ((1/3)^d + (2/3)^d) (1 + 3y)^d with y = (k+1)/n
};

SplitFraction split_fraction_bound(int n, int k, int a, int d);

// Natural log of the upper bound on E{I}, the expected number of balanced
// k-partitions of G_C^d(n, m), with y = (k+1)/n:
//   -1/2 ln(2π y(1-y) n) + n ln(2 / (y^y (1-y)^(1-y)))
//   + m ln((1/3)^d + (2/3)^d) + d m ln(1 + 3y).
double log_balanced_partition_bound(int n, int m, int d, double y);

// ln C(n_p, m) / C(n_all, m): probability that m hyperedges drawn without
// replacement from n_all all land in a fixed set of n_p. -inf when m > n_p.
double log_hypergeometric_avoidance(std::uint64_t n_p, std::uint64_t n_all, std::int64_t m);

// Exact ln E{I} for G_C^d(n, m) and separator size k+1, summing the
// hypergeometric avoidance probability over all candidate partitions.
double exact_log_expected_balanced_partitions(int n, int m, int d, int k);

// ln of 2 / (y^y (1-y)^(1-y)) · ((1/3)^d + (2/3)^d)^ratio · (1+3y)^(d·ratio).
double witness_log_product(int d, double ratio, double y);

// Largest y in (1e-9, 1/2) with witness_log_product < 0, found by bisection
// to 1e-9; nullopt when even the smallest y fails.
std::optional<double> witness_delta(int d, double ratio);

// (∏ (1 - p_i))^(1/3) < 1/2, evaluated in log space. Any p_i = 1 makes it true.
bool bn_condition_holds(std::span<const double> p);

enum class PartitionRole : std::uint8_t { a, b, separator };

// Per-node bound for separator nodes. `complement` uses
// 2(1-p)^(r/3) - (1-p)^r with r = n-k-1, the inclusion-exclusion form of the
// "all parents in A∪S or all in B∪S" event. `as_published` keeps the exponent
// k on the subtracted term; it is not a valid bound when k < r.
enum class SeparatorBound { complement, as_published };

struct BnPartitionBound {
    double log_bound = 0.0;   // sum of per-node log bounds
    int clamped_nodes = 0;    // separator nodes whose bound exceeded 1 and was clamped
};

// Upper bound on ln Pr{no moral edge joins A and B} for the random network
// B(n, (p_i)) and a fixed partition given node by node in `roles`. Throws
// InvalidArgument unless |S| = k+1 and |A|, |B| lie in the balanced window.
BnPartitionBound bn_partition_log_bound(std::span<const double> p, int k, std::span<const PartitionRole> roles,
                                        SeparatorBound separator_bound = SeparatorBound::complement);

// Exact ln Pr{E_i} for one node, given the actual sizes of A and B.
double bn_node_log_probability(double p, PartitionRole role, int size_a, int size_b);

} // namespace twlab
