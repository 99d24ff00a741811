#include "twlab/thresholds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "twlab/errors.hpp"
#include "twlab/random_models.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_order(int d)
{
    if (d < 2) {
        throw InvalidArgument("order d must be at least 2, got " + std::to_string(d));
    }
}

void require_split(int n, int k, int a, int d)
{
    if (n < 1 || k < 0 || a < 0 || d < 1 || a + k + 1 > n || d > n) {
        throw InvalidArgument("split parameters need n >= 1, k >= 0, a >= 0, 1 <= d <= n and a + k + 1 <= n");
    }
}

double log_binomial(double n, double k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// ln(exp(x) + exp(y)) without overflow.
double log_add(double x, double y)
{
    if (x == kNegInf) {
        return y;
    }
    if (y == kNegInf) {
        return x;
    }
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

} // namespace

double critical_ratio(int d)
{
    require_order(d);
    return std::numbers::ln2 / (d * std::log(3.0) - std::log1p(std::ldexp(1.0, d)));
}

Rational sparse_ratio(int d)
{
    require_order(d);
    return {1, static_cast<std::int64_t>(d) * (d - 1)};
}

ThresholdPair threshold_pair(int d)
{
    return {d, sparse_ratio(d), critical_ratio(d)};
}

double log_split_base(int d)
{
    require_order(d);
    return std::log1p(std::ldexp(1.0, d)) - d * std::log(3.0);
}

std::uint64_t split_hyperedge_count(int n, int k, int a, int d)
{
    require_split(n, k, a, d);
    return binomial(a + k + 1, d) + binomial(n - a, d) - binomial(k + 1, d);
}

SplitFraction split_fraction_bound(int n, int k, int a, int d)
{
    require_split(n, k, a, d);
    SplitFraction f;
    f.exact = static_cast<double>(split_hyperedge_count(n, k, a, d)) / static_cast<double>(binomial(n, d));
    const double nd = std::pow(static_cast<double>(n), d);
    f.pairwise = (std::pow(static_cast<double>(a + k + 1), d) + std::pow(static_cast<double>(n - a), d)) / nd;
    const double y = static_cast<double>(k + 1) / n;
    f.balanced = (std::pow(1.0 / 3.0, d) + std::pow(2.0 / 3.0, d)) * std::pow(1.0 + 3.0 * y, d);
    return f;
}

double log_balanced_partition_bound(int n, int m, int d, double y)
{
    if (!(y > 0.0 && y < 1.0)) {
        throw InvalidArgument("y must lie strictly between 0 and 1");
    }
    if (n < 1 || m < 0) {
        throw InvalidArgument("need n >= 1 and m >= 0");
    }
    require_order(d);
    const double stirling = -0.5 * std::log(2.0 * std::numbers::pi * y * (1.0 - y) * n);
    const double entropy = std::numbers::ln2 - y * std::log(y) - (1.0 - y) * std::log1p(-y);
    return stirling + n * entropy + m * log_split_base(d) + static_cast<double>(d) * m * std::log1p(3.0 * y);
}

double log_hypergeometric_avoidance(std::uint64_t n_p, std::uint64_t n_all, std::int64_t m)
{
    if (m < 0 || n_p > n_all || static_cast<std::uint64_t>(m) > n_all) {
        throw InvalidArgument("hypergeometric avoidance needs 0 <= m <= n_all and n_p <= n_all");
    }
    if (static_cast<std::uint64_t>(m) > n_p) {
        return kNegInf;
    }
    const auto md = static_cast<double>(m);
    return log_binomial(static_cast<double>(n_p), md) - log_binomial(static_cast<double>(n_all), md);
}

double exact_log_expected_balanced_partitions(int n, int m, int d, int k)
{
    require_order(d);
    if (k < 0 || k + 1 > n) {
        throw InvalidArgument("need 0 <= k and k+1 <= n");
    }
    const std::uint64_t all = binomial(n, d);
    const int rest = n - k - 1;
    const auto [lo, hi] = balanced_side_window(n, k);
    double total = kNegInf;
    for (int a = lo; a <= hi; ++a) {
        const int b = rest - a;
        if (b < lo || b > hi) {
            continue;
        }
        const double count = log_binomial(n, k + 1) + log_binomial(rest, a);
        total = log_add(total, count + log_hypergeometric_avoidance(split_hyperedge_count(n, k, a, d), all, m));
    }
    return total;
}

double witness_log_product(int d, double ratio, double y)
{
    const double entropy = std::numbers::ln2 - y * std::log(y) - (1.0 - y) * std::log1p(-y);
    return entropy + ratio * log_split_base(d) + ratio * d * std::log1p(3.0 * y);
}

std::optional<double> witness_delta(int d, double ratio)
{
    require_order(d);
    if (!(ratio > 0.0)) {
        throw InvalidArgument("ratio must be positive");
    }
    double lo = 1e-9;
    double hi = 0.5;
    if (witness_log_product(d, ratio, lo) >= 0.0) {
        return std::nullopt;
    }
    if (witness_log_product(d, ratio, hi) < 0.0) {
        return hi;
    }
    // The product is increasing in y on (0, 1/2), so the qualifying set is an interval.
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (witness_log_product(d, ratio, mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

bool bn_condition_holds(std::span<const double> p)
{
    double log_product = 0.0;
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw InvalidArgument("parent probabilities must lie in [0, 1]");
        }
        if (x == 1.0) {
            return true;
        }
        log_product += std::log1p(-x);
    }
    return log_product / 3.0 < -std::numbers::ln2;
}

double bn_node_log_probability(double p, PartitionRole role, int size_a, int size_b)
{
    const double lq = std::log1p(-p);
    auto power = [&](int e) { return e == 0 ? 0.0 : e * lq; };
    switch (role) {
    case PartitionRole::a: return power(size_b);
    case PartitionRole::b: return power(size_a);
    case PartitionRole::separator: {
        // All parents in A∪S, or all in B∪S; both means all parents in S.
        const double both = std::exp(power(size_a)) + std::exp(power(size_b)) - std::exp(power(size_a + size_b));
        return std::log(both);
    }
    }
    return 0.0;
}

BnPartitionBound bn_partition_log_bound(std::span<const double> p, int k, std::span<const PartitionRole> roles,
                                        SeparatorBound separator_bound)
{
    const auto n = static_cast<int>(p.size());
    if (roles.size() != p.size()) {
        throw InvalidArgument("need one partition role per node");
    }
    int size_a = 0;
    int size_b = 0;
    int size_s = 0;
    for (auto r : roles) {
        (r == PartitionRole::a ? size_a : r == PartitionRole::b ? size_b : size_s) += 1;
    }
    if (k < 0 || size_s != k + 1) {
        throw InvalidArgument("separator must hold exactly k+1 nodes");
    }
    const auto [lo, hi] = balanced_side_window(n, k);
    if (size_a < lo || size_a > hi || size_b < lo || size_b > hi) {
        throw InvalidArgument("sides A and B must lie in the balanced size window [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
    const double third = static_cast<double>(n - k - 1) / 3.0;
    const int subtracted = separator_bound == SeparatorBound::complement ? n - k - 1 : k;

    BnPartitionBound out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        if (!(pi >= 0.0 && pi <= 1.0)) {
            throw InvalidArgument("parent probabilities must lie in [0, 1]");
        }
        const double q = 1.0 - pi;
        if (roles[i] != PartitionRole::separator) {
            out.log_bound += third == 0.0 ? 0.0 : third * std::log(q);
            continue;
        }
        const double bound = 2.0 * std::pow(q, third) - std::pow(q, subtracted);
        if (bound >= 1.0) {
            if (bound > 1.0) {
                ++out.clamped_nodes;
            }
            continue;
        }
        out.log_bound += bound > 0.0 ? std::log(bound) : kNegInf;
    }
    return out;
}

} // namespace twlab
