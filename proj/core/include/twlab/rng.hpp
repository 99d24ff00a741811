#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace twlab {

__extension__ using uint128 = unsigned __int128;

// (master, stream) fully determines every random choice of one generator call.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream.
///
/// Output i is mix(key + (i + 1) * golden_gamma) where key is derived from the
/// seed's master and stream words. Satisfies UniformRandomBitGenerator. All
/// bounded and real-valued draws below are defined here rather than through
/// <random> distributions so their sequences do not depend on the standard
/// library in use.
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit CounterRng(Seed seed) noexcept
        : key_(splitmix64_mix(seed.master ^ splitmix64_mix(seed.stream + kGamma))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        ++counter_;
        return splitmix64_mix(key_ + counter_ * kGamma);
    }

    std::uint64_t counter() const noexcept { return counter_; }

    // Uniform integer in [0, bound). bound must be > 0. Lemire's nearly
    // divisionless method.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        uint128 product = static_cast<uint128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<uint128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return p >= 1.0 || (p > 0.0 && uniform() < p); }

    // Standard exponential variate.
    double exponential() noexcept;

    template <typename T>
    void shuffle(std::span<T> items) noexcept
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Uniform random permutation of 0..n-1.
    std::vector<int> permutation(int n);

    // Uniform k-subset of 0..n-1 (Floyd's algorithm), returned sorted.
    std::vector<int> sample_subset(int n, int k);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace twlab
