#include "twlab/rng.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>
#include <algorithm>

namespace twlab {

double CounterRng::exponential() noexcept
{
    // 1 - U lies in (0, 1], so the log is finite.
    return -std::log1p(-uniform());
}

std::vector<int> CounterRng::permutation(int n)
{
    std::vector<int> items(static_cast<std::size_t>(n));
    std::iota(items.begin(), items.end(), 0);
    shuffle(std::span<int>(items));
    return items;
}

std::vector<int> CounterRng::sample_subset(int n, int k)
{
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    std::unordered_set<int> taken;
    for (int j = n - k; j < n; ++j) {
        const auto t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
        if (taken.insert(t).second) {
            chosen.push_back(t);
        } else {
            taken.insert(j);
            chosen.push_back(j);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

} // namespace twlab
