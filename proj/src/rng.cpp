#include "depthlang/rng.hpp"

#include "depthlang/error.hpp"

#include <algorithm>
#include <numeric>

namespace depthlang {

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) throw ArgumentError("sample_indices: k exceeds n");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    SplitMix64 rng(seed);
    // Partial Fisher-Yates: after i steps the first i slots hold the sample.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace depthlang
