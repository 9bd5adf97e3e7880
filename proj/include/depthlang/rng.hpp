#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace depthlang {

/// FNV-1a 64-bit hash. Used for manifest hashes and for deriving per-item
/// seeds; stable across platforms, unlike std::hash.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 14695981039346656037ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (i * 8)) & 0xFFu;
        h *= 1099511628211ULL;
    }
    return h;
}

/// SplitMix64 generator. All toolkit randomness (template sampling, relation
/// subsetting) flows through this so that outputs are bit-stable regardless
/// of the standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n). Rejection-free multiply-shift reduction;
    /// bias is negligible for the small n used here and, crucially, the
    /// result is platform-independent.
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Deterministic choice of k distinct indices out of n, in ascending order.
/// Partial Fisher-Yates on an index vector, then sort of the chosen prefix.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace depthlang
