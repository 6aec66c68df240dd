#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace xgewfi {

// splitmix64 finalizer (increment + avalanche). Used for seeding and for
// deriving substream seeds; the full generator is xoshiro256**.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// FNV-1a over the tag bytes.
std::uint64_t fnv1a64(std::string_view s);

// Substream derivation: mix64(mix64(seed ^ fnv1a64(tag)) ^ index).
// Every stage and every per-item stream (per tree, per synthetic row, per
// feature) derives its own seed this way, so parallel schedules cannot
// change the draws.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

// xoshiro256** generator, state seeded with four splitmix64 outputs.
// Uniform doubles take the top 53 bits, so the uniform path is exact
// dyadic arithmetic; normals use Box-Muller with a cached spare.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1): (next_u64() >> 11) * 2^-53.
    double next_double();

    // Uniform in (0, 1]: 1.0 - next_double(). Safe as a log() argument.
    double next_open_double();

    // Unbiased uniform integer in [0, bound), bound >= 1 (Lemire rejection).
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal();

    // First `count` entries of a seeded Fisher-Yates pass over [0, n):
    // a uniform sample of `count` distinct indices, in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace xgewfi
