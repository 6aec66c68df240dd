#include "xgewfi/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace xgewfi {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    return mix64(mix64(seed ^ fnv1a64(tag)) ^ index);
}

Rng::Rng(std::uint64_t seed) {
    // Canonical xoshiro seeding: four successive splitmix64 outputs.
    std::uint64_t z = seed;
    bool all_zero = true;
    for (auto& s : state_) {
        s = mix64(z);
        z += 0x9E3779B97F4A7C15ull;
        all_zero = all_zero && s == 0;
    }
    if (all_zero) {
        state_[0] = 1;  // xoshiro forbids the all-zero state
    }
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
}  // namespace

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_double() {
    return 1.0 - next_double();
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    // Lemire's multiply-and-reject method.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_open_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t count) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    if (count > n) {
        count = n;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace xgewfi
