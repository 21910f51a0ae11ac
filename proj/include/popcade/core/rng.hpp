#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace popcade {

// Counter-based splittable PRNG built on the Threefry-2x64 block cipher
// (20 rounds). Keys are 128-bit values; every derived key or draw is a pure
// function of (key, counter), so batched stepping can consume randomness in
// any order and still reproduce the sequential results bit for bit.
struct RngKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const RngKey&, const RngKey&) = default;
};

namespace detail {

inline std::uint64_t rotl64(std::uint64_t x, int r) {
    return (x << r) | (x >> (64 - r));
}

// Threefry-2x64, 20 rounds, standard rotation schedule.
inline std::pair<std::uint64_t, std::uint64_t>
threefry2x64(std::uint64_t k0, std::uint64_t k1, std::uint64_t c0, std::uint64_t c1) {
    constexpr std::array<int, 8> rot = {16, 42, 12, 31, 16, 32, 24, 21};
    constexpr std::uint64_t parity = 0x1BD11BDAA9FC1A22ull;
    const std::uint64_t ks[3] = {k0, k1, k0 ^ k1 ^ parity};

    std::uint64_t x0 = c0 + ks[0];
    std::uint64_t x1 = c1 + ks[1];
    for (int r = 0; r < 20; ++r) {
        x0 += x1;
        x1 = rotl64(x1, rot[r % 8]);
        x1 ^= x0;
        if ((r + 1) % 4 == 0) {
            const int j = (r + 1) / 4;
            x0 += ks[j % 3];
            x1 += ks[(j + 1) % 3] + static_cast<std::uint64_t>(j);
        }
    }
    return {x0, x1};
}

// Disjoint counter streams so splitting, folding and drawing from the same
// key can never alias.
constexpr std::uint64_t kStreamSplit = 0x53504C4954ull;
constexpr std::uint64_t kStreamFold  = 0x464F4C4400ull;
constexpr std::uint64_t kStreamDraw  = 0x4452415700ull;

}  // namespace detail

inline RngKey make_key(std::uint64_t seed) {
    auto [a, b] = detail::threefry2x64(seed, 0x9E3779B97F4A7C15ull, 0, 0);
    return {a, b};
}

// Two statistically independent children; the parent key must not be used
// for draws afterwards.
inline std::pair<RngKey, RngKey> split(RngKey k) {
    auto [a0, a1] = detail::threefry2x64(k.hi, k.lo, 0, detail::kStreamSplit);
    auto [b0, b1] = detail::threefry2x64(k.hi, k.lo, 1, detail::kStreamSplit);
    return {RngKey{a0, a1}, RngKey{b0, b1}};
}

inline RngKey fold_in(RngKey k, std::uint64_t data) {
    auto [a, b] = detail::threefry2x64(k.hi, k.lo, data, detail::kStreamFold);
    return {a, b};
}

// Sequential draw helper over one key. Each call consumes one 128-bit block.
class RngStream {
  public:
    explicit RngStream(RngKey k) : key_(k) {}

    std::uint64_t u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [a, b] = detail::threefry2x64(key_.hi, key_.lo, counter_++, detail::kStreamDraw);
        spare_ = b;
        have_spare_ = true;
        return a;
    }

    // Uniform in [0, 1), 53 random mantissa bits.
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Multiply-shift map; bias is O(n / 2^64).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller (deterministic, no rejection).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    RngKey key_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace popcade
