#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace permld {

// Counter-based pseudo-random generator (Philox 4x32, 10 rounds).
//
// Chosen over std::mt19937_64 because the counter construction gives cheap,
// provably non-overlapping substreams: any two (counter, key) pairs that
// differ in a single bit produce unrelated blocks. That is exactly what the
// deterministic sharding scheme needs (one substream per shard, identical
// results for any thread count). Constants follow the original Philox
// specification and are pinned by known-answer tests.

struct RngSeed {
    std::uint64_t seed = 0;   // key
    std::uint64_t stream = 0; // substream selector
};

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philoxRound(std::array<std::uint32_t, 4>& ctr,
                        const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace detail

// One 10-round Philox block. Exposed for the known-answer tests.
inline std::array<std::uint32_t, 4> philoxBlock(std::array<std::uint32_t, 4> counter,
                                                std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        detail::philoxRound(counter, key);
        key[0] += detail::kPhiloxW0;
        key[1] += detail::kPhiloxW1;
    }
    return counter;
}

class PhiloxRng {
public:
    using result_type = std::uint64_t;

    explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          base_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    explicit PhiloxRng(RngSeed s) : PhiloxRng(s.seed, s.stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    // Next 64 uniformly random bits (two lanes of one Philox block).
    result_type operator()() {
        if (lane_ == 0) {
            block_ = philoxBlock({static_cast<std::uint32_t>(blockIndex_),
                                  static_cast<std::uint32_t>(blockIndex_ >> 32),
                                  base_[0], base_[1]},
                                 key_);
            ++blockIndex_;
        }
        const int i = 2 * lane_;
        lane_ ^= 1;
        return (static_cast<std::uint64_t>(block_[i + 1]) << 32) | block_[i];
    }

    // Uniform integer in [0, n), n >= 1. Unbiased via rejection; the
    // threshold trick ((2^64 - n) mod n) keeps the common path to a single
    // multiply-free comparison.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double real01() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> base_; // stream goes in the high counter words
    std::uint64_t blockIndex_ = 0;      // low counter words
    std::array<std::uint32_t, 4> block_{};
    int lane_ = 0;
};

} // namespace permld
