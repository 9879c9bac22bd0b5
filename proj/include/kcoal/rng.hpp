#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace kcoal {

// All randomness in the toolkit flows through this wrapper. std::mt19937_64
// itself is pinned by the standard, but the distributions on top of it are
// not, so we implement the few draws we need by hand. Output files that
// promise byte-for-byte reproducibility depend on these exact procedures;
// do not change them without revisiting every determinism test.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). Unbiased via mask-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        // bound == 0 is a caller bug; mask of 0 would loop forever.
        if (bound <= 1) return 0;
        const std::uint64_t mask = std::bit_ceil(bound) - 1;
        for (;;) {
            const std::uint64_t x = engine_() & mask;
            if (x < bound) return x;
        }
    }

    int index(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle, high index down, one below() per step.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace detail

/// Derives an independent child seed from a master seed, a stream tag and an
/// index within the stream. Used to give every restart / repetition / arm its
/// own generator without the streams stepping on each other.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
    using detail::splitmix64;
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

} // namespace kcoal
