#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cddo {

// Deterministic pseudo-random stream. The engine is std::mt19937_64, whose
// output sequence is fixed by the standard; the real and index mappings are
// done here rather than through <random> distributions so that replays are
// bit-identical across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [a, b). Returns a when a == b.
    double uniform(double a, double b);

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace cddo
