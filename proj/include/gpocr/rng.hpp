#pragma once

#include <cmath>
#include <cstdint>

// Pinned deterministic generator: splitmix64. The exact constants and the
// Box-Muller convention below are part of the reproducibility contract for
// every seeded artifact this library emits (see README).
namespace gpocr {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// One scramble round; used to derive substream seeds.
inline std::uint64_t mix64(std::uint64_t v) {
    return splitmix64_step(v);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_step(state_); }

    // uniform in [0,1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in (0,1]; safe as a log argument
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal, Box-Muller cosine branch; consumes two uniforms
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
};

// Substream seed for a row/entry index under a base seed.
inline std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(mix64(base_seed) + index);
}

} // namespace gpocr
