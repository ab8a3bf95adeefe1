#pragma once

#include <cstdint>
#include <random>

namespace crpulse {

// splitmix64 (Steele/Lea/Flood mixing constants). Used for seed derivation so
// that sweep runs are reproducible across platforms and resumable per start.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n_steps,
                                 std::uint64_t start_index) {
    return splitmix64(splitmix64(base_seed ^ splitmix64(n_steps)) ^ start_index);
}

// mt19937_64 output mapped to [0,1) with an explicit bit conversion.
// std::uniform_real_distribution is implementation-defined, which would break
// byte-identical reruns across standard libraries.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    double next_unit() { return (engine_() >> 11) * 0x1.0p-53; }

    // uniform on [-half_width, +half_width]
    double next_symmetric(double half_width) {
        return (2.0 * next_unit() - 1.0) * half_width;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace crpulse
