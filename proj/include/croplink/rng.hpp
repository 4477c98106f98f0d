#pragma once

#include <cstdint>
#include <cmath>

namespace croplink {

// Deterministic splitmix64 stream with Box-Muller normals. The algorithm is
// fixed here (not delegated to <random>) so the same seed reproduces the
// same dataset on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Consumes exactly two draws per call; u1 is shifted off zero so the
    // log stays finite.
    double normal(double mean = 0.0, double sigma = 1.0) {
        constexpr double two_pi = 6.283185307179586476925286766559;
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = uniform();
        return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace croplink
