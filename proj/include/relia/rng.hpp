#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace relia {

/// FNV-1a 64-bit hash. Used to derive stable per-question seeds from
/// string identifiers (std::hash is not guaranteed stable across builds).
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// splitmix64 finalizer; combines two seeds into one well-mixed value.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull + b;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seeded random generator with a pinned algorithm.
///
/// The raw stream is std::mt19937_64, whose output sequence is fixed by
/// the standard, so identical seeds reproduce identical draws on any
/// conforming implementation. Derived draws (uniform, normal, integer)
/// are built here from raw 64-bit words rather than through
/// std::*_distribution, whose sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Requires n >= 1.
    int uniform_int(int n) {
        return static_cast<int>(uniform01() * static_cast<double>(n));
    }

    bool chance(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller. Two uniforms per draw, the sine
    /// twin is discarded so the generator stays stateless between calls.
    double normal() {
        const double u1 =
            (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Fisher-Yates shuffle over [first, last).
    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<int>(last - first);
        for (int i = n - 1; i > 0; --i) {
            const int j = uniform_int(i + 1);
            std::swap(first[i], first[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace relia
