#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace manetsim {

// Deterministic random source. One master seed fans out into independent
// named substreams (mobility, traffic, topology, energy-init, mac) so that
// changing how one concern draws randomness cannot perturb the others.
// mt19937_64 output is fully specified by the standard, and the uniform
// helpers below avoid std::*_distribution (whose algorithms are
// implementation-defined), so identical seeds give identical draws on any
// platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent generator for a named concern. Same (seed, name) pair
    /// always yields the same generator state.
    std::mt19937_64 substream(std::string_view name) const {
        return std::mt19937_64(mix(seed_, fnv1a(name)));
    }

private:
    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

/// Uniform double in [lo, hi). 53-bit resolution, platform-independent.
inline double uniform_double(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny next to 2^64, and
    // determinism matters more than the 2^-50 bias.
    return g() % n;
}

} // namespace manetsim
