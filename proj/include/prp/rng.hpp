#ifndef PRP_RNG_HPP
#define PRP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace prp {

/// SplitMix64 finalizer; used both as a bit mixer and for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic replica-seed derivation: seed(master, i) is the SplitMix64
/// mix of master advanced by (i+1) golden-ratio increments. Identical on
/// every platform, independent of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * index);
}

/// Random stream for one trajectory. Wraps the (bit-reproducible) mt19937_64
/// engine; the variate transforms are spelled out here so results do not
/// depend on any standard-library distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate (rate > 0).
    double exponential(double rate) { return -std::log1p(-u01()) / rate; }

    /// Uniform integer in [0, n). n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

    bool coin(double p) { return u01() < p; }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace prp

#endif  // PRP_RNG_HPP
