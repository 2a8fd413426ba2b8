#pragma once

#include <cstdint>

namespace snu {

// Counter-based generator: each output is a pure function of
// (seed, stream, counter), so parallel workers can draw from disjoint
// streams without coordination and the layout of work across threads
// never changes the values produced.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(derive_key(seed, stream)) {}

    // Raw 64 random bits for draw index i.
    std::uint64_t bits(std::uint64_t i) const {
        return mix(key_ + (i + 1) * kGamma);
    }

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform(std::uint64_t i) const {
        return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        return mix(mix(seed + kGamma) ^ mix(stream + kGamma2));
    }

private:
    static constexpr std::uint64_t kGamma  = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kGamma2 = 0xBF58476D1CE4E5B9ull;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
};

// Inverse of the standard normal CDF, Wichura's AS 241 (PPND16).
// Accurate to full double precision on (0,1).
double inverse_normal_cdf(double p);

}  // namespace snu
