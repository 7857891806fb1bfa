#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc {

// Counter-based random number generation. Every variate is a pure function
// of (master_seed, stream, counter), so parallel trials are reproducible
// regardless of thread scheduling, and stream k of a sequence never depends
// on how many values were drawn before it.

// SplitMix64 finalizer: bijective 64-bit avalanche mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stateless hash of a (seed, stream, counter) triple.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    h = mix64(h ^ (seed + 0x9E3779B97F4A7C15ull));
    h = mix64(h ^ (stream + 0xD1B54A32D192ED03ull));
    h = mix64(h ^ (counter + 0x8CB92BA72F3D8DD7ull));
    return h;
}

// Derive a sub-seed for an independent purpose (nested MC stages, output
// shards). Distinct tags give statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
    return mix64(master_seed ^ mix64(tag + 0xA0761D6478BD642Full));
}

// Uniform double in (0, 1] from 53 high bits (never 0, so log() is safe).
inline double u64_to_unit_open(std::uint64_t w) {
    return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

// Uniform double in [0, 1).
inline double u64_to_unit_halfopen(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

struct SeedPath {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

// A realization of the random inputs X(1..R): independent standard complex
// Gaussians, Re and Im each mean 0 and variance 1/2 (so E|X(k)|^2 = 1).
class GaussianSequence {
public:
    GaussianSequence() = default;
    GaussianSequence(std::vector<std::complex<double>> values, SeedPath seed);

    // Truncation length R.
    int length() const { return static_cast<int>(values_.size()) - 1; }

    // X(k), 1-based; zero for k outside 1..R.
    std::complex<double> x(int k) const {
        if (k < 1 || k >= static_cast<int>(values_.size())) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(k)];
    }

    // Exponent coefficient c_k = X(k)/sqrt(k).
    std::complex<double> coeff(int k) const;

    // Coefficient array c_0..c_n (c_0 = 0), zero beyond R.
    std::vector<std::complex<double>> coeff_array(int n) const;

    const SeedPath& seed_path() const { return seed_; }

    void set(int k, std::complex<double> v) {
        values_.at(static_cast<std::size_t>(k)) = v;
    }

    // All-zero sequence of length R (the degenerate override used in tests
    // and exact identities).
    static GaussianSequence zeros(int R);

private:
    std::vector<std::complex<double>> values_;  // values_[k] = X(k), [0] unused
    SeedPath seed_;
};

inline constexpr int kDefaultMaxSampleLength = 1 << 26;

// Single Gaussian X(k) for a given seed path; counter-based, so the value
// does not depend on R or on any other draw.
std::complex<double> gaussian_at(std::uint64_t master_seed,
                                 std::uint64_t trial_index, int k);

// Sample X(1..R). Deterministic in (master_seed, trial_index, R); the first
// min(R, R') entries agree between lengths R and R'.
GaussianSequence sample_gaussians(int R, std::uint64_t master_seed,
                                  std::uint64_t trial_index,
                                  int max_length = kDefaultMaxSampleLength);

}  // namespace rmc
