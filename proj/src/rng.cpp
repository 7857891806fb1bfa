#include "rmc/rng.hpp"

#include <cmath>

namespace rmc {

GaussianSequence::GaussianSequence(std::vector<std::complex<double>> values,
                                   SeedPath seed)
    : values_(std::move(values)), seed_(seed) {}

std::complex<double> GaussianSequence::coeff(int k) const {
    if (k < 1) return {0.0, 0.0};
    return x(k) / std::sqrt(static_cast<double>(k));
}

std::vector<std::complex<double>> GaussianSequence::coeff_array(int n) const {
    std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k)] = coeff(k);
    return c;
}

GaussianSequence GaussianSequence::zeros(int R) {
    if (R < 1) throw size_error("GaussianSequence::zeros: R must be >= 1");
    std::vector<std::complex<double>> v(static_cast<std::size_t>(R) + 1,
                                        {0.0, 0.0});
    return GaussianSequence(std::move(v), SeedPath{});
}

std::complex<double> gaussian_at(std::uint64_t master_seed,
                                 std::uint64_t trial_index, int k) {
    // Two counter words per index: Box-Muller with radius sqrt(-log u), which
    // makes Re and Im each N(0, 1/2).
    const std::uint64_t c = 2 * static_cast<std::uint64_t>(k);
    const std::uint64_t w1 = counter_hash(master_seed, trial_index, c);
    const std::uint64_t w2 = counter_hash(master_seed, trial_index, c + 1);
    const double u1 = u64_to_unit_open(w1);
    const double u2 = u64_to_unit_halfopen(w2);
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

GaussianSequence sample_gaussians(int R, std::uint64_t master_seed,
                                  std::uint64_t trial_index, int max_length) {
    if (R < 1) throw size_error("sample_gaussians: R must be >= 1");
    if (R > max_length)
        throw size_error("sample_gaussians: R = " + std::to_string(R) +
                         " exceeds the memory budget of " +
                         std::to_string(max_length));
    std::vector<std::complex<double>> v(static_cast<std::size_t>(R) + 1);
    v[0] = {0.0, 0.0};
    for (int k = 1; k <= R; ++k)
        v[static_cast<std::size_t>(k)] = gaussian_at(master_seed, trial_index, k);
    return GaussianSequence(std::move(v), SeedPath{master_seed, trial_index});
}

}  // namespace rmc
