#include <doctest.h>

#include <cmath>

#include "rmc/rng.hpp"
#include "rmc/stats.hpp"

using namespace rmc;

TEST_CASE("sampling is deterministic in (seed, trial, R)") {
    const auto a = sample_gaussians(4, 0xDEADBEEF, 0);
    const auto b = sample_gaussians(4, 0xDEADBEEF, 0);
    for (int k = 1; k <= 4; ++k) {
        CHECK(a.x(k).real() == b.x(k).real());
        CHECK(a.x(k).imag() == b.x(k).imag());
    }
}

TEST_CASE("distinct trials give distinct values") {
    const auto a = sample_gaussians(4, 0xDEADBEEF, 0);
    const auto b = sample_gaussians(4, 0xDEADBEEF, 1);
    bool any_diff = false;
    for (int k = 1; k <= 4; ++k)
        if (a.x(k) != b.x(k)) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("the first entries do not depend on R") {
    const auto a = sample_gaussians(4, 99, 7);
    const auto b = sample_gaussians(16, 99, 7);
    for (int k = 1; k <= 4; ++k) CHECK(a.x(k) == b.x(k));
}

TEST_CASE("size errors") {
    CHECK_THROWS_AS(sample_gaussians(0, 1, 0), size_error);
    CHECK_THROWS_AS(sample_gaussians(100, 1, 0, 50), size_error);
}

TEST_CASE("all entries are finite") {
    const auto x = sample_gaussians(1000, 31337, 3);
    for (int k = 1; k <= 1000; ++k) {
        CHECK(std::isfinite(x.x(k).real()));
        CHECK(std::isfinite(x.x(k).imag()));
    }
}

TEST_CASE("component means and |X|^2 match the standard complex Gaussian") {
    const int T = 40000;
    RunningStat re, im, sq;
    for (int t = 0; t < T; ++t) {
        const auto z = gaussian_at(0xC0FFEE, static_cast<std::uint64_t>(t), 1);
        re.add(z.real());
        im.add(z.imag());
        sq.add(std::norm(z));
    }
    const double tol = 5.0 / std::sqrt(static_cast<double>(T));
    CHECK(std::abs(re.mean()) < tol);
    CHECK(std::abs(im.mean()) < tol);
    const auto e = sq.estimate();
    CHECK(std::abs(e.mean - 1.0) < 5.0 * e.stderr_);
    // Re and Im each carry half the variance
    CHECK(re.variance() == doctest::Approx(0.5).epsilon(0.05));
    CHECK(im.variance() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("neighbouring trial streams are uncorrelated") {
    const int T = 20000;
    RunningStat cross;
    for (int t = 0; t < T; ++t) {
        const auto a = gaussian_at(0xFEED, static_cast<std::uint64_t>(t), 3);
        const auto b = gaussian_at(0xFEED, static_cast<std::uint64_t>(t + 1), 3);
        cross.add(a.real() * b.real() + a.imag() * b.imag());
    }
    const auto e = cross.estimate();
    CHECK(std::abs(e.mean) <= 5.0 * e.stderr_);
}

TEST_CASE("exponent coefficients are X(k)/sqrt(k)") {
    const auto x = sample_gaussians(9, 5, 5);
    for (int k = 1; k <= 9; ++k) {
        const auto expect = x.x(k) / std::sqrt(static_cast<double>(k));
        CHECK(x.coeff(k) == expect);
    }
    CHECK(x.coeff(10) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("derived seeds differ per tag") {
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}
