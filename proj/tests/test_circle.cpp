#include <doctest.h>

#include <cmath>
#include <complex>

#include "rmc/circle.hpp"
#include "rmc/fft.hpp"
#include "rmc/series.hpp"

using namespace rmc;

TEST_CASE("fft round trip") {
    std::vector<cdouble> v = {{1, 0}, {2, -1}, {0, 3}, {-1, 1}};
    auto w = v;
    fft_inplace(w, false);
    fft_inplace(w, true);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(std::abs(w[i] / 4.0 - v[i]) < 1e-14);
    std::vector<cdouble> bad(3);
    CHECK_THROWS_AS(fft_inplace(bad, false), domain_error);
}

TEST_CASE("convolution matches the direct product") {
    const std::vector<cdouble> a = {{1, 0}, {2, 0}, {0, 1}};
    const std::vector<cdouble> b = {{1, 1}, {0, -1}};
    const auto c = convolve_truncated(a, b, 4);
    // direct: (1+2z+iz^2)(1+i- iz)
    CHECK(std::abs(c[0] - cdouble{1, 1}) < 1e-13);
    CHECK(std::abs(c[1] - (cdouble{2, 2} + cdouble{0, -1})) < 1e-13);
    CHECK(std::abs(c[2] - (cdouble{0, 1} * cdouble{1, 1} + cdouble{2, 0} * cdouble{0, -1})) < 1e-13);
    CHECK(std::abs(c[3] - cdouble{0, 1} * cdouble{0, -1}) < 1e-13);
}

TEST_CASE("zero exponent gives unit samples") {
    const auto samples = eval_on_circle(GaussianSequence::zeros(4), 4, 1.0, 64);
    for (const auto& v : samples.values) CHECK(std::abs(v - cdouble{1, 0}) < 1e-13);
    double mean_sq = 0.0;
    for (const auto& v : samples.values) mean_sq += std::norm(v);
    CHECK(mean_sq / 64.0 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("single-term exponent at angle zero") {
    auto x = GaussianSequence::zeros(1);
    x.set(1, {1.0, 0.0});
    const auto samples = eval_on_circle(x, 1, 1.0, 16);
    CHECK(std::abs(samples.values[0] - cdouble{std::exp(1.0), 0.0}) < 1e-12);
}

TEST_CASE("argument checking") {
    const auto x = GaussianSequence::zeros(8);
    CHECK_THROWS_AS(eval_on_circle(x, 8, 1.0, 24), domain_error);   // not pow2
    CHECK_THROWS_AS(eval_on_circle(x, 8, -1.0, 32), domain_error);  // radius
    CHECK_THROWS_AS(eval_on_circle(x, 9, 1.0, 32), domain_error);   // R > len
    const auto s = eval_on_circle(x, 8, 1.0, 32);
    CHECK_THROWS_AS(coeff_via_cauchy(s, 9), domain_error);          // n > R
    CHECK_THROWS_AS(coeff_via_cauchy(CircleSamples{s.values, 1.0, 20}, 3),
                    domain_error);                                  // alias guard
}

TEST_CASE("cauchy recovery of exp(z) coefficients") {
    auto x = GaussianSequence::zeros(64);
    x.set(1, {1.0, 0.0});
    const auto coeffs = cauchy_coefficients_adaptive(x, 64, 1.0, 8);
    double f = 1.0;
    for (int n = 0; n <= 8; ++n) {
        if (n > 0) f *= n;
        CHECK(std::abs(coeffs[static_cast<std::size_t>(n)] - cdouble{1.0 / f, 0.0}) <
              1e-8);
    }
}

TEST_CASE("cauchy recovery of a random truncated exponential") {
    const auto X = sample_gaussians(128, 0xAB, 0);
    const auto quad = cauchy_coefficients_adaptive(X, 128, 1.0, 64);
    const auto ref = exp_series_naive(X, 64);
    for (int n = 0; n <= 64; ++n)
        CHECK(std::abs(quad[static_cast<std::size_t>(n)] - ref.at(n)) <= 1e-6);
}

TEST_CASE("zero exponent has trivial coefficients") {
    const auto samples = eval_on_circle(GaussianSequence::zeros(8), 8, 1.0, 64);
    CHECK(std::abs(coeff_via_cauchy(samples, 0) - cdouble{1, 0}) < 1e-12);
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(coeff_via_cauchy(samples, n)) < 1e-12);
}

TEST_CASE("overflow is reported, never silently Inf") {
    auto x = GaussianSequence::zeros(2);
    x.set(1, {1500.0, 0.0});  // exp(1500) does not fit a double
    CHECK_THROWS_AS(eval_on_circle(x, 2, 1.0, 32), contract_error);
    CHECK_THROWS_AS(circle_abs2_mean(x, 2, 1.0, 32), contract_error);
}

TEST_CASE("mean square of |F| over the circle") {
    CHECK(circle_abs2_mean(GaussianSequence::zeros(4), 4, 1.0, 256) ==
          doctest::Approx(1.0).epsilon(1e-13));
    const auto X = sample_gaussians(16, 0xCC, 0);
    const double coarse = circle_abs2_mean_adaptive(X, 16, 1.0, 1e-8);
    const double fine = circle_abs2_mean(X, 16, 1.0, 1 << 14);
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-6));
}
