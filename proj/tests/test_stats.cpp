#include <doctest.h>

#include <cmath>
#include <vector>

#include "rmc/rng.hpp"
#include "rmc/stats.hpp"

using namespace rmc;

TEST_CASE("running stat matches direct formulas") {
    const std::vector<double> xs = {1.0, 2.0, 3.5, -1.0, 0.25};
    RunningStat s;
    for (double x : xs) s.add(x);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    CHECK(s.mean() == doctest::Approx(mean).epsilon(1e-14));
    CHECK(s.variance() == doctest::Approx(var).epsilon(1e-12));
    const MCEstimate e = s.estimate(42);
    CHECK(e.stderr_ == doctest::Approx(std::sqrt(var / 5.0)).epsilon(1e-12));
    CHECK(e.ci_lo <= e.mean);
    CHECK(e.ci_hi >= e.mean);
    CHECK(e.seed == 42);
}

TEST_CASE("split and merged accumulation agrees with one pass") {
    RunningStat whole, lo, hi;
    for (int t = 0; t < 20000; ++t) {
        const double v = std::norm(gaussian_at(7, static_cast<std::uint64_t>(t), 1));
        whole.add(v);
        (t < 10000 ? lo : hi).add(v);
    }
    lo.merge(hi);
    CHECK(std::abs(whole.mean() - lo.mean()) <= 1e-12);
    CHECK(std::abs(whole.variance() - lo.variance()) <= 1e-10);
}

TEST_CASE("wilson interval brackets the frequency") {
    const auto ci = wilson_interval(10, 100);
    CHECK(ci.lo > 0.0);
    CHECK(ci.lo < 0.1);
    CHECK(ci.hi > 0.1);
    CHECK(ci.hi < 1.0);
    const auto zero = wilson_interval(0, 50);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi > 0.0);
}

TEST_CASE("median of means on a constant sample is the constant") {
    std::vector<double> xs(1000, 3.25);
    const auto e = median_of_means(xs, 20);
    CHECK(e.mean == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(e.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("median of means resists one wild block") {
    std::vector<double> xs(1000, 1.0);
    for (int i = 0; i < 40; ++i) xs[static_cast<std::size_t>(i)] = 1e6;
    const auto mom = median_of_means(xs, 25);
    CHECK(mom.mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quantiles interpolate") {
    std::vector<double> xs = {4.0, 1.0, 3.0, 2.0};
    CHECK(quantile(xs, 0.0) == doctest::Approx(1.0));
    CHECK(quantile(xs, 1.0) == doctest::Approx(4.0));
    CHECK(quantile(xs, 0.5) == doctest::Approx(2.5));
}
