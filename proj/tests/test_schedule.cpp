#include <doctest.h>

#include <cmath>

#include "rmc/schedule.hpp"

using namespace rmc;

TEST_CASE("desk schedule (ell=2, K=2)") {
    const auto s = build_schedule({.ell = 2, .K = 2.0, .epsilon = 0.25});
    CHECK(s.X_prev() == 2);
    CHECK(s.X_ell() == 16);
    CHECK(s.J() == 6);
    const std::int64_t expected[] = {1, 1, 2, 4, 7, 12, 20};
    for (int j = 0; j <= 6; ++j) {
        CHECK(s.y(j) == expected[j]);
        CHECK(s.y_tilde(j) ==
              doctest::Approx(std::exp(j / 2.0)).epsilon(1e-13));
    }
    CHECK(s.y(6) >= s.X_ell());
    CHECK(s.y(5) < s.X_ell());
    // J equals the ceiling formula here
    CHECK(s.J() == static_cast<int>(std::ceil(2.0 * 4.0 * M_LN2)));
    CHECK(s.T_ell() == doctest::Approx(1024.0));
    CHECK(s.T1_ell() == doctest::Approx(1024.0 / (2.0 * std::log(2.0))));
    CHECK(s.C0() == doctest::Approx(201.0));
}

TEST_CASE("grid ratio is e^{1/ell} exactly") {
    const auto s = build_schedule({.ell = 3, .K = 2.0, .epsilon = 0.1});
    for (int j = 1; j <= s.J(); ++j)
        CHECK(s.y_tilde(j) / s.y_tilde(j - 1) ==
              doctest::Approx(std::exp(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("the asymptotic-regime profile overflows any budget") {
    CHECK_THROWS_AS(build_schedule({.ell = 3, .K = 25.0, .epsilon = 0.25}),
                    budget_error);
}

TEST_CASE("y0 below one is rejected") {
    CHECK_THROWS_AS(build_schedule({.ell = 2, .K = 3.0, .epsilon = 0.25}),
                    config_error);
}

TEST_CASE("b factor closed form at the desk schedule") {
    const auto s = build_schedule({.ell = 2, .K = 2.0, .epsilon = 0.25});
    CHECK(std::abs(b_factor(s, 1) - std::exp(-5.0 / 8.0)) <= 1e-12);
    // blocks with harmonic mass below 1/ell keep b <= 1
    for (int j = 1; j <= s.J(); ++j) {
        const double h = harmonic_range(static_cast<double>(s.y(j - 1)),
                                        static_cast<double>(s.y(j)));
        if (h <= 0.5) CHECK(b_factor(s, j) <= 1.0);
    }
    CHECK_THROWS_AS(b_factor(s, 0), domain_error);
    CHECK_THROWS_AS(b_factor(s, 7), domain_error);
}

TEST_CASE("large-ell profile keeps every b factor at most one") {
    const auto s = build_schedule({.ell = 40, .K = 1.2, .epsilon = 0.25});
    CHECK(!s.integer_scale());  // 2^{40^{1.2}} is far beyond 64 bits
    for (int j = 1; j <= s.J(); ++j) CHECK(b_factor(s, j) <= 1.0);
}

TEST_CASE("harmonic helpers") {
    // loop region
    double h = 0.0;
    for (int k = 1; k <= 1000; ++k) h += 1.0 / k;
    CHECK(harmonic_number(1000.0) == doctest::Approx(h).epsilon(1e-14));
    // asymptotic region joins smoothly
    const double a = harmonic_number(1e7);
    const double b = harmonic_number(1e7 + 1) - 1.0 / (1e7 + 1);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(harmonic_range(10.0, 10.0) == 0.0);
    CHECK(harmonic_range(2.0, 4.0) ==
          doctest::Approx(1.0 / 3.0 + 1.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("tilde cutoff is inactive at desk scale") {
    const auto s = build_schedule({.ell = 2, .K = 2.0, .epsilon = 0.25});
    for (int j = 1; j <= s.J(); ++j)
        CHECK(!s.tilde_block_active(16.0, j));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(build_schedule({.ell = 1, .K = 2.0, .epsilon = 0.25}),
                    config_error);
    CHECK_THROWS_AS(build_schedule({.ell = 2, .K = 0.5, .epsilon = 0.25}),
                    config_error);
    CHECK_THROWS_AS(build_schedule({.ell = 2, .K = 2.0, .epsilon = 0.0}),
                    config_error);
}
