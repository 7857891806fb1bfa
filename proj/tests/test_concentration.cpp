#include <doctest.h>

#include <cmath>

#include "rmc/concentration.hpp"
#include "rmc/schedule.hpp"

using namespace rmc;

namespace {

BlockSchedule desk() { return build_schedule({.ell = 2, .K = 2.0, .epsilon = 0.25}); }

}  // namespace

TEST_CASE("hoeffding on the zero process") {
    MdsProcess zero;
    zero.name = "zero";
    zero.steps = 10;
    zero.sample = [](std::uint64_t, std::vector<std::complex<double>>& z,
                     std::vector<double>& s) {
        z.assign(10, {0.0, 0.0});
        s.assign(10, 0.0);
    };
    const auto rep = hoeffding_check(zero, 10.0, {0.5, 1.0, 2.0}, 500);
    for (double f : rep.empirical) CHECK(f == 0.0);
    CHECK(rep.violations == 0);
}

TEST_CASE("hoeffding on signed steps") {
    const auto proc = make_sign_process(100, 0x51);
    const auto rep = hoeffding_check(proc, 100.0, {20.0, 40.0, 60.0}, 4000);
    // eps = 60: bound 2 e^{-3.6}, true tail is about 2 Phi(-6)
    CHECK(rep.bound[2] == doctest::Approx(2.0 * std::exp(-3.6)).epsilon(1e-12));
    CHECK(rep.empirical[2] <= 1e-3);
    CHECK(rep.violations == 0);
}

TEST_CASE("hoeffding catches a broken envelope") {
    MdsProcess bad;
    bad.name = "bad";
    bad.steps = 1;
    bad.sample = [](std::uint64_t, std::vector<std::complex<double>>& z,
                    std::vector<double>& s) {
        z.assign(1, {1.0, 0.0});
        s.assign(1, 0.25);  // |Z| > S
    };
    CHECK_THROWS_AS(hoeffding_check(bad, 1.0, {1.0}, 10), contract_error);

    MdsProcess unbounded;
    unbounded.name = "unbounded";
    unbounded.steps = 1;
    unbounded.sample = [](std::uint64_t, std::vector<std::complex<double>>& z,
                          std::vector<double>& s) {
        z.assign(1, {0.0, 0.0});
        s.assign(1, std::numeric_limits<double>::infinity());
    };
    CHECK_THROWS_AS(hoeffding_check(unbounded, 1.0, {1.0}, 10), contract_error);
}

TEST_CASE("hoeffding on the coefficient increments") {
    const auto sched = desk();
    const auto proc = make_a1_increment_process(8, sched, 0x52);
    const auto rep = hoeffding_check(proc, 4.0, {1.0, 2.0, 4.0}, 2000);
    CHECK(rep.violations == 0);
}

TEST_CASE("doob max on a constant sequence") {
    const auto seq = make_constant_sequence(5, 2.0);
    const auto rep = doob_max_check(seq, 2.0, {1.0, 3.0}, 200);
    CHECK(rep.empirical[0] == 1.0);  // max = 2 > 1
    CHECK(rep.bound[0] == 1.0);      // capped
    CHECK(rep.empirical[1] == 0.0);  // max = 2 < 3
    CHECK(rep.violations == 0);
}

TEST_CASE("doob max rejects negative sequences") {
    SequenceProcess neg;
    neg.name = "neg";
    neg.length = 2;
    neg.sample = [](std::uint64_t, std::vector<double>& v) {
        v = {1.0, -0.5};
    };
    CHECK_THROWS_AS(doob_max_check(neg, 1.0, {1.0}, 5), contract_error);
}

TEST_CASE("doob max on the block integrals") {
    const auto sched = desk();
    const double e0 = Ij_expectation(sched, 0);
    const auto seq = make_ij_sequence(sched, 0x53);
    const auto rep = doob_max_check(seq, e0, {2.0 * e0, 4.0 * e0}, 1500);
    CHECK(rep.violations == 0);
    // lambda = 4 E[I_0]: the maximal inequality gives 1/4
    const double stderr4 =
        std::sqrt(rep.empirical[1] * (1.0 - rep.empirical[1]) / 1500.0);
    CHECK(rep.empirical[1] <= 0.25 + 3.0 * stderr4);
}

TEST_CASE("doob L2 on one block") {
    const auto sched = desk();
    const auto rep = doob_L2_check(2, 3, sched, 3000, 0x54);
    CHECK(rep.holds);
    // parts <= y_3 = 4 covers every partition of 2, so the right side is 4
    CHECK(rep.rhs_exact == doctest::Approx(4.0).epsilon(1e-12));
    const auto rep5 = doob_L2_check(5, 4, sched, 3000, 0x55);
    CHECK(rep5.holds);
}

TEST_CASE("doob L2 at degree zero is the constant sum") {
    const auto sched = desk();
    const auto rep = doob_L2_check(0, 3, sched, 50, 0x58);
    CHECK(rep.max_sq.mean == doctest::Approx(1.0));  // empty partition only
    CHECK(rep.rhs_exact == doctest::Approx(4.0));
    CHECK(rep.holds);
}

TEST_CASE("chaos moment at q = 1 matches exp(H_R)") {
    const int R = 8;
    const auto est = chaos_moment_estimate_single(R, 1.0, 1.0, 20000, 20, 0x56);
    const double target = std::exp(harmonic_number(R));
    CHECK(std::abs(est.plain.mean - target) <= 0.05 * target);
    // the robust estimate trails the mean by the block-median skew offset
    CHECK(std::abs(est.median_of_means.mean - target) <= 0.10 * target);
}

TEST_CASE("chaos moment domain errors") {
    CHECK_THROWS_AS(chaos_moment_estimate_single(8, 0.4, 1.0, 200, 10, 1),
                    domain_error);
    CHECK_THROWS_AS(chaos_moment_estimate_single(8, 1.0, 2.0, 200, 10, 1),
                    domain_error);
    CHECK_THROWS_AS(chaos_moment_estimate_single(8, 1.0, 1.0, 50, 10, 1),
                    config_error);
}

TEST_CASE("chaos grid report shapes") {
    const auto rep = chaos_moment_estimate({8, 16}, 0.75, 1.0, 400, 10, 0x57);
    CHECK(rep.estimates.size() == 2);
    CHECK(rep.plain_estimates.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(rep.bound_shape[i] > 0.0);
        CHECK(rep.fitted[i] ==
              doctest::Approx(rep.estimates[i].mean / rep.bound_shape[i]));
    }
}

TEST_CASE("restricted-moment bound evaluators") {
    SUBCASE("parts at most y0") {
        const auto p = a0_bound_evaluator(3, 1);
        CHECK(p.exact == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(p.bound == doctest::Approx(std::exp(std::exp(1.0) - 3.0)).epsilon(1e-12));
        CHECK(p.holds);
        CHECK(a0_bound_evaluator(0, 3).holds);
        const auto far = a0_bound_evaluator(20, 3);
        CHECK(far.holds);
        // the optimized radius beats r = 1 + 1/n here
        const auto naive_r = a0_bound_evaluator(20, 3, 1.0 + 1.0 / 20.0);
        CHECK(far.bound < naive_r.bound);
    }
    SUBCASE("triple top parts") {
        const auto p = a3_bound_evaluator(9, 2);
        CHECK(p.exact == doctest::Approx(1.0 / 162.0).epsilon(1e-13));
        CHECK(p.bound == doctest::Approx(1.0 / 27.0).epsilon(1e-13));
        CHECK(p.holds);
        const auto empty = a3_bound_evaluator(8, 2);  // n < 3 (y0 + 1)
        CHECK(empty.exact == 0.0);
        CHECK(empty.bound == 0.0);
        const auto p12 = a3_bound_evaluator(12, 2);
        CHECK(p12.exact <= 1.0 / 27.0 + 1.0 / 64.0);
        CHECK(p12.holds);
    }
}
