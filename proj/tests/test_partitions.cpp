#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rmc/partitions.hpp"
#include "rmc/rng.hpp"

using namespace rmc;

namespace {

// Independent count oracle: Euler's pentagonal-number recurrence.
std::vector<long long> pentagonal_counts(int n_max) {
    std::vector<long long> p(static_cast<std::size_t>(n_max) + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        long long acc = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            const int g2 = k * (3 * k + 1) / 2;
            if (g1 > n) break;
            const long long sign = (k % 2) ? 1 : -1;
            acc += sign * p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) acc += sign * p[static_cast<std::size_t>(n - g2)];
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    return p;
}

}  // namespace

TEST_CASE("enumeration counts match the pentagonal recurrence") {
    const auto p = pentagonal_counts(60);
    CHECK(p[5] == 7);
    CHECK(p[60] == 966467);
    for (int n = 0; n <= 45; ++n)
        CHECK(count_partitions(n, PartitionConstraint::none()) ==
              p[static_cast<std::size_t>(n)]);
    CHECK(count_partitions(60, PartitionConstraint::none()) == p[60]);
}

TEST_CASE("partitions stream non-increasing and sum to n") {
    for_each_partition(9, PartitionConstraint::none(), [](const Partition& q) {
        CHECK(q.size() == 9);
        for (std::size_t i = 1; i < q.parts.size(); ++i)
            CHECK(q.parts[i - 1] >= q.parts[i]);
        CHECK(q.largest() * q.top_multiplicity() > 0);
    });
}

TEST_CASE("n = 0 yields exactly the empty partition") {
    int count = 0;
    for_each_partition(0, PartitionConstraint::none(), [&](const Partition& q) {
        ++count;
        CHECK(q.parts.empty());
        CHECK(q.largest() == 0);
        CHECK(q.top_multiplicity() == 0);
    });
    CHECK(count == 1);
    // constraints on the top part exclude it
    CHECK(count_partitions(0, PartitionConstraint::top_exceeds(1)) == 0);
    // pure max-part bounds admit it
    CHECK(count_partitions(0, PartitionConstraint::parts_at_most(3)) == 1);
}

TEST_CASE("top-part constraints single out (3,3,3)") {
    int count = 0;
    for_each_partition(
        9, PartitionConstraint::top_exceeds(2, TopMultiplicity::three_plus),
        [&](const Partition& q) {
            ++count;
            CHECK(q.parts == std::vector<int>{3, 3, 3});
        });
    CHECK(count == 1);
}

TEST_CASE("enumeration cap and constraint validation") {
    CHECK_THROWS_AS(count_partitions(61, PartitionConstraint::none()), size_error);
    PartitionConstraint bad;
    bad.max_part = 3;
    bad.min_top = 3;
    CHECK_THROWS_AS(bad.check(), config_error);
}

TEST_CASE("a(lambda) closed forms") {
    auto X = GaussianSequence::zeros(4);
    X.set(1, {0.7, -0.3});
    X.set(2, {1.1, 0.25});
    const std::complex<double> x1 = X.x(1), x2 = X.x(2);

    CHECK(a_coeff(Partition{}, X) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(a_coeff(Partition{{1, 1}}, X) - x1 * x1 / 2.0) < 1e-15);
    CHECK(std::abs(a_coeff(Partition{{2}}, X) - x2 / std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(a_coeff(Partition{{9}}, X), domain_error);
}

TEST_CASE("second moments of a(lambda)") {
    CHECK(a_second_moment(Partition{{1, 1}}) == doctest::Approx(0.5));
    CHECK(a_second_moment(Partition{{2}}) == doctest::Approx(0.5));
    CHECK(a_second_moment(Partition{{3, 3, 3}}) ==
          doctest::Approx(1.0 / 162.0).epsilon(1e-14));
}

TEST_CASE("second moments over a full size class sum to one") {
    for (int n = 0; n <= 30; ++n) {
        double sum = 0.0;
        for_each_partition(n, PartitionConstraint::none(),
                           [&](const Partition& q) { sum += a_second_moment(q); });
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("oracle coefficients at small degrees") {
    const auto X = sample_gaussians(4, 0xF1, 0);
    CHECK(A_oracle(0, X) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(A_oracle(1, X) - X.x(1)) < 1e-15);
    const std::complex<double> expect =
        X.x(1) * X.x(1) / 2.0 + X.x(2) / std::sqrt(2.0);
    CHECK(std::abs(A_oracle(2, X) - expect) < 1e-15);
}

TEST_CASE("decomposition by largest part") {
    const auto X = sample_gaussians(16, 0xD3C0, 1);

    SUBCASE("everything below the cutoff sits in the first piece") {
        for (int n = 1; n <= 4; ++n) {
            const auto d = decompose(n, X, 5);
            CHECK(std::abs(d.a0 - A_oracle(n, X)) < 1e-14);
            CHECK(std::abs(d.a1) == 0.0);
            CHECK(std::abs(d.a2) == 0.0);
            CHECK(std::abs(d.a3) == 0.0);
        }
    }
    SUBCASE("n = 3, y0 = 1 splits by hand") {
        const auto d = decompose(3, X, 1);
        const auto x1 = X.x(1), x2 = X.x(2), x3 = X.x(3);
        CHECK(std::abs(d.a0 - x1 * x1 * x1 / 6.0) < 1e-14);
        CHECK(std::abs(d.a1 - (x3 / std::sqrt(3.0) + x2 * x1 / std::sqrt(2.0))) <
              1e-14);
        CHECK(std::abs(d.a2) == 0.0);
        CHECK(std::abs(d.a3) == 0.0);
    }
    SUBCASE("n = 9, y0 = 2 leaves one triple-part partition") {
        const auto d = decompose(9, X, 2);
        const auto x3 = X.x(3);
        const std::complex<double> expect =
            x3 * x3 * x3 / (std::pow(3.0, 1.5) * 6.0);
        CHECK(std::abs(d.a3 - expect) < 1e-14);
    }
    SUBCASE("pieces sum to the oracle") {
        for (int n = 1; n <= 14; ++n)
            for (int y0 = 1; y0 <= 3; ++y0) {
                const auto d = decompose(n, X, y0);
                CHECK(std::abs(d.total() - A_oracle(n, X)) <= 1e-12);
            }
    }
    CHECK_THROWS_AS(decompose(4, X, 0), domain_error);
}

TEST_CASE("restricted sums") {
    const auto X = sample_gaussians(8, 0xE5, 2);
    const auto lt2 = PartitionConstraint::parts_less_than(2);
    CHECK(restricted_sum(-3, X, lt2) == std::complex<double>(0.0, 0.0));
    CHECK(restricted_sum(0, X, PartitionConstraint::parts_at_most(5)) ==
          std::complex<double>(1.0, 0.0));
    const auto x1 = X.x(1);
    CHECK(std::abs(restricted_sum(2, X, lt2) - x1 * x1 / 2.0) < 1e-15);
}

TEST_CASE("restricted second moments") {
    CHECK(restricted_second_moment(3, PartitionConstraint::parts_at_most(1)) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(restricted_second_moment(3, PartitionConstraint::parts_at_most(2)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const double a3 = restricted_second_moment(
        9, PartitionConstraint::top_exceeds(2, TopMultiplicity::three_plus));
    CHECK(a3 == doctest::Approx(1.0 / 162.0).epsilon(1e-14));
    CHECK(a3 <= 1.0 / 27.0);
}

TEST_CASE("generating-function route agrees with enumeration") {
    for (int n = 0; n <= 24; ++n)
        for (int y0 = 1; y0 <= n + 1; y0 += 3) {
            const double enumerated = restricted_second_moment(
                n, PartitionConstraint::parts_at_most(y0));
            const double gf = restricted_second_moment_gf(n, y0);
            CHECK(std::abs(enumerated - gf) <= 1e-12);
        }
    // beyond the enumeration cap only the gf route serves
    const double big = restricted_second_moment(
        200, PartitionConstraint::parts_at_most(3));
    CHECK(big > 0.0);
    CHECK(big < 1.0);
    CHECK_THROWS_AS(
        restricted_second_moment(
            200, PartitionConstraint::top_exceeds(2, TopMultiplicity::two)),
        domain_error);
}

TEST_CASE("generating-function bound dominates the restricted moment") {
    for (int y0 = 1; y0 <= 6; ++y0) {
        const double r = std::exp(1.0 / y0);
        double s = 0.0;
        for (int k = 1; k <= y0; ++k) s += std::pow(r, k) / k;
        const double budget = std::exp(s);
        for (int n = 0; n <= 40; ++n) {
            const double exact = restricted_second_moment_gf(n, y0);
            CHECK(exact <= std::pow(r, -n) * budget * (1.0 + 1e-12));
        }
    }
}
