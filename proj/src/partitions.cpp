#include "rmc/partitions.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "rmc/series.hpp"

namespace rmc {

int Partition::top_multiplicity() const {
    if (parts.empty()) return 0;
    int c = 0;
    for (int p : parts) {
        if (p != parts.front()) break;
        ++c;
    }
    return c;
}

std::map<int, int> Partition::multiplicities() const {
    std::map<int, int> m;
    for (int p : parts) ++m[p];
    return m;
}

PartitionConstraint PartitionConstraint::parts_at_most(int bound) {
    PartitionConstraint c;
    c.max_part = bound;
    c.max_part_strict = false;
    c.check();
    return c;
}

PartitionConstraint PartitionConstraint::parts_less_than(int bound) {
    PartitionConstraint c;
    c.max_part = bound;
    c.max_part_strict = true;
    c.check();
    return c;
}

PartitionConstraint PartitionConstraint::top_exceeds(int y0, TopMultiplicity m) {
    PartitionConstraint c;
    c.min_top = y0;
    c.top_mult = m;
    c.check();
    return c;
}

int PartitionConstraint::inclusive_max() const {
    if (!max_part.has_value()) return INT_MAX;
    return max_part_strict ? *max_part - 1 : *max_part;
}

bool PartitionConstraint::matches(const Partition& p) const {
    const int top = p.largest();
    if (top == 0) return admits_empty();
    if (top > inclusive_max()) return false;
    if (min_top.has_value() && top <= *min_top) return false;
    switch (top_mult) {
        case TopMultiplicity::any: return true;
        case TopMultiplicity::one: return p.top_multiplicity() == 1;
        case TopMultiplicity::two: return p.top_multiplicity() == 2;
        case TopMultiplicity::three_plus: return p.top_multiplicity() >= 3;
    }
    return false;
}

void PartitionConstraint::check() const {
    if (min_top.has_value() && *min_top >= inclusive_max())
        throw config_error(
            "PartitionConstraint: min_top and max_part leave no admissible "
            "largest part");
}

namespace {

// Enumerate partitions of `rem` with parts <= maxp appended to scratch.
void gen_tail(int rem, int maxp, Partition& scratch,
              const std::function<void(const Partition&)>& visit) {
    if (rem == 0) {
        visit(scratch);
        return;
    }
    for (int u = std::min(rem, maxp); u >= 1; --u) {
        scratch.parts.push_back(u);
        gen_tail(rem - u, u, scratch, visit);
        scratch.parts.pop_back();
    }
}

bool top_mult_ok(TopMultiplicity t, int count) {
    switch (t) {
        case TopMultiplicity::any: return true;
        case TopMultiplicity::one: return count == 1;
        case TopMultiplicity::two: return count == 2;
        case TopMultiplicity::three_plus: return count >= 3;
    }
    return false;
}

}  // namespace

void for_each_partition(int n, const PartitionConstraint& c,
                        const std::function<void(const Partition&)>& visit) {
    if (n < 0) throw domain_error("for_each_partition: n must be >= 0");
    if (n > kPartitionEnumerationCap)
        throw size_error("for_each_partition: n = " + std::to_string(n) +
                         " exceeds the enumeration cap of " +
                         std::to_string(kPartitionEnumerationCap));
    c.check();

    Partition scratch;
    if (n == 0) {
        if (c.admits_empty()) visit(scratch);
        return;
    }

    const int top_hi = std::min(n, c.inclusive_max());
    const int top_lo = c.min_top.has_value() ? *c.min_top + 1 : 1;
    // Choose the largest part v and its multiplicity, then fill with parts
    // strictly below v; this keeps the top multiplicity explicit.
    for (int v = top_hi; v >= top_lo; --v) {
        for (int cnt = 1; cnt * v <= n; ++cnt) {
            if (!top_mult_ok(c.top_mult, cnt)) continue;
            scratch.parts.assign(static_cast<std::size_t>(cnt), v);
            gen_tail(n - cnt * v, v - 1, scratch, visit);
        }
    }
}

std::int64_t count_partitions(int n, const PartitionConstraint& c) {
    std::int64_t count = 0;
    for_each_partition(n, c, [&](const Partition&) { ++count; });
    return count;
}

std::complex<double> a_coeff(const Partition& p, const GaussianSequence& X) {
    if (p.largest() > X.length())
        throw domain_error("a_coeff: partition has a part beyond the sampled "
                           "Gaussian length");
    std::complex<double> prod{1.0, 0.0};
    int run_value = 0, run_count = 0;
    auto flush = [&]() {
        if (run_value == 0) return;
        const std::complex<double> base =
            X.x(run_value) / std::sqrt(static_cast<double>(run_value));
        for (int i = 1; i <= run_count; ++i)
            prod *= base / static_cast<double>(i);
    };
    for (int part : p.parts) {
        if (part == run_value) {
            ++run_count;
        } else {
            flush();
            run_value = part;
            run_count = 1;
        }
    }
    flush();
    return prod;
}

double a_second_moment(const Partition& p) {
    double prod = 1.0;
    int run_value = 0, run_count = 0;
    auto flush = [&]() {
        if (run_value == 0) return;
        for (int i = 1; i <= run_count; ++i)
            prod /= static_cast<double>(run_value) * static_cast<double>(i);
    };
    for (int part : p.parts) {
        if (part == run_value) {
            ++run_count;
        } else {
            flush();
            run_value = part;
            run_count = 1;
        }
    }
    flush();
    return prod;
}

std::complex<double> A_oracle(int n, const GaussianSequence& X) {
    std::complex<double> sum{0.0, 0.0};
    for_each_partition(n, PartitionConstraint::none(),
                       [&](const Partition& p) { sum += a_coeff(p, X); });
    return sum;
}

DecomposedCoefficient decompose(int n, const GaussianSequence& X, int y0) {
    if (y0 < 1) throw domain_error("decompose: y0 must be >= 1");
    DecomposedCoefficient d{};
    for_each_partition(n, PartitionConstraint::none(), [&](const Partition& p) {
        const std::complex<double> a = a_coeff(p, X);
        if (p.largest() <= y0) {
            d.a0 += a;
        } else {
            switch (p.top_multiplicity()) {
                case 1: d.a1 += a; break;
                case 2: d.a2 += a; break;
                default: d.a3 += a; break;
            }
        }
    });
    return d;
}

std::complex<double> restricted_sum(int m, const GaussianSequence& X,
                                    const PartitionConstraint& c) {
    if (m < 0) return {0.0, 0.0};
    std::complex<double> sum{0.0, 0.0};
    for_each_partition(m, c,
                       [&](const Partition& p) { sum += a_coeff(p, X); });
    return sum;
}

double restricted_second_moment_gf(int n, int inclusive_max_part) {
    if (n < 0) throw domain_error("restricted_second_moment_gf: n must be >= 0");
    if (inclusive_max_part < 0)
        throw domain_error("restricted_second_moment_gf: negative part bound");
    const int top = std::min(n, inclusive_max_part);
    std::vector<double> c(static_cast<std::size_t>(top) + 1, 0.0);
    for (int k = 1; k <= top; ++k)
        c[static_cast<std::size_t>(k)] = 1.0 / static_cast<double>(k);
    return exp_series_real(c, n)[static_cast<std::size_t>(n)];
}

double restricted_second_moment(int n, const PartitionConstraint& c) {
    if (n < 0) return 0.0;
    if (c.is_max_part_only() && n > kPartitionEnumerationCap)
        return restricted_second_moment_gf(n, c.inclusive_max());
    if (n > kPartitionEnumerationCap)
        throw domain_error(
            "restricted_second_moment: constraint requires enumeration but n "
            "exceeds the cap");
    double sum = 0.0;
    for_each_partition(n, c,
                       [&](const Partition& p) { sum += a_second_moment(p); });
    return sum;
}

}  // namespace rmc
