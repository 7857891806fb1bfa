#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rmc/errors.hpp"
#include "rmc/rng.hpp"

namespace rmc {

// Brute-force ground truth over integer partitions: the reference path every
// series computation is checked against.

inline constexpr int kPartitionEnumerationCap = 60;

// A partition lambda_1 >= lambda_2 >= ... of a non-negative integer.
struct Partition {
    std::vector<int> parts;  // non-increasing, all positive; empty for n = 0

    int size() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    // Largest part; 0 for the empty partition.
    int largest() const { return parts.empty() ? 0 : parts.front(); }
    // Multiplicity of the largest part; 0 for the empty partition.
    int top_multiplicity() const;
    std::map<int, int> multiplicities() const;
};

enum class TopMultiplicity { any, one, two, three_plus };

// Conjunction of the largest-part / top-multiplicity constraints used by the
// coefficient decomposition and the restricted sums.
struct PartitionConstraint {
    std::optional<int> max_part;   // bound on largest part
    bool max_part_strict = false;  // true: largest < max_part, false: <=
    std::optional<int> min_top;    // largest part must exceed this
    TopMultiplicity top_mult = TopMultiplicity::any;

    static PartitionConstraint none() { return {}; }
    static PartitionConstraint parts_at_most(int bound);
    static PartitionConstraint parts_less_than(int bound);
    static PartitionConstraint top_exceeds(int y0,
                                           TopMultiplicity m = TopMultiplicity::any);

    // Largest admissible part value (INT_MAX when unbounded).
    int inclusive_max() const;
    // The empty partition has largest part 0: it satisfies max-part bounds
    // vacuously but fails any min_top / top-multiplicity requirement.
    bool admits_empty() const {
        return !min_top.has_value() && top_mult == TopMultiplicity::any;
    }
    bool is_max_part_only() const {
        return !min_top.has_value() && top_mult == TopMultiplicity::any;
    }
    bool matches(const Partition& p) const;

    // Throws config_error when no largest part can satisfy the bounds.
    void check() const;
};

// Streams every partition of n satisfying c exactly once, in decreasing
// lexicographic order of parts. The Partition reference passed to the visitor
// is a scratch buffer, valid only during the call.
void for_each_partition(int n, const PartitionConstraint& c,
                        const std::function<void(const Partition&)>& visit);

std::int64_t count_partitions(int n, const PartitionConstraint& c);

// a(lambda) = prod_k (X(k)/sqrt(k))^{m_k} / m_k!; 1 for the empty partition.
std::complex<double> a_coeff(const Partition& p, const GaussianSequence& X);

// E|a(lambda)|^2 = prod_k 1 / (k^{m_k} m_k!).
double a_second_moment(const Partition& p);

// A(n) = sum over all partitions of n of a(lambda); the exact oracle.
std::complex<double> A_oracle(int n, const GaussianSequence& X);

// Split of A(n) by the largest part and its multiplicity:
//   a0: largest <= y0;   a1: largest > y0, multiplicity 1;
//   a2: multiplicity 2;  a3: multiplicity >= 3.
struct DecomposedCoefficient {
    std::complex<double> a0, a1, a2, a3;
    std::complex<double> total() const { return a0 + a1 + a2 + a3; }
};
DecomposedCoefficient decompose(int n, const GaussianSequence& X, int y0);

// Constrained sum of a(lambda) over |lambda| = m; zero for m < 0 by the
// convention a(lambda) = 0 for negative sizes.
std::complex<double> restricted_sum(int m, const GaussianSequence& X,
                                    const PartitionConstraint& c);

// Exact constrained second moment sum_{restricted} prod_k 1/(k^{m_k} m_k!).
// Max-part-only constraints use the generating-function route for n beyond
// the enumeration cap; anything else requires n within the cap.
double restricted_second_moment(int n, const PartitionConstraint& c);

// Generating-function route: [z^n] exp(sum_{k<=max_part} z^k / k).
double restricted_second_moment_gf(int n, int inclusive_max_part);

}  // namespace rmc
