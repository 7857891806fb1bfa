#pragma once

#include <complex>
#include <vector>

#include "rmc/errors.hpp"
#include "rmc/rng.hpp"

namespace rmc {

// Tag describing which exponential a coefficient array came from.
struct SeriesKind {
    enum class Tag { full, truncated, restricted };
    Tag tag = Tag::full;
    int param = 0;  // truncation length R, or max admitted part

    static SeriesKind full() { return {Tag::full, 0}; }
    static SeriesKind truncated(int R) { return {Tag::truncated, R}; }
    static SeriesKind restricted(int max_part) {
        return {Tag::restricted, max_part};
    }
};

// Coefficients A(0..N) of exp(sum_k c_k z^k) with c_0 = 0, so A(0) = 1.
struct CoefficientSeries {
    std::vector<std::complex<double>> coeffs;  // coeffs[n] = A(n)
    SeriesKind kind;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::complex<double> at(int n) const {
        return coeffs.at(static_cast<std::size_t>(n));
    }
};

// exp of a power series by the log-derivative recurrence
//   n A(n) = sum_{1<=k<=min(n,R)} k c_k A(n-k),  A(0) = 1,
// O(N min(N, R)) arithmetic. `c` holds c_0..c_R with c_0 = 0 required.
CoefficientSeries exp_series_naive(const std::vector<std::complex<double>>& c,
                                   int N);
CoefficientSeries exp_series_naive(const GaussianSequence& X, int N);

// Same output contract as exp_series_naive, computed by divide-and-conquer
// convolution of the recurrence (O(N log^2 N)).
CoefficientSeries exp_series_fast(const std::vector<std::complex<double>>& c,
                                  int N);
CoefficientSeries exp_series_fast(const GaussianSequence& X, int N);

// Real non-negative variant used by the generating-function moment paths.
// Rejects negative input coefficients.
std::vector<double> exp_series_real(const std::vector<double>& c, int N);

// Coefficients of exp(sum_{k<=max_part} c_k z^k): the series restricted to
// parts at most max_part.
CoefficientSeries restricted_exp_series(const GaussianSequence& X, int N,
                                        int max_part);

// Incremental family E_beta(z) = exp(sum_{k<=beta} c_k z^k) truncated at
// degree N. advance() multiplies in the next part's factor exp(c_{beta+1}
// z^{beta+1}) in O(N^2/beta) per step, so sweeping beta = 0..N costs
// O(N^2 log N) total. coeff(m) at state beta is the sum of a(lambda) over
// partitions of m with all parts <= beta.
class TruncatedExpSweep {
public:
    TruncatedExpSweep(const GaussianSequence& X, int N);
    TruncatedExpSweep(std::vector<std::complex<double>> c, int N);

    int beta() const { return beta_; }
    int degree() const { return N_; }

    // Advance to beta+1. No-op on coefficients once beta >= N.
    void advance();

    // Advance until beta() == target (target >= current beta).
    void advance_to(int target);

    std::complex<double> coeff(int m) const {
        if (m < 0) return {0.0, 0.0};  // convention: a(lambda) = 0 for |lambda| < 0
        if (m > N_) throw domain_error("TruncatedExpSweep: degree out of range");
        return e_[static_cast<std::size_t>(m)];
    }

    const std::vector<std::complex<double>>& coeffs() const { return e_; }

private:
    std::vector<std::complex<double>> c_;  // exponent coefficients, c_[k]
    std::vector<std::complex<double>> e_;  // current E_beta
    int N_ = 0;
    int beta_ = 0;
};

}  // namespace rmc
