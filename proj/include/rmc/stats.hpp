#pragma once

#include <cstdint>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc {

// Neumaier-compensated accumulator. Splitting a run into halves and merging
// reproduces the single-pass sum to ~1 ulp, which backs the campaign
// determinism invariants.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& o) {
        add(o.sum_);
        comp_ += o.comp_;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Monte Carlo estimate with provenance.
struct MCEstimate {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;   // sample variance (n-1 denominator)
    double stderr_ = 0.0;    // sqrt(variance / count)
    double ci_lo = 0.0;      // mean -/+ 1.96 stderr
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
};

// Streaming mean/variance with compensated sums.
class RunningStat {
public:
    void add(double x) {
        sum_.add(x);
        sumsq_.add(x * x);
        ++n_;
    }
    void merge(const RunningStat& o) {
        sum_.merge(o.sum_);
        sumsq_.merge(o.sumsq_);
        n_ += o.n_;
    }
    std::int64_t count() const { return n_; }
    double mean() const { return n_ ? sum_.value() / static_cast<double>(n_) : 0.0; }
    double variance() const;
    MCEstimate estimate(std::uint64_t seed = 0) const;

private:
    CompensatedSum sum_;
    CompensatedSum sumsq_;
    std::int64_t n_ = 0;
};

// Wilson 95% score interval for a binomial frequency.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n,
                               double z = 1.959963984540054);

// Median-of-means over `blocks` equal blocks (trailing remainder folded into
// the last block). The reported stderr is the spread of the block means.
MCEstimate median_of_means(const std::vector<double>& samples, int blocks,
                           std::uint64_t seed = 0);

// Empirical quantile (linear interpolation); sorts a copy.
double quantile(std::vector<double> samples, double q);

}  // namespace rmc
