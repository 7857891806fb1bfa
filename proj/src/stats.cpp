#include "rmc/stats.hpp"

#include <algorithm>
#include <cmath>

namespace rmc {

double RunningStat::variance() const {
    if (n_ < 2) return 0.0;
    const double m = mean();
    const double ss = sumsq_.value() - static_cast<double>(n_) * m * m;
    return std::max(0.0, ss / static_cast<double>(n_ - 1));
}

MCEstimate RunningStat::estimate(std::uint64_t seed) const {
    MCEstimate e;
    e.count = n_;
    e.mean = mean();
    e.variance = variance();
    e.stderr_ = n_ ? std::sqrt(e.variance / static_cast<double>(n_)) : 0.0;
    e.ci_lo = e.mean - 1.959963984540054 * e.stderr_;
    e.ci_hi = e.mean + 1.959963984540054 * e.stderr_;
    e.seed = seed;
    return e;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double hw =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w{std::max(0.0, center - hw), std::min(1.0, center + hw)};
    if (successes == 0) w.lo = 0.0;
    if (successes == n) w.hi = 1.0;
    return w;
}

MCEstimate median_of_means(const std::vector<double>& samples, int blocks,
                           std::uint64_t seed) {
    if (samples.empty()) throw size_error("median_of_means: no samples");
    if (blocks < 1) throw config_error("median_of_means: blocks must be >= 1");
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    blocks = static_cast<int>(std::min<std::int64_t>(blocks, n));
    const std::int64_t per = n / blocks;

    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(blocks));
    std::size_t pos = 0;
    for (int b = 0; b < blocks; ++b) {
        const std::size_t take =
            (b == blocks - 1) ? samples.size() - pos : static_cast<std::size_t>(per);
        CompensatedSum s;
        for (std::size_t i = 0; i < take; ++i) s.add(samples[pos + i]);
        means.push_back(s.value() / static_cast<double>(take));
        pos += take;
    }

    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double med = (m % 2) ? sorted[m / 2]
                               : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    RunningStat spread;
    for (double v : means) spread.add(v);

    MCEstimate e;
    e.count = n;
    e.mean = med;
    e.variance = spread.variance();
    e.stderr_ = std::sqrt(spread.variance() / static_cast<double>(m));
    e.ci_lo = med - 1.959963984540054 * e.stderr_;
    e.ci_hi = med + 1.959963984540054 * e.stderr_;
    e.seed = seed;
    return e;
}

double quantile(std::vector<double> samples, double q) {
    if (samples.empty()) throw size_error("quantile: no samples");
    q = std::clamp(q, 0.0, 1.0);
    std::sort(samples.begin(), samples.end());
    const double idx = q * static_cast<double>(samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return samples[lo] * (1.0 - frac) + samples[hi] * frac;
}

}  // namespace rmc
