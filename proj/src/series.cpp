#include "rmc/series.hpp"

#include <algorithm>
#include <cmath>

#include "rmc/fft.hpp"

namespace rmc {

namespace {

void check_exponent(const std::vector<std::complex<double>>& c) {
    if (c.empty() || c[0] != std::complex<double>(0.0, 0.0))
        throw domain_error("exp_series: exponent must have zero constant term");
}

SeriesKind kind_for(int N, int R) {
    return (R >= N) ? SeriesKind::full() : SeriesKind::truncated(R);
}

// k c_k for k = 0..min(N, R); the recurrence driver.
std::vector<std::complex<double>> derivative_weights(
    const std::vector<std::complex<double>>& c, int N) {
    const int R = static_cast<int>(c.size()) - 1;
    const int top = std::min(N, R);
    std::vector<std::complex<double>> g(static_cast<std::size_t>(top) + 1);
    for (int k = 1; k <= top; ++k)
        g[static_cast<std::size_t>(k)] = static_cast<double>(k) *
                                         c[static_cast<std::size_t>(k)];
    return g;
}

}  // namespace

CoefficientSeries exp_series_naive(const std::vector<std::complex<double>>& c,
                                   int N) {
    if (N < 0) throw domain_error("exp_series_naive: N must be >= 0");
    check_exponent(c);
    const int R = static_cast<int>(c.size()) - 1;
    const auto g = derivative_weights(c, N);
    const int top = static_cast<int>(g.size()) - 1;

    std::vector<std::complex<double>> a(static_cast<std::size_t>(N) + 1);
    a[0] = {1.0, 0.0};
    for (int n = 1; n <= N; ++n) {
        std::complex<double> s{0.0, 0.0};
        const int kmax = std::min(n, top);
        for (int k = 1; k <= kmax; ++k)
            s += g[static_cast<std::size_t>(k)] *
                 a[static_cast<std::size_t>(n - k)];
        a[static_cast<std::size_t>(n)] = s / static_cast<double>(n);
    }
    return {std::move(a), kind_for(N, R)};
}

CoefficientSeries exp_series_naive(const GaussianSequence& X, int N) {
    return exp_series_naive(X.coeff_array(std::min(N, X.length())), N);
}

namespace {

// CDQ divide and conquer on the recurrence: solve(lo, hi) finalizes
// A[lo..hi) given that acc[n] already holds all contributions g[k] A[n-k]
// with n-k < lo.
class ExpSolver {
public:
    ExpSolver(const std::vector<std::complex<double>>& g, int N)
        : g_(g), a_(static_cast<std::size_t>(N) + 1),
          acc_(static_cast<std::size_t>(N) + 1) {}

    std::vector<std::complex<double>> run(int N) {
        a_[0] = {1.0, 0.0};
        solve(0, N + 1);
        return std::move(a_);
    }

private:
    static constexpr int kBase = 32;

    void solve(int lo, int hi) {
        if (hi - lo <= kBase) {
            const int top = static_cast<int>(g_.size()) - 1;
            for (int n = lo; n < hi; ++n) {
                if (n == 0) continue;
                std::complex<double> s = acc_[static_cast<std::size_t>(n)];
                const int kmax = std::min(n - lo, top);
                for (int k = 1; k <= kmax; ++k)
                    s += g_[static_cast<std::size_t>(k)] *
                         a_[static_cast<std::size_t>(n - k)];
                a_[static_cast<std::size_t>(n)] = s / static_cast<double>(n);
            }
            return;
        }
        const int mid = lo + (hi - lo) / 2;
        solve(lo, mid);
        // fold A[lo..mid) into acc[mid..hi)
        const int span = hi - lo;
        const int gtop = static_cast<int>(g_.size()) - 1;
        std::vector<std::complex<double>> left(
            a_.begin() + lo, a_.begin() + mid);
        std::vector<std::complex<double>> gpart(
            g_.begin(), g_.begin() + std::min(span, gtop + 1));
        const auto conv = convolve_truncated(left, gpart,
                                             static_cast<std::size_t>(span));
        for (int n = mid; n < hi; ++n) {
            const std::size_t idx = static_cast<std::size_t>(n - lo);
            if (idx < conv.size()) acc_[static_cast<std::size_t>(n)] += conv[idx];
        }
        solve(mid, hi);
    }

    const std::vector<std::complex<double>>& g_;
    std::vector<std::complex<double>> a_;
    std::vector<std::complex<double>> acc_;
};

}  // namespace

CoefficientSeries exp_series_fast(const std::vector<std::complex<double>>& c,
                                  int N) {
    if (N < 0) throw domain_error("exp_series_fast: N must be >= 0");
    check_exponent(c);
    const int R = static_cast<int>(c.size()) - 1;
    const auto g = derivative_weights(c, N);
    ExpSolver solver(g, N);
    return {solver.run(N), kind_for(N, R)};
}

CoefficientSeries exp_series_fast(const GaussianSequence& X, int N) {
    return exp_series_fast(X.coeff_array(std::min(N, X.length())), N);
}

std::vector<double> exp_series_real(const std::vector<double>& c, int N) {
    if (N < 0) throw domain_error("exp_series_real: N must be >= 0");
    if (!c.empty() && c[0] != 0.0)
        throw domain_error("exp_series_real: exponent must have zero constant term");
    for (double v : c)
        if (v < 0.0)
            throw domain_error("exp_series_real: negative input coefficient");

    const int R = static_cast<int>(c.size()) - 1;
    std::vector<double> a(static_cast<std::size_t>(N) + 1, 0.0);
    a[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
        double s = 0.0;
        const int kmax = std::min(n, R);
        for (int k = 1; k <= kmax; ++k)
            s += static_cast<double>(k) * c[static_cast<std::size_t>(k)] *
                 a[static_cast<std::size_t>(n - k)];
        a[static_cast<std::size_t>(n)] = s / static_cast<double>(n);
    }
    return a;
}

CoefficientSeries restricted_exp_series(const GaussianSequence& X, int N,
                                        int max_part) {
    if (max_part < 0)
        throw domain_error("restricted_exp_series: max_part must be >= 0");
    std::vector<std::complex<double>> c(
        static_cast<std::size_t>(std::min({N, max_part, X.length()})) + 1);
    for (int k = 1; k < static_cast<int>(c.size()); ++k)
        c[static_cast<std::size_t>(k)] = X.coeff(k);
    auto s = exp_series_naive(c, N);
    s.kind = SeriesKind::restricted(max_part);
    return s;
}

TruncatedExpSweep::TruncatedExpSweep(const GaussianSequence& X, int N)
    : TruncatedExpSweep(X.coeff_array(std::min(N, X.length())), N) {}

TruncatedExpSweep::TruncatedExpSweep(std::vector<std::complex<double>> c, int N)
    : c_(std::move(c)), e_(static_cast<std::size_t>(N) + 1), N_(N) {
    if (N < 0) throw domain_error("TruncatedExpSweep: N must be >= 0");
    if (!c_.empty() && c_[0] != std::complex<double>(0.0, 0.0))
        throw domain_error("TruncatedExpSweep: exponent must have zero constant term");
    e_[0] = {1.0, 0.0};  // E_0 = exp(0) = 1
}

void TruncatedExpSweep::advance() {
    const int part = beta_ + 1;
    beta_ = part;
    if (part > N_) return;  // parts beyond the degree never contribute
    const std::complex<double> ck =
        (part < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(part)]
                                             : std::complex<double>(0.0, 0.0);
    if (ck == std::complex<double>(0.0, 0.0)) return;

    // E <- E * exp(ck z^part), descending so lower-index reads are still old.
    for (int m = N_; m >= part; --m) {
        std::complex<double> add{0.0, 0.0};
        std::complex<double> term{1.0, 0.0};
        for (int t = 1; m - part * t >= 0; ++t) {
            term *= ck / static_cast<double>(t);
            add += term * e_[static_cast<std::size_t>(m - part * t)];
        }
        e_[static_cast<std::size_t>(m)] += add;
    }
}

void TruncatedExpSweep::advance_to(int target) {
    if (target < beta_)
        throw domain_error("TruncatedExpSweep: cannot rewind");
    while (beta_ < target) advance();
}

}  // namespace rmc
