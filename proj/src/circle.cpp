#include "rmc/circle.hpp"

#include <cmath>

#include "rmc/errors.hpp"
#include "rmc/fft.hpp"

namespace rmc {

std::vector<std::complex<double>> eval_exponent_on_circle(
    const GaussianSequence& X, int R, double r, int M) {
    if (R < 1 || R > X.length())
        throw domain_error("eval_exponent_on_circle: need 1 <= R <= length of X");
    if (!(r > 0.0)) throw domain_error("eval_exponent_on_circle: radius must be > 0");
    if (M < 2 || !is_pow2(static_cast<std::size_t>(M)))
        throw domain_error("eval_exponent_on_circle: M must be a power of two >= 2");
    if (M <= R)
        throw domain_error("eval_exponent_on_circle: M must exceed R");

    // P(z_m) = sum_k (c_k r^k) e^{+2 pi i k m / M}: unscaled inverse transform.
    std::vector<cdouble> d(static_cast<std::size_t>(M), cdouble{0.0, 0.0});
    double rk = 1.0;
    for (int k = 1; k <= R; ++k) {
        rk *= r;
        d[static_cast<std::size_t>(k)] = X.coeff(k) * rk;
    }
    fft_inplace(d, true);
    return d;
}

CircleSamples eval_on_circle(const GaussianSequence& X, int R, double r, int M) {
    auto p = eval_exponent_on_circle(X, R, r, M);
    for (std::size_t m = 0; m < p.size(); ++m) {
        p[m] = std::exp(p[m]);
        if (!std::isfinite(p[m].real()) || !std::isfinite(p[m].imag()))
            throw contract_error(
                "eval_on_circle: sample " + std::to_string(m) +
                " overflowed to a non-finite value (exponent too large)");
    }
    return CircleSamples{std::move(p), r, R};
}

std::complex<double> coeff_via_cauchy(const CircleSamples& samples, int n) {
    const int M = samples.M();
    if (n < 0 || n > samples.R)
        throw domain_error("coeff_via_cauchy: need 0 <= n <= R");
    if (samples.R > M / 2)
        throw domain_error("coeff_via_cauchy: alias guard requires R <= M/2");
    cdouble s{0.0, 0.0};
    for (int m = 0; m < M; ++m) {
        const double theta = -2.0 * M_PI * static_cast<double>(n) *
                             static_cast<double>(m) / static_cast<double>(M);
        s += samples.values[static_cast<std::size_t>(m)] * std::polar(1.0, theta);
    }
    return s / static_cast<double>(M) * std::pow(samples.radius, -n);
}

std::vector<std::complex<double>> cauchy_coefficients(const CircleSamples& samples,
                                                      int n_max) {
    const int M = samples.M();
    if (n_max < 0 || n_max > samples.R)
        throw domain_error("cauchy_coefficients: need 0 <= n_max <= R");
    if (samples.R > M / 2)
        throw domain_error("cauchy_coefficients: alias guard requires R <= M/2");
    std::vector<cdouble> v = samples.values;
    fft_inplace(v, false);  // entry n = sum_m v[m] e^{-2 pi i n m / M}
    std::vector<cdouble> out(static_cast<std::size_t>(n_max) + 1);
    double rinv = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        out[static_cast<std::size_t>(n)] =
            v[static_cast<std::size_t>(n)] / static_cast<double>(M) * rinv;
        rinv /= samples.radius;
    }
    return out;
}

std::vector<std::complex<double>> cauchy_coefficients_adaptive(
    const GaussianSequence& X, int R, double r, int n_max, double tol,
    int M_cap) {
    if (n_max > R)
        throw domain_error("cauchy_coefficients_adaptive: need n_max <= R");
    int M = static_cast<int>(next_pow2(
        static_cast<std::size_t>(std::max(2 * R, 1024))));
    auto prev = cauchy_coefficients(eval_on_circle(X, R, r, M), n_max);
    while (2 * M <= M_cap) {
        M *= 2;
        auto cur = cauchy_coefficients(eval_on_circle(X, R, r, M), n_max);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i)
            max_diff = std::max(max_diff, std::abs(cur[i] - prev[i]));
        prev = std::move(cur);
        if (max_diff < tol) return prev;
    }
    throw budget_error(
        "cauchy_coefficients_adaptive: quadrature did not stabilize below M = " +
        std::to_string(M_cap));
}

double circle_abs2_mean(const GaussianSequence& X, int R, double r, int M) {
    const auto p = eval_exponent_on_circle(X, R, r, M);
    double acc = 0.0, comp = 0.0;
    for (const auto& v : p) {
        const double w = std::exp(2.0 * v.real());
        if (!std::isfinite(w))
            throw contract_error("circle_abs2_mean: |F|^2 overflowed at a sample");
        const double t = acc + w;
        comp += (std::abs(acc) >= w) ? (acc - t) + w : (w - t) + acc;
        acc = t;
    }
    return (acc + comp) / static_cast<double>(M);
}

double circle_abs2_mean_adaptive(const GaussianSequence& X, int R, double r,
                                 double quad_tol, int M_cap) {
    int M = static_cast<int>(next_pow2(
        static_cast<std::size_t>(std::max(2 * R, 1024))));
    double prev = circle_abs2_mean(X, R, r, M);
    while (2 * M <= M_cap) {
        M *= 2;
        const double cur = circle_abs2_mean(X, R, r, M);
        const double rel = std::abs(cur - prev) / std::max(1e-300, std::abs(cur));
        prev = cur;
        if (rel < quad_tol) return cur;
    }
    throw budget_error(
        "circle_abs2_mean_adaptive: quadrature did not stabilize below M = " +
        std::to_string(M_cap));
}

}  // namespace rmc
