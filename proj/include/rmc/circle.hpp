#pragma once

#include <complex>
#include <vector>

#include "rmc/rng.hpp"

namespace rmc {

// Samples of F_R(r e^{i theta_m}) = exp(sum_{k<=R} X(k)/sqrt(k) (r e^{i
// theta_m})^k) at the M-th roots of unity scaled by r.
struct CircleSamples {
    std::vector<std::complex<double>> values;  // value m at theta_m = 2 pi m / M
    double radius = 1.0;
    int R = 0;  // truncation length of the exponent polynomial

    int M() const { return static_cast<int>(values.size()); }
};

// Values of the exponent polynomial P(z) = sum_{k<=R} X(k)/sqrt(k) z^k at
// z_m = r e^{2 pi i m / M}, via one length-M transform. M must be a power of
// two.
std::vector<std::complex<double>> eval_exponent_on_circle(
    const GaussianSequence& X, int R, double r, int M);

// exp of the exponent values; throws if any sample overflows to non-finite.
CircleSamples eval_on_circle(const GaussianSequence& X, int R, double r, int M);

// Discretized Cauchy integral (1/M) sum_m samples[m] e^{-i n theta_m} r^{-n}.
// Valid only for n <= R (and R <= M/2 as alias guard).
std::complex<double> coeff_via_cauchy(const CircleSamples& samples, int n);

// All coefficients 0..n_max from one sample set, by a single transform.
std::vector<std::complex<double>> cauchy_coefficients(const CircleSamples& samples,
                                                      int n_max);

inline constexpr int kCauchyQuadratureCap = 1 << 22;

// Doubling driver: starts at M = max(2R, 1024) rounded up to a power of two
// and doubles until successive coefficient estimates agree within tol for
// every n <= n_max. Throws budget_error at the cap.
std::vector<std::complex<double>> cauchy_coefficients_adaptive(
    const GaussianSequence& X, int R, double r, int n_max, double tol = 1e-8,
    int M_cap = kCauchyQuadratureCap);

// Mean over the M sample points of |F_R(r e^{i theta})|^2 = exp(2 Re P);
// the arithmetic avoids the complex exponential.
double circle_abs2_mean(const GaussianSequence& X, int R, double r, int M);

// Quadrature estimate of (1/2pi) integral |F_R(r e^{i theta})|^2 d theta,
// doubling M until the relative change is below quad_tol.
double circle_abs2_mean_adaptive(const GaussianSequence& X, int R, double r,
                                 double quad_tol = 1e-6,
                                 int M_cap = kCauchyQuadratureCap);

}  // namespace rmc
