#include "rmc/schedule.hpp"

#include <cmath>
#include <string>

namespace rmc {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kHarmonicLoopMax = 1e7;

double harmonic_loop(std::int64_t n) {
    double acc = 0.0, comp = 0.0;
    for (std::int64_t k = n; k >= 1; --k) {  // ascending magnitudes
        const double x = 1.0 / static_cast<double>(k);
        const double t = acc + x;
        comp += (std::abs(acc) >= x) ? (acc - t) + x : (x - t) + acc;
        acc = t;
    }
    return acc + comp;
}

double harmonic_asymptotic(double n) {
    const double inv = 1.0 / n;
    const double inv2 = inv * inv;
    return std::log(n) + kEulerGamma + 0.5 * inv -
           inv2 / 12.0 + inv2 * inv2 / 120.0;
}

// floor with a relative nudge so exact powers survive exp/log round trips.
double floor_nudged(double x) { return std::floor(x * (1.0 + 4e-15)); }

std::int64_t pow2_floor_int(double log2_x) {
    return static_cast<std::int64_t>(floor_nudged(std::exp2(log2_x)));
}

}  // namespace

double harmonic_number(double n) {
    if (n < 1.0) return 0.0;
    if (n <= kHarmonicLoopMax) return harmonic_loop(static_cast<std::int64_t>(n));
    // Beyond 2^53 the floor of the block boundary is not representable; the
    // correction it would make is O(1/n), far below double precision here.
    return harmonic_asymptotic(n);
}

double harmonic_range(double a, double b) {
    if (b <= a) return 0.0;
    if (b <= kHarmonicLoopMax) {
        const std::int64_t ia = a < 0.0 ? 0 : static_cast<std::int64_t>(a);
        const std::int64_t ib = static_cast<std::int64_t>(b);
        double acc = 0.0, comp = 0.0;
        for (std::int64_t k = ib; k > ia; --k) {
            const double x = 1.0 / static_cast<double>(k);
            const double t = acc + x;
            comp += (std::abs(acc) >= x) ? (acc - t) + x : (x - t) + acc;
            acc = t;
        }
        return acc + comp;
    }
    return harmonic_number(b) - harmonic_number(a);
}

std::int64_t BlockSchedule::X_prev() const {
    if (!integer_scale())
        throw budget_error("BlockSchedule: X_{ell-1} does not fit in 64 bits "
                           "(log2 = " + std::to_string(log2_X_prev_) + ")");
    return pow2_floor_int(log2_X_prev_);
}

std::int64_t BlockSchedule::X_ell() const {
    if (!integer_scale())
        throw budget_error("BlockSchedule: X_ell does not fit in 64 bits "
                           "(log2 = " + std::to_string(log2_X_ell_) + ")");
    return pow2_floor_int(log2_X_ell_);
}

std::int64_t BlockSchedule::y(int j) const {
    if (!floors_representable_)
        throw budget_error("BlockSchedule: y_j exceeds the integer range");
    return static_cast<std::int64_t>(y_floor_.at(static_cast<std::size_t>(j)));
}

double BlockSchedule::v_threshold(double scale) const {
    return scale * 2.0 * C0_ * T_ell_ * std::pow(ell_, K_ / 2.0);
}
double BlockSchedule::block_threshold(double scale) const {
    return scale * T1_ell_ * std::pow(ell_, K_ / 2.0);
}
double BlockSchedule::tilde_threshold(double scale) const {
    return scale * T_ell_ * std::pow(ell_, K_ / 2.0);
}
double BlockSchedule::s_threshold(double scale) const {
    return scale * std::sqrt(T1_ell_) / std::pow(ell_, K_ / 2.0);
}
double BlockSchedule::i0_threshold(double scale) const {
    return scale * std::pow(T1_ell_, 0.25) / std::pow(ell_, K_ / 2.0);
}

bool BlockSchedule::tilde_block_active(double n, int j) const {
    // n / y_j > ell^{100 K}, compared in log space to avoid overflow
    return std::log(n) - std::log(y_approx(j)) >
           100.0 * K_ * std::log(static_cast<double>(ell_));
}

BlockSchedule build_schedule(const ScheduleConfig& cfg) {
    if (cfg.ell < 2) throw config_error("build_schedule: ell must be >= 2");
    if (cfg.K < 1.0) throw config_error("build_schedule: K must be >= 1");
    if (!(cfg.epsilon > 0.0))
        throw config_error("build_schedule: epsilon must be > 0");

    BlockSchedule s;
    s.ell_ = cfg.ell;
    s.K_ = cfg.K;
    s.epsilon_ = cfg.epsilon;
    s.C0_ = cfg.C0 > 0.0 ? cfg.C0 : 1.0 + 100.0 * cfg.K;

    const double ell = static_cast<double>(cfg.ell);
    s.log2_X_ell_ = std::pow(ell, cfg.K);
    s.log2_X_prev_ = std::pow(ell - 1.0, cfg.K);
    if (!(s.log2_X_ell_ <= cfg.max_log2))
        throw budget_error("build_schedule: log2(X_ell) = " +
                           std::to_string(s.log2_X_ell_) +
                           " exceeds the budget of " +
                           std::to_string(cfg.max_log2));

    // ln y~_j = ln X_ell - K ell^{K-1} ln 2 + j / ell; the ratio
    // y~_j / y~_{j-1} = e^{1/ell} is exact by construction.
    const double ln_X_ell = s.log2_X_ell_ * M_LN2;
    const double ln_y0 = ln_X_ell - cfg.K * std::pow(ell, cfg.K - 1.0) * M_LN2;
    if (ln_y0 < -1e-12)
        throw config_error("build_schedule: y_0 < 1 at this (ell, K); "
                           "pick parameters with ell^K >= K ell^{K-1}");

    // Minimality scan for J: floor(y~_J) >= X_ell iff y~_J >= X_ell.
    const int scan_cap =
        static_cast<int>(std::ceil(cfg.K * s.log2_X_ell_ * M_LN2)) + 8;
    int J = -1;
    for (int j = 0; j <= scan_cap; ++j) {
        if (ln_y0 + static_cast<double>(j) / ell >= ln_X_ell - 1e-12) {
            J = j;
            break;
        }
    }
    if (J < 0)
        throw contract_error("build_schedule: minimality scan failed to find J");
    const int J_bound = static_cast<int>(
        std::ceil(cfg.K * s.log2_X_ell_ * M_LN2 - 1e-9));
    if (J > J_bound)
        throw contract_error("build_schedule: J = " + std::to_string(J) +
                             " exceeds the ceiling bound " +
                             std::to_string(J_bound));

    s.ln_y_tilde_.resize(static_cast<std::size_t>(J) + 1);
    s.y_tilde_.resize(static_cast<std::size_t>(J) + 1);
    s.y_floor_.resize(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        const double ln_y = ln_y0 + static_cast<double>(j) / ell;
        s.ln_y_tilde_[static_cast<std::size_t>(j)] = ln_y;
        const double yt = std::exp(ln_y);
        s.y_tilde_[static_cast<std::size_t>(j)] = yt;
        s.y_floor_[static_cast<std::size_t>(j)] = floor_nudged(yt);
    }
    s.floors_representable_ =
        std::isfinite(s.y_floor_.back()) && s.y_floor_.back() < 9.0e18;

    s.T_ell_ = std::pow(ell, 10.0);
    s.T1_ell_ = s.T_ell_ / (ell * std::log(ell));
    return s;
}

double b_factor(const BlockSchedule& sched, int j) {
    if (j < 1 || j > sched.J())
        throw domain_error("b_factor: need 1 <= j <= J");
    const double ell = static_cast<double>(sched.ell());
    const double block_harmonic =
        harmonic_range(sched.y_approx(j - 1), sched.y_approx(j));
    const double exponent =
        -1.0 / ell - 1.0 / std::pow(ell, sched.K() + 1.0) + block_harmonic;
    return std::exp(exponent);
}

}  // namespace rmc
