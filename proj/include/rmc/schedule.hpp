#pragma once

#include <cstdint>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc {

// Harmonic number H(n) = sum_{k<=n} 1/k; exact loop for small n, asymptotic
// expansion beyond (error < 1e-20 once the expansion is used).
double harmonic_number(double n);

// sum_{a < k <= b} 1/k for integer endpoints given as doubles (floors of the
// block boundaries; beyond 2^53 the floor correction is below double
// precision and the logarithmic form is used).
double harmonic_range(double a, double b);

// Deterministic scale parameters of one dyadic block:
//   X_ell = 2^{ell^K}, geometric grid y~_j = X_ell e^{j/ell} / 2^{K ell^{K-1}},
//   y_j = floor(y~_j), J minimal with y_J >= X_ell, T(ell) = ell^10.
struct ScheduleConfig {
    int ell = 2;
    double K = 2.0;
    double epsilon = 0.25;
    double C0 = 0.0;          // 0 -> default 1 + 100 K
    double max_log2 = 500.0;  // budget on log2(X_ell)
};

class BlockSchedule {
public:
    int ell() const { return ell_; }
    double K() const { return K_; }
    double epsilon() const { return epsilon_; }
    double C0() const { return C0_; }
    int J() const { return static_cast<int>(ln_y_tilde_.size()) - 1; }

    double log2_X_prev() const { return log2_X_prev_; }
    double log2_X_ell() const { return log2_X_ell_; }

    // Integer block endpoints; only available when 2^{ell^K} fits in int64.
    std::int64_t X_prev() const;
    std::int64_t X_ell() const;
    bool integer_scale() const { return log2_X_ell_ <= 62.0; }

    double ln_y_tilde(int j) const { return ln_y_tilde_.at(static_cast<std::size_t>(j)); }
    double y_tilde(int j) const { return y_tilde_.at(static_cast<std::size_t>(j)); }
    // floor(y~_j) as a double (exact below 2^53).
    double y_approx(int j) const { return y_floor_.at(static_cast<std::size_t>(j)); }
    // floor(y~_j) as an integer; throws budget_error when not representable.
    std::int64_t y(int j) const;
    bool floors_representable() const { return floors_representable_; }

    double T_ell() const { return T_ell_; }    // ell^10
    double T1_ell() const { return T1_ell_; }  // T(ell) / (ell log ell)

    // Event thresholds (scaled by `scale`, default 1).
    double v_threshold(double scale = 1.0) const;      // 2 C0 T(ell) ell^{K/2}
    double block_threshold(double scale = 1.0) const;  // T1(ell) ell^{K/2}
    double tilde_threshold(double scale = 1.0) const;  // T(ell) ell^{K/2}
    double s_threshold(double scale = 1.0) const;      // sqrt(T1) / ell^{K/2}
    double i0_threshold(double scale = 1.0) const;     // T1^{1/4} / ell^{K/2}

    // Blocks with n / y_j > ell^{100 K} feed the tilde-diagnostics; compared
    // in log space to avoid overflow.
    bool tilde_block_active(double n, int j) const;

    friend BlockSchedule build_schedule(const ScheduleConfig& cfg);

private:
    int ell_ = 0;
    double K_ = 0.0, epsilon_ = 0.0, C0_ = 0.0;
    double log2_X_prev_ = 0.0, log2_X_ell_ = 0.0;
    std::vector<double> ln_y_tilde_, y_tilde_, y_floor_;
    bool floors_representable_ = false;
    double T_ell_ = 0.0, T1_ell_ = 0.0;
};

BlockSchedule build_schedule(const ScheduleConfig& cfg);

// One-step supermartingale factor
//   b_j = exp(-1/ell - 1/ell^{K+1} + sum_{y_{j-1} < k <= y_j} 1/k).
double b_factor(const BlockSchedule& sched, int j);

}  // namespace rmc
