#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "rmc/partitions.hpp"
#include "rmc/rng.hpp"
#include "rmc/schedule.hpp"
#include "rmc/series.hpp"
#include "rmc/stats.hpp"

namespace rmc {

// Stochastic diagnostics of one realization against a block schedule: the
// variance processes V, V-tilde, V(n, y_j), W and their half-part analogues,
// the block integrals I_j, the tail sums U_j, and the event indicators fed
// to the Monte Carlo frequency tables.

enum class InnerSumRoute { series, enumeration };

inline constexpr std::int64_t kDefaultEventBudget = 1 << 13;

// V(n) = sum_{y0 < k <= n} (1/k) |sum_{|lambda| = n-k, parts < k} a(lambda)|^2.
double compute_V(std::int64_t n, const GaussianSequence& X,
                 const BlockSchedule& sched,
                 InnerSumRoute route = InnerSumRoute::series);

// Restriction of V(n) to blocks with n / y_j > ell^{100 K}.
double compute_V_tilde(std::int64_t n, const GaussianSequence& X,
                       const BlockSchedule& sched,
                       InnerSumRoute route = InnerSumRoute::series);

// V(n, y_j) = (1/y_j) sum_{y_{j-1} < k <= y_j} |inner sum|^2.
double compute_V_block(std::int64_t n, int j, const GaussianSequence& X,
                       const BlockSchedule& sched,
                       InnerSumRoute route = InnerSumRoute::series);

// W(n) = sum_{y0 < k <= n/2} (1/(2k^2)) |sum_{|lambda| = n-2k, parts < k}|^2.
double compute_W(std::int64_t n, const GaussianSequence& X,
                 const BlockSchedule& sched,
                 InnerSumRoute route = InnerSumRoute::series);

// Analogue of V with the inner constraint parts < k/2.
double compute_V2(std::int64_t n, const GaussianSequence& X,
                  const BlockSchedule& sched,
                  InnerSumRoute route = InnerSumRoute::series);
double compute_V2_tilde(std::int64_t n, const GaussianSequence& X,
                        const BlockSchedule& sched,
                        InnerSumRoute route = InnerSumRoute::series);
double compute_V2_block(std::int64_t n, int j, const GaussianSequence& X,
                        const BlockSchedule& sched,
                        InnerSumRoute route = InnerSumRoute::series);

// One row of diagnostics: every variance process of one realization at one
// index, plus the seed path that produced the realization.
struct DiagnosticsRecord {
    std::int64_t n = 0;
    double V = 0.0, V_tilde = 0.0, W = 0.0, V2 = 0.0, V2_tilde = 0.0;
    std::vector<double> V_block, V2_block;  // indexed by j, entry 0 unused
    SeedPath seed;
};

// All diagnostics of one realization for every n <= degree, from a single
// incremental sweep over the truncated exponentials.
class DiagnosticsTable {
public:
    DiagnosticsTable(const GaussianSequence& X, const BlockSchedule& sched,
                     std::int64_t degree);

    DiagnosticsRecord record(std::int64_t n) const;

    std::int64_t degree() const { return N_; }
    const BlockSchedule& schedule() const { return *sched_; }

    double V(std::int64_t n) const { return v_.at(idx(n)); }
    double V_tilde(std::int64_t n) const { return v_tilde_.at(idx(n)); }
    double V_block(std::int64_t n, int j) const {
        return v_block_.at(static_cast<std::size_t>(j)).at(idx(n));
    }
    double W(std::int64_t n) const { return w_.at(idx(n)); }
    double V2(std::int64_t n) const { return v2_.at(idx(n)); }
    double V2_tilde(std::int64_t n) const { return v2_tilde_.at(idx(n)); }
    double V2_block(std::int64_t n, int j) const {
        return v2_block_.at(static_cast<std::size_t>(j)).at(idx(n));
    }
    double sup_V_block(std::int64_t n) const;
    double sup_V2_block(std::int64_t n) const;

    std::complex<double> A(std::int64_t n) const { return a_.at(idx(n)); }
    std::complex<double> A0(std::int64_t n) const { return a0_.at(idx(n)); }
    std::complex<double> A1(std::int64_t n) const { return a1_.at(idx(n)); }
    std::complex<double> A2(std::int64_t n) const { return a2_.at(idx(n)); }
    std::complex<double> A3(std::int64_t n) const {
        return A(n) - A0(n) - A1(n) - A2(n);
    }

private:
    static std::size_t idx(std::int64_t n) { return static_cast<std::size_t>(n); }
    const BlockSchedule* sched_;
    std::int64_t N_;
    SeedPath seed_;
    std::vector<double> v_, v_tilde_, w_, v2_, v2_tilde_;
    std::vector<std::vector<double>> v_block_, v2_block_;  // [j][n]
    std::vector<std::complex<double>> a_, a0_, a1_, a2_;
};

// Per-record bound reports exposed as checkable facts.
struct VDecompositionReport {
    double v = 0.0;
    double bound = 0.0;  // C0 (V_tilde + ell log ell sup_j V(n, y_j))
    bool holds = false;
};
VDecompositionReport v_decomposition_report(const DiagnosticsTable& table,
                                            std::int64_t n);
VDecompositionReport v2_decomposition_report(const DiagnosticsTable& table,
                                             std::int64_t n);

struct WBoundReport {
    double w = 0.0;
    double bound = 0.0;  // V2(n) / (2 y0)
    bool holds = false;
};
WBoundReport w_bound_report(const DiagnosticsTable& table, std::int64_t n);

// I_j = (1/(2 pi y~_j)) (y~_j / y~_0)^{-1/ell^K} int |F_{y_j}(e^{i t})|^2 dt,
// quadrature by doubling until the relative change drops below quad_tol.
double compute_Ij(const GaussianSequence& X, const BlockSchedule& sched, int j,
                  double quad_tol = 1e-6);
// The deterministic prefactor (1/y~_j) e^{-j/ell^{K+1}}.
double Ij_prefactor(const BlockSchedule& sched, int j);
// Exact E[I_j] = prefactor * exp(H(y_j)).
double Ij_expectation(const BlockSchedule& sched, int j);

// U_j = (1/y_j) sum_{r<=r_max} max_beta |sum_{|lambda|=r, parts<=beta}|^2 with
// beta over [y_{j-1}, y_j] (closed on the left so every term of V(n, y_j) is
// dominated); j = 0 uses the fixed endpoint beta = y_0. `halved` switches the
// inner constraint to parts <= beta/2.
struct UjReport {
    double value = 0.0;
    double tail_bound = 0.0;  // geometric bound on the discarded r > r_max mass
    int r_max = 0;
};
UjReport compute_Uj(const GaussianSequence& X, const BlockSchedule& sched,
                    int j, int r_max, bool halved = false);

struct EventThresholds {
    double sup_threshold = 4.0;        // |A(n)| / (log n)^{3/4+eps} event
    double component_threshold = 1.0;  // per-component A_r events
    double scale = 1.0;                // multiplies every schedule threshold
};

struct EventRecord {
    // sup_n |A(n)| / (log n)^{3/4+eps} and the per-component versions
    double sup_ratio = 0.0;
    std::array<double, 4> sup_component_ratio{};
    double sup_V = 0.0, sup_V_tilde = 0.0, sup_V_block = 0.0;
    double sup_V2 = 0.0, sup_V2_tilde = 0.0, sup_V2_block = 0.0;
    std::vector<double> I;  // I_0..I_J

    bool b_event = false;                   // sup ratio above threshold
    std::array<bool, 4> b_component{};      // per-component sup events
    bool t_event = false;                   // V(n) within threshold for all n
    bool t2_event = false;
    std::vector<std::uint8_t> t_n, t2_n;    // per-n indicators, n-X_prev-1
    std::vector<std::uint8_t> s_j;          // I_j within threshold
    bool s_event = false;
    bool i0_event = false;                  // I_0 below its tighter threshold
    bool p1_block_event = false;            // sup_{n,j>=1} V(n,y_j) too large
    bool p1_tilde_event = false;            // sup_n V_tilde(n) too large
    bool p2_block_event = false;
    bool p2_tilde_event = false;
    bool v_inequality_ok = true;            // C0 decomposition bound, all n
    bool w_inequality_ok = true;            // W <= V2/(2 y0), all n
};

EventRecord evaluate_events(const GaussianSequence& X, const BlockSchedule& sched,
                            const EventThresholds& thresholds = {},
                            double quad_tol = 1e-6,
                            std::int64_t budget = kDefaultEventBudget);

// --- Nested Monte Carlo checks of the martingale structure ---------------

// Conditional mean of the increments (X(k)/sqrt(k)) sum_{|lambda|=n-k,
// parts<k} a(lambda) with the prefix frozen, pooled across outer trials.
struct IncrementMeanCheck {
    int k = 0;
    MCEstimate re, im;
    bool within(double z) const {
        return std::abs(re.mean) <= z * re.stderr_ + 1e-15 &&
               std::abs(im.mean) <= z * im.stderr_ + 1e-15;
    }
};
std::vector<IncrementMeanCheck> a1_increment_mean_check(
    int n, const BlockSchedule& sched, int outer_trials, int inner_trials,
    std::uint64_t master_seed);

// Pooled test of E[I_j | prefix] = b_j I_{j-1}: samples of
// I_j(inner) - b_j I_{j-1}(outer) should be centered at zero.
struct SupermartingaleCheck {
    int j = 0;
    double b = 0.0;
    MCEstimate pooled_diff;
    double ratio = 0.0;  // mean I_j / (b_j mean I_{j-1})
    bool within(double z) const {
        return std::abs(pooled_diff.mean) <= z * pooled_diff.stderr_ + 1e-15;
    }
};
SupermartingaleCheck supermartingale_ratio_check(int j, const BlockSchedule& sched,
                                                 int outer_trials,
                                                 int inner_trials,
                                                 std::uint64_t master_seed,
                                                 double quad_tol = 1e-4);

// Submartingale step: with X(1..beta) frozen, the inner-MC mean of
// |sum_{|lambda|=r, parts<=beta+1} a| must not drop below
// |sum_{parts<=beta}| - z_slack * stderr.
struct SubmartingaleCheck {
    int r = 0;
    int beta = 0;
    int outer_trials = 0;
    int violations = 0;
    double worst_margin = 0.0;  // min over outer of mean - (base - z stderr)
};
SubmartingaleCheck submartingale_check(int r, int beta, int outer_trials,
                                       int inner_trials,
                                       std::uint64_t master_seed,
                                       double z_slack = 4.0);

}  // namespace rmc
