#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmc/diagnostics.hpp"
#include "rmc/schedule.hpp"
#include "rmc/stats.hpp"

namespace rmc {

// Empirical verification of the probabilistic tools: the Hoeffding-type
// martingale tail bound, Doob maximal inequalities, the chaos moment bound,
// and the exact-vs-bound evaluators for the restricted second moments.

// One-sided tail comparison: empirical frequencies with Wilson intervals
// against theoretical bounds. A violation means the empirical lower CI end
// exceeds the bound.
struct TailReport {
    std::vector<double> grid;        // thresholds (eps or lambda)
    std::vector<double> empirical;   // frequencies
    std::vector<WilsonInterval> ci;  // 95% intervals
    std::vector<double> bound;       // theoretical bounds per threshold
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    int violations = 0;
};

// A martingale-difference process: fills increments Z_1..Z_N and the bound
// process S_1..S_N (|Z_i| <= S_i almost surely) for one trial.
struct MdsProcess {
    std::string name;
    int steps = 0;
    std::function<void(std::uint64_t trial, std::vector<std::complex<double>>& z,
                       std::vector<double>& s)>
        sample;
};

MdsProcess make_sign_process(int steps, std::uint64_t seed);
MdsProcess make_a1_increment_process(int n, const BlockSchedule& sched,
                                     std::uint64_t seed);

// Empirical P[{|sum Z| >= eps} and {sum S^2 <= T_cap}] against
// 2 exp(-eps^2 / (hoeffding_c * T_cap)). The constant defaults to the cited
// lemma's 10. Non-finite bound values or |Z| > S raise contract_error.
TailReport hoeffding_check(const MdsProcess& process, double T_cap,
                           const std::vector<double>& eps_grid,
                           std::int64_t trials, double hoeffding_c = 10.0);

// A non-negative sequence process (one realization of I_0..I_J or similar).
struct SequenceProcess {
    std::string name;
    int length = 0;
    std::function<void(std::uint64_t trial, std::vector<double>& values)> sample;
};

SequenceProcess make_ij_sequence(const BlockSchedule& sched, std::uint64_t seed,
                                 double quad_tol = 1e-5);
SequenceProcess make_constant_sequence(int length, double value);

// Empirical P[max_j values_j > lambda] against mean_first / lambda (the
// non-negative supermartingale maximal inequality), mean_first = E[first].
TailReport doob_max_check(const SequenceProcess& seq, double mean_first,
                          const std::vector<double>& lambda_grid,
                          std::int64_t trials);

// L2 maximal inequality on the restricted-sum submartingale over one block:
// E[max_{y_{j-1} < beta <= y_j} |sum_{|lambda|=r, parts<=beta} a|^2]
//   <= doob_factor * E[|sum_{parts<=y_j} a|^2]  (+ MC slack).
struct DoobL2Report {
    int r = 0;
    int j = 0;
    MCEstimate max_sq;        // MC estimate of the left side
    double rhs_exact = 0.0;   // doob_factor * exact restricted second moment
    double slack = 0.0;       // 4 * stderr
    bool holds = false;
};
DoobL2Report doob_L2_check(int r, int j, const BlockSchedule& sched,
                           std::int64_t trials, std::uint64_t seed,
                           double doob_factor = 4.0);

// Estimate of E[((1/2pi) int |F_R(r e^{i t})|^2 dt)^q] against the shape
// (R / (1 + (1-q) sqrt(log R)))^q over an R-grid. The integrand is heavy
// tailed, so two location estimates are carried: the median-of-means (robust
// to wild blocks, but its median sits a few percent below the mean at large
// R because the block means stay right-skewed) and the plain compensated
// mean (unbiased; its stderr is the honest accuracy limit).
struct ChaosEstimate {
    MCEstimate median_of_means;
    MCEstimate plain;
};

struct MomentFitReport {
    std::vector<int> R_grid;
    double q = 1.0;
    double r = 1.0;
    std::vector<MCEstimate> estimates;        // median-of-means
    std::vector<MCEstimate> plain_estimates;  // unbiased companion
    std::vector<double> bound_shape;
    std::vector<double> fitted;  // median-of-means estimate / shape
    std::int64_t trials = 0;
    int blocks = 0;
    std::uint64_t seed = 0;
};

ChaosEstimate chaos_moment_estimate_single(int R, double q, double r,
                                           std::int64_t trials, int blocks,
                                           std::uint64_t seed, int threads = 0,
                                           int quadrature_M = 0);
MomentFitReport chaos_moment_estimate(const std::vector<int>& R_grid, double q,
                                      double r, std::int64_t trials, int blocks,
                                      std::uint64_t seed, int threads = 0,
                                      int quadrature_M = 0);

// Exact restricted second moment against its generating-function bound.
struct BoundPair {
    double exact = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// parts <= y0 moment vs r^{-n} exp(sum_{k<=y0} r^k / k); r = 0 picks the
// optimized radius e^{1/y0}.
BoundPair a0_bound_evaluator(int n, int y0, double r = 0.0);

// largest part > y0 with multiplicity >= 3, vs sum_{y0 < k <= n/3} k^{-3}.
BoundPair a3_bound_evaluator(int n, int y0);

}  // namespace rmc
