#include "rmc/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "rmc/circle.hpp"
#include "rmc/fft.hpp"
#include "rmc/partitions.hpp"
#include "rmc/series.hpp"
#include "rmc/threads.hpp"

namespace rmc {

MdsProcess make_sign_process(int steps, std::uint64_t seed) {
    MdsProcess p;
    p.name = "sign";
    p.steps = steps;
    p.sample = [steps, seed](std::uint64_t trial,
                             std::vector<std::complex<double>>& z,
                             std::vector<double>& s) {
        z.assign(static_cast<std::size_t>(steps), {0.0, 0.0});
        s.assign(static_cast<std::size_t>(steps), 1.0);
        for (int i = 0; i < steps; ++i) {
            const std::uint64_t w =
                counter_hash(seed, trial, static_cast<std::uint64_t>(i));
            z[static_cast<std::size_t>(i)] = {(w >> 63) ? 1.0 : -1.0, 0.0};
        }
    };
    return p;
}

MdsProcess make_a1_increment_process(int n, const BlockSchedule& sched,
                                     std::uint64_t seed) {
    const std::int64_t y0 = sched.y(0);
    if (n <= y0)
        throw domain_error("make_a1_increment_process: need n > y_0");
    MdsProcess p;
    p.name = "a1_increments_n" + std::to_string(n);
    p.steps = static_cast<int>(n - y0);
    p.sample = [n, y0, seed](std::uint64_t trial,
                             std::vector<std::complex<double>>& z,
                             std::vector<double>& s) {
        const GaussianSequence X = sample_gaussians(n, seed, trial);
        TruncatedExpSweep sweep(X, n);
        z.clear();
        s.clear();
        for (std::int64_t k = y0 + 1; k <= n; ++k) {
            sweep.advance_to(static_cast<int>(k - 1));
            const std::complex<double> inc =
                X.coeff(static_cast<int>(k)) * sweep.coeff(static_cast<int>(n - k));
            z.push_back(inc);
            s.push_back(std::abs(inc));  // realized envelope
        }
    };
    return p;
}

TailReport hoeffding_check(const MdsProcess& process, double T_cap,
                           const std::vector<double>& eps_grid,
                           std::int64_t trials, double hoeffding_c) {
    if (!(T_cap > 0.0)) throw config_error("hoeffding_check: T_cap must be > 0");
    TailReport rep;
    rep.grid = eps_grid;
    rep.trials = trials;
    std::vector<std::int64_t> hits(eps_grid.size(), 0);

    std::vector<std::complex<double>> z;
    std::vector<double> s;
    for (std::int64_t t = 0; t < trials; ++t) {
        process.sample(static_cast<std::uint64_t>(t), z, s);
        if (z.size() != s.size())
            throw contract_error("hoeffding_check: increment/envelope size mismatch");
        std::complex<double> total{0.0, 0.0};
        double s2 = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (!std::isfinite(s[i]))
                throw contract_error("hoeffding_check: process '" + process.name +
                                     "' declares an unbounded increment");
            if (std::abs(z[i]) > s[i] * (1.0 + 1e-12) + 1e-300)
                throw contract_error("hoeffding_check: |Z| exceeds the declared "
                                     "envelope in process '" + process.name + "'");
            total += z[i];
            s2 += s[i] * s[i];
        }
        if (s2 > T_cap) continue;  // outside the conditioning event
        const double mag = std::abs(total);
        for (std::size_t g = 0; g < eps_grid.size(); ++g)
            if (mag >= eps_grid[g]) ++hits[g];
    }

    rep.empirical.resize(eps_grid.size());
    rep.ci.resize(eps_grid.size());
    rep.bound.resize(eps_grid.size());
    rep.violations = 0;
    for (std::size_t g = 0; g < eps_grid.size(); ++g) {
        rep.empirical[g] =
            static_cast<double>(hits[g]) / static_cast<double>(trials);
        rep.ci[g] = wilson_interval(hits[g], trials);
        rep.bound[g] =
            2.0 * std::exp(-eps_grid[g] * eps_grid[g] / (hoeffding_c * T_cap));
        if (rep.ci[g].lo > rep.bound[g]) ++rep.violations;
    }
    return rep;
}

SequenceProcess make_ij_sequence(const BlockSchedule& sched, std::uint64_t seed,
                                 double quad_tol) {
    SequenceProcess p;
    p.name = "I_j";
    p.length = sched.J() + 1;
    const std::int64_t yJ = sched.y(sched.J());
    p.sample = [&sched, seed, quad_tol, yJ](std::uint64_t trial,
                                            std::vector<double>& values) {
        const GaussianSequence X =
            sample_gaussians(static_cast<int>(yJ), seed, trial);
        values.resize(static_cast<std::size_t>(sched.J()) + 1);
        for (int j = 0; j <= sched.J(); ++j)
            values[static_cast<std::size_t>(j)] = compute_Ij(X, sched, j, quad_tol);
    };
    return p;
}

SequenceProcess make_constant_sequence(int length, double value) {
    SequenceProcess p;
    p.name = "constant";
    p.length = length;
    p.sample = [length, value](std::uint64_t, std::vector<double>& values) {
        values.assign(static_cast<std::size_t>(length), value);
    };
    return p;
}

TailReport doob_max_check(const SequenceProcess& seq, double mean_first,
                          const std::vector<double>& lambda_grid,
                          std::int64_t trials) {
    TailReport rep;
    rep.grid = lambda_grid;
    rep.trials = trials;
    std::vector<std::int64_t> hits(lambda_grid.size(), 0);

    std::vector<double> values;
    for (std::int64_t t = 0; t < trials; ++t) {
        seq.sample(static_cast<std::uint64_t>(t), values);
        double vmax = 0.0;
        for (double v : values) {
            if (v < 0.0)
                throw contract_error("doob_max_check: negative value in sequence '" +
                                     seq.name + "'");
            vmax = std::max(vmax, v);
        }
        for (std::size_t g = 0; g < lambda_grid.size(); ++g)
            if (vmax > lambda_grid[g]) ++hits[g];
    }

    rep.empirical.resize(lambda_grid.size());
    rep.ci.resize(lambda_grid.size());
    rep.bound.resize(lambda_grid.size());
    rep.violations = 0;
    for (std::size_t g = 0; g < lambda_grid.size(); ++g) {
        rep.empirical[g] =
            static_cast<double>(hits[g]) / static_cast<double>(trials);
        rep.ci[g] = wilson_interval(hits[g], trials);
        rep.bound[g] = std::min(1.0, mean_first / lambda_grid[g]);
        if (rep.ci[g].lo > rep.bound[g]) ++rep.violations;
    }
    return rep;
}

DoobL2Report doob_L2_check(int r, int j, const BlockSchedule& sched,
                           std::int64_t trials, std::uint64_t seed,
                           double doob_factor) {
    if (j < 1 || j > sched.J())
        throw domain_error("doob_L2_check: need 1 <= j <= J");
    const std::int64_t ylo = sched.y(j - 1);
    const std::int64_t yhi = sched.y(j);

    RunningStat max_sq;
    for (std::int64_t t = 0; t < trials; ++t) {
        const GaussianSequence X = sample_gaussians(
            static_cast<int>(yhi), seed, static_cast<std::uint64_t>(t));
        TruncatedExpSweep sweep(X, r);
        sweep.advance_to(static_cast<int>(ylo));
        double m = 0.0;
        for (std::int64_t beta = ylo + 1; beta <= yhi; ++beta) {
            sweep.advance();
            m = std::max(m, std::norm(sweep.coeff(r)));
        }
        max_sq.add(m);
    }

    DoobL2Report rep;
    rep.r = r;
    rep.j = j;
    rep.max_sq = max_sq.estimate(seed);
    rep.rhs_exact =
        doob_factor * restricted_second_moment(
                          r, PartitionConstraint::parts_at_most(
                                 static_cast<int>(yhi)));
    rep.slack = 4.0 * rep.max_sq.stderr_;
    rep.holds = rep.max_sq.mean <= rep.rhs_exact + rep.slack;
    return rep;
}

ChaosEstimate chaos_moment_estimate_single(int R, double q, double r,
                                           std::int64_t trials, int blocks,
                                           std::uint64_t seed, int threads,
                                           int quadrature_M) {
    if (!(q >= 0.5 && q <= 1.0))
        throw domain_error("chaos_moment_estimate: q must lie in [1/2, 1]");
    if (!(r >= 1.0 && r <= std::exp(1.0 / static_cast<double>(R))))
        throw domain_error("chaos_moment_estimate: r must lie in [1, e^{1/R}]");
    if (trials < 100)
        throw config_error("chaos_moment_estimate: need at least 100 trials");

    const int M = quadrature_M > 0
                      ? quadrature_M
                      : static_cast<int>(next_pow2(
                            static_cast<std::size_t>(std::max(4 * R, 1024))));
    std::vector<double> samples(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t t) {
        const GaussianSequence X =
            sample_gaussians(R, seed, static_cast<std::uint64_t>(t));
        const double mass = circle_abs2_mean(X, R, r, M);
        samples[static_cast<std::size_t>(t)] = std::pow(mass, q);
    });
    ChaosEstimate est;
    est.median_of_means = median_of_means(samples, blocks, seed);
    RunningStat plain;
    for (double s : samples) plain.add(s);
    est.plain = plain.estimate(seed);
    return est;
}

MomentFitReport chaos_moment_estimate(const std::vector<int>& R_grid, double q,
                                      double r, std::int64_t trials, int blocks,
                                      std::uint64_t seed, int threads,
                                      int quadrature_M) {
    MomentFitReport rep;
    rep.R_grid = R_grid;
    rep.q = q;
    rep.r = r;
    rep.trials = trials;
    rep.blocks = blocks;
    rep.seed = seed;
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        const int R = R_grid[i];
        const ChaosEstimate est = chaos_moment_estimate_single(
            R, q, r, trials, blocks, derive_seed(seed, i), threads, quadrature_M);
        rep.estimates.push_back(est.median_of_means);
        rep.plain_estimates.push_back(est.plain);
        const double shape = std::pow(
            static_cast<double>(R) /
                (1.0 + (1.0 - q) * std::sqrt(std::log(static_cast<double>(R)))),
            q);
        rep.bound_shape.push_back(shape);
        rep.fitted.push_back(est.median_of_means.mean / shape);
    }
    return rep;
}

BoundPair a0_bound_evaluator(int n, int y0, double r) {
    if (n < 0 || y0 < 1)
        throw domain_error("a0_bound_evaluator: need n >= 0 and y0 >= 1");
    if (r == 0.0) r = std::exp(1.0 / static_cast<double>(y0));
    if (!(r > 0.0)) throw domain_error("a0_bound_evaluator: r must be > 0");
    BoundPair p;
    p.exact = restricted_second_moment_gf(n, y0);
    double s = 0.0;
    for (int k = 1; k <= y0; ++k)
        s += std::pow(r, k) / static_cast<double>(k);
    p.bound = std::pow(r, -n) * std::exp(s);
    p.holds = p.exact <= p.bound * (1.0 + 1e-12) + 1e-15;
    return p;
}

BoundPair a3_bound_evaluator(int n, int y0) {
    if (n < 0 || y0 < 1)
        throw domain_error("a3_bound_evaluator: need n >= 0 and y0 >= 1");
    BoundPair p;
    p.exact = restricted_second_moment(
        n, PartitionConstraint::top_exceeds(y0, TopMultiplicity::three_plus));
    double s = 0.0;
    for (int k = y0 + 1; 3 * k <= n; ++k)
        s += 1.0 / (static_cast<double>(k) * static_cast<double>(k) *
                    static_cast<double>(k));
    p.bound = s;
    p.holds = p.exact <= p.bound * (1.0 + 1e-12) + 1e-15;
    return p;
}

}  // namespace rmc
