#include "rmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmc/circle.hpp"

namespace rmc {

namespace {

constexpr std::int64_t kSweepLoopBudget = 10'000'000;

void require_integer_schedule(const BlockSchedule& sched) {
    if (!sched.floors_representable())
        throw budget_error("diagnostics: schedule blocks exceed the integer "
                           "range; pick a smaller (ell, K)");
}

// |inner sum|^2 per k for one n. `strict` route: parts < k; otherwise the
// half constraint parts < k/2. `two_step` shifts the outer index to n - 2k.
std::vector<double> inner_sq(std::int64_t n, const GaussianSequence& X,
                             bool half, bool two_step, InnerSumRoute route) {
    const std::int64_t kmax = two_step ? n / 2 : n;
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (route == InnerSumRoute::series) {
        if (X.length() < n)
            throw domain_error("diagnostics: X shorter than n");
        TruncatedExpSweep sweep(X, static_cast<int>(n));
        for (std::int64_t k = 1; k <= kmax; ++k) {
            const int target = half ? static_cast<int>((k - 1) / 2)
                                    : static_cast<int>(k - 1);
            sweep.advance_to(target);
            const std::int64_t m = two_step ? n - 2 * k : n - k;
            out[static_cast<std::size_t>(k)] =
                std::norm(sweep.coeff(static_cast<int>(m)));
        }
    } else {
        for (std::int64_t k = 1; k <= kmax; ++k) {
            const std::int64_t m = two_step ? n - 2 * k : n - k;
            if (m < 0) continue;
            const int bound = half ? static_cast<int>((k - 1) / 2)
                                   : static_cast<int>(k - 1);
            out[static_cast<std::size_t>(k)] = std::norm(restricted_sum(
                static_cast<int>(m), X,
                PartitionConstraint::parts_at_most(bound)));
        }
    }
    return out;
}

// Block index j >= 1 with y_{j-1} < k <= y_j.
int block_of(const BlockSchedule& sched, std::int64_t k) {
    for (int j = 1; j <= sched.J(); ++j)
        if (k <= sched.y(j)) return j;
    throw domain_error("diagnostics: k beyond the last block boundary");
}

}  // namespace

double compute_V(std::int64_t n, const GaussianSequence& X,
                 const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= y0) return 0.0;
    const auto sq = inner_sq(n, X, false, false, route);
    double v = 0.0;
    for (std::int64_t k = y0 + 1; k <= n; ++k)
        v += sq[static_cast<std::size_t>(k)] / static_cast<double>(k);
    return v;
}

double compute_V_tilde(std::int64_t n, const GaussianSequence& X,
                       const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= y0) return 0.0;
    const auto sq = inner_sq(n, X, false, false, route);
    double v = 0.0;
    for (int j = 1; j <= sched.J(); ++j) {
        if (!sched.tilde_block_active(static_cast<double>(n), j)) continue;
        const std::int64_t lo = std::max(y0, sched.y(j - 1));
        const std::int64_t hi = std::min(n, sched.y(j));
        for (std::int64_t k = lo + 1; k <= hi; ++k)
            v += sq[static_cast<std::size_t>(k)] / static_cast<double>(k);
    }
    return v;
}

double compute_V_block(std::int64_t n, int j, const GaussianSequence& X,
                       const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    if (j < 1 || j > sched.J())
        throw domain_error("compute_V_block: need 1 <= j <= J");
    const auto sq = inner_sq(n, X, false, false, route);
    const std::int64_t lo = sched.y(j - 1);
    const std::int64_t hi = std::min(n, sched.y(j));
    double v = 0.0;
    for (std::int64_t k = lo + 1; k <= hi; ++k)
        v += sq[static_cast<std::size_t>(k)];
    return v / static_cast<double>(sched.y(j));
}

double compute_W(std::int64_t n, const GaussianSequence& X,
                 const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= 2 * y0) return 0.0;
    const auto sq = inner_sq(n, X, false, true, route);
    double w = 0.0;
    for (std::int64_t k = y0 + 1; k <= n / 2; ++k)
        w += sq[static_cast<std::size_t>(k)] /
             (2.0 * static_cast<double>(k) * static_cast<double>(k));
    return w;
}

double compute_V2(std::int64_t n, const GaussianSequence& X,
                  const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= y0) return 0.0;
    const auto sq = inner_sq(n, X, true, false, route);
    double v = 0.0;
    for (std::int64_t k = y0 + 1; k <= n; ++k)
        v += sq[static_cast<std::size_t>(k)] / static_cast<double>(k);
    return v;
}

double compute_V2_tilde(std::int64_t n, const GaussianSequence& X,
                        const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= y0) return 0.0;
    const auto sq = inner_sq(n, X, true, false, route);
    double v = 0.0;
    for (int j = 1; j <= sched.J(); ++j) {
        if (!sched.tilde_block_active(static_cast<double>(n), j)) continue;
        const std::int64_t lo = std::max(y0, sched.y(j - 1));
        const std::int64_t hi = std::min(n, sched.y(j));
        for (std::int64_t k = lo + 1; k <= hi; ++k)
            v += sq[static_cast<std::size_t>(k)] / static_cast<double>(k);
    }
    return v;
}

double compute_V2_block(std::int64_t n, int j, const GaussianSequence& X,
                        const BlockSchedule& sched, InnerSumRoute route) {
    require_integer_schedule(sched);
    if (j < 1 || j > sched.J())
        throw domain_error("compute_V2_block: need 1 <= j <= J");
    const auto sq = inner_sq(n, X, true, false, route);
    const std::int64_t lo = sched.y(j - 1);
    const std::int64_t hi = std::min(n, sched.y(j));
    double v = 0.0;
    for (std::int64_t k = lo + 1; k <= hi; ++k)
        v += sq[static_cast<std::size_t>(k)];
    return v / static_cast<double>(sched.y(j));
}

DiagnosticsTable::DiagnosticsTable(const GaussianSequence& X,
                                   const BlockSchedule& sched,
                                   std::int64_t degree)
    : sched_(&sched), N_(degree), seed_(X.seed_path()) {
    require_integer_schedule(sched);
    if (degree < 1) throw domain_error("DiagnosticsTable: degree must be >= 1");
    if (X.length() < degree)
        throw domain_error("DiagnosticsTable: X shorter than the degree");

    const std::size_t size = static_cast<std::size_t>(N_) + 1;
    const int J = sched.J();
    v_.assign(size, 0.0);
    v_tilde_.assign(size, 0.0);
    w_.assign(size, 0.0);
    v2_.assign(size, 0.0);
    v2_tilde_.assign(size, 0.0);
    v_block_.assign(static_cast<std::size_t>(J) + 1, std::vector<double>(size, 0.0));
    v2_block_.assign(static_cast<std::size_t>(J) + 1, std::vector<double>(size, 0.0));
    a1_.assign(size, {0.0, 0.0});
    a2_.assign(size, {0.0, 0.0});

    const std::int64_t y0 = sched.y(0);

    // Per block: first n with n / y_j > ell^{100 K} (usually none at desk
    // scale); +inf encoded as N_+1.
    std::vector<std::int64_t> tilde_min(static_cast<std::size_t>(J) + 1, N_ + 1);
    for (int j = 1; j <= J; ++j) {
        const double lim = std::log(static_cast<double>(N_)) -
                           std::log(sched.y_approx(j)) -
                           100.0 * sched.K() * std::log(sched.ell());
        if (lim <= 0.0) continue;  // even n = N fails the cutoff
        for (std::int64_t n = 1; n <= N_; ++n) {
            if (sched.tilde_block_active(static_cast<double>(n), j)) {
                tilde_min[static_cast<std::size_t>(j)] = n;
                break;
            }
        }
    }

    std::vector<int> block(static_cast<std::size_t>(N_) + 1, 0);
    for (std::int64_t k = y0 + 1; k <= N_; ++k)
        block[static_cast<std::size_t>(k)] = block_of(sched, k);

    TruncatedExpSweep sweep(X, static_cast<int>(N_));
    const std::int64_t a0_snapshot = std::min<std::int64_t>(y0, N_);
    if (a0_snapshot == 0) a0_ = sweep.coeffs();

    for (std::int64_t beta = 0; beta <= N_; ++beta) {
        if (beta > 0) {
            sweep.advance();
            if (beta == a0_snapshot) a0_ = sweep.coeffs();
        }
        const auto& e = sweep.coeffs();

        // k = beta + 1 feeds V, W and the coefficient pieces.
        const std::int64_t k1 = beta + 1;
        if (k1 <= N_ && k1 > y0) {
            const double invk = 1.0 / static_cast<double>(k1);
            const int j = block[static_cast<std::size_t>(k1)];
            const double invyj = 1.0 / static_cast<double>(sched.y(j));
            const std::int64_t tmin = tilde_min[static_cast<std::size_t>(j)];
            const std::complex<double> ck = X.coeff(static_cast<int>(k1));
            const std::complex<double> ck2_half = 0.5 * ck * ck;
            for (std::int64_t m = 0; m + k1 <= N_; ++m) {
                const std::complex<double> s = e[static_cast<std::size_t>(m)];
                const double sq = std::norm(s);
                const std::int64_t n = m + k1;
                v_[static_cast<std::size_t>(n)] += sq * invk;
                v_block_[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] +=
                    sq * invyj;
                if (n >= tmin) v_tilde_[static_cast<std::size_t>(n)] += sq * invk;
                a1_[static_cast<std::size_t>(n)] += ck * s;
                const std::int64_t n2 = m + 2 * k1;
                if (n2 <= N_) {
                    w_[static_cast<std::size_t>(n2)] +=
                        sq * 0.5 * invk * invk;
                    a2_[static_cast<std::size_t>(n2)] += ck2_half * s;
                }
            }
        }

        // k with floor((k-1)/2) = beta feeds the half-constraint family.
        for (std::int64_t k : {2 * beta + 1, 2 * beta + 2}) {
            if (k > N_ || k <= y0) continue;
            const double invk = 1.0 / static_cast<double>(k);
            const int j = block[static_cast<std::size_t>(k)];
            const double invyj = 1.0 / static_cast<double>(sched.y(j));
            const std::int64_t tmin = tilde_min[static_cast<std::size_t>(j)];
            for (std::int64_t m = 0; m + k <= N_; ++m) {
                const double sq = std::norm(e[static_cast<std::size_t>(m)]);
                const std::int64_t n = m + k;
                v2_[static_cast<std::size_t>(n)] += sq * invk;
                v2_block_[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] +=
                    sq * invyj;
                if (n >= tmin) v2_tilde_[static_cast<std::size_t>(n)] += sq * invk;
            }
        }
    }
    a_ = sweep.coeffs();
}

DiagnosticsRecord DiagnosticsTable::record(std::int64_t n) const {
    DiagnosticsRecord r;
    r.n = n;
    r.V = V(n);
    r.V_tilde = V_tilde(n);
    r.W = W(n);
    r.V2 = V2(n);
    r.V2_tilde = V2_tilde(n);
    r.V_block.assign(static_cast<std::size_t>(sched_->J()) + 1, 0.0);
    r.V2_block.assign(static_cast<std::size_t>(sched_->J()) + 1, 0.0);
    for (int j = 1; j <= sched_->J(); ++j) {
        r.V_block[static_cast<std::size_t>(j)] = V_block(n, j);
        r.V2_block[static_cast<std::size_t>(j)] = V2_block(n, j);
    }
    r.seed = seed_;
    return r;
}

double DiagnosticsTable::sup_V_block(std::int64_t n) const {
    double s = 0.0;
    for (int j = 1; j <= sched_->J(); ++j) s = std::max(s, V_block(n, j));
    return s;
}

double DiagnosticsTable::sup_V2_block(std::int64_t n) const {
    double s = 0.0;
    for (int j = 1; j <= sched_->J(); ++j) s = std::max(s, V2_block(n, j));
    return s;
}

VDecompositionReport v_decomposition_report(const DiagnosticsTable& table,
                                            std::int64_t n) {
    const BlockSchedule& s = table.schedule();
    VDecompositionReport r;
    r.v = table.V(n);
    r.bound = s.C0() * (table.V_tilde(n) +
                        s.ell() * std::log(s.ell()) * table.sup_V_block(n));
    r.holds = r.v <= r.bound * (1.0 + 1e-12) + 1e-15;
    return r;
}

VDecompositionReport v2_decomposition_report(const DiagnosticsTable& table,
                                             std::int64_t n) {
    const BlockSchedule& s = table.schedule();
    VDecompositionReport r;
    r.v = table.V2(n);
    r.bound = s.C0() * (table.V2_tilde(n) +
                        s.ell() * std::log(s.ell()) * table.sup_V2_block(n));
    r.holds = r.v <= r.bound * (1.0 + 1e-12) + 1e-15;
    return r;
}

WBoundReport w_bound_report(const DiagnosticsTable& table, std::int64_t n) {
    WBoundReport r;
    r.w = table.W(n);
    r.bound = table.V2(n) / (2.0 * static_cast<double>(table.schedule().y(0)));
    r.holds = r.w <= r.bound * (1.0 + 1e-12) + 1e-15;
    return r;
}

double Ij_prefactor(const BlockSchedule& sched, int j) {
    if (j < 0 || j > sched.J())
        throw domain_error("Ij_prefactor: need 0 <= j <= J");
    const double ell = static_cast<double>(sched.ell());
    return std::exp(-sched.ln_y_tilde(j) -
                    static_cast<double>(j) / std::pow(ell, sched.K() + 1.0));
}

double Ij_expectation(const BlockSchedule& sched, int j) {
    return Ij_prefactor(sched, j) *
           std::exp(harmonic_number(sched.y_approx(j)));
}

double compute_Ij(const GaussianSequence& X, const BlockSchedule& sched, int j,
                  double quad_tol) {
    require_integer_schedule(sched);
    if (j < 0 || j > sched.J())
        throw domain_error("compute_Ij: need 0 <= j <= J");
    const std::int64_t yj = sched.y(j);
    if (yj > (1 << 20))
        throw budget_error("compute_Ij: y_j too large for quadrature");
    if (X.length() < yj)
        throw domain_error("compute_Ij: X shorter than y_j");
    const double mean = circle_abs2_mean_adaptive(X, static_cast<int>(yj), 1.0,
                                                  quad_tol);
    return Ij_prefactor(sched, j) * mean;
}

UjReport compute_Uj(const GaussianSequence& X, const BlockSchedule& sched,
                    int j, int r_max, bool halved) {
    require_integer_schedule(sched);
    if (j < 0 || j > sched.J())
        throw domain_error("compute_Uj: need 0 <= j <= J");
    if (r_max < 0) throw domain_error("compute_Uj: r_max must be >= 0");
    const std::int64_t yj = sched.y(j);
    if (yj > kSweepLoopBudget)
        throw budget_error("compute_Uj: y_j exceeds the sweep budget");
    if (X.length() < yj)
        throw domain_error("compute_Uj: X shorter than y_j");

    TruncatedExpSweep sweep(X, r_max);
    std::vector<double> maxsq(static_cast<std::size_t>(r_max) + 1, 0.0);
    auto absorb = [&]() {
        for (int r = 0; r <= r_max; ++r)
            maxsq[static_cast<std::size_t>(r)] =
                std::max(maxsq[static_cast<std::size_t>(r)],
                         std::norm(sweep.coeff(r)));
    };
    if (j == 0) {
        sweep.advance_to(static_cast<int>(halved ? yj / 2 : yj));
        absorb();
    } else {
        // Closed interval [y_{j-1}, y_j]: including the left endpoint makes
        // V(n, y_j) <= U_j hold term by term (the k = y_{j-1}+1 inner sum
        // has parts <= y_{j-1}).
        for (std::int64_t beta = sched.y(j - 1); beta <= yj; ++beta) {
            sweep.advance_to(static_cast<int>(halved ? beta / 2 : beta));
            absorb();
        }
    }

    UjReport rep;
    rep.r_max = r_max;
    const double div = static_cast<double>(yj);
    double acc = 0.0;
    for (double m : maxsq) acc += m;
    rep.value = acc / div;

    // Tail of the expected series beyond r_max: restricted second moments at
    // part bound B obey E <= rho^{-r} exp(sum_{k<=B} rho^k / k) with
    // rho = e^{1/B}; factor 4 covers the running maximum.
    const std::int64_t B = std::max<std::int64_t>(1, halved ? yj / 2 : yj);
    double s = 0.0;
    for (std::int64_t k = 1; k <= B; ++k)
        s += std::exp(static_cast<double>(k) / static_cast<double>(B)) /
             static_cast<double>(k);
    const double q = std::exp(-1.0 / static_cast<double>(B));
    rep.tail_bound = 4.0 * std::exp(s) * std::pow(q, r_max + 1) / (1.0 - q) / div;
    return rep;
}

EventRecord evaluate_events(const GaussianSequence& X, const BlockSchedule& sched,
                            const EventThresholds& thresholds, double quad_tol,
                            std::int64_t budget) {
    require_integer_schedule(sched);
    if (!sched.integer_scale())
        throw budget_error("evaluate_events: X_ell not representable");
    const std::int64_t n_hi = sched.X_ell();
    const std::int64_t n_lo = sched.X_prev();
    if (n_hi > budget)
        throw budget_error("evaluate_events: X_ell = " + std::to_string(n_hi) +
                           " exceeds the budget of " + std::to_string(budget));
    const std::int64_t yJ = sched.y(sched.J());
    if (X.length() < std::max(n_hi, yJ))
        throw domain_error("evaluate_events: X must cover max(X_ell, y_J)");

    DiagnosticsTable table(X, sched, n_hi);

    EventRecord rec;
    rec.t_n.assign(static_cast<std::size_t>(n_hi - n_lo), 1);
    rec.t2_n.assign(static_cast<std::size_t>(n_hi - n_lo), 1);

    const double expo = 0.75 + sched.epsilon();
    const double v_thr = sched.v_threshold(thresholds.scale);
    for (std::int64_t n = n_lo + 1; n <= n_hi; ++n) {
        const double weight = std::pow(std::log(static_cast<double>(n)), expo);
        rec.sup_ratio = std::max(rec.sup_ratio, std::abs(table.A(n)) / weight);
        const std::complex<double> comps[4] = {table.A0(n), table.A1(n),
                                               table.A2(n), table.A3(n)};
        for (int r = 0; r < 4; ++r)
            rec.sup_component_ratio[static_cast<std::size_t>(r)] =
                std::max(rec.sup_component_ratio[static_cast<std::size_t>(r)],
                         std::abs(comps[r]) / weight);

        const double vn = table.V(n);
        const double v2n = table.V2(n);
        rec.sup_V = std::max(rec.sup_V, vn);
        rec.sup_V_tilde = std::max(rec.sup_V_tilde, table.V_tilde(n));
        rec.sup_V_block = std::max(rec.sup_V_block, table.sup_V_block(n));
        rec.sup_V2 = std::max(rec.sup_V2, v2n);
        rec.sup_V2_tilde = std::max(rec.sup_V2_tilde, table.V2_tilde(n));
        rec.sup_V2_block = std::max(rec.sup_V2_block, table.sup_V2_block(n));

        const std::size_t slot = static_cast<std::size_t>(n - n_lo - 1);
        rec.t_n[slot] = vn <= v_thr ? 1 : 0;
        rec.t2_n[slot] = v2n <= v_thr ? 1 : 0;

        if (!v_decomposition_report(table, n).holds) rec.v_inequality_ok = false;
        if (!v2_decomposition_report(table, n).holds) rec.v_inequality_ok = false;
        if (!w_bound_report(table, n).holds) rec.w_inequality_ok = false;
    }

    rec.b_event = rec.sup_ratio > thresholds.sup_threshold;
    for (int r = 0; r < 4; ++r)
        rec.b_component[static_cast<std::size_t>(r)] =
            rec.sup_component_ratio[static_cast<std::size_t>(r)] >
            thresholds.component_threshold;
    rec.t_event = std::all_of(rec.t_n.begin(), rec.t_n.end(),
                              [](std::uint8_t b) { return b != 0; });
    rec.t2_event = std::all_of(rec.t2_n.begin(), rec.t2_n.end(),
                               [](std::uint8_t b) { return b != 0; });
    rec.p1_block_event = rec.sup_V_block > sched.block_threshold(thresholds.scale);
    rec.p1_tilde_event = rec.sup_V_tilde > sched.tilde_threshold(thresholds.scale);
    rec.p2_block_event = rec.sup_V2_block > sched.block_threshold(thresholds.scale);
    rec.p2_tilde_event = rec.sup_V2_tilde > sched.tilde_threshold(thresholds.scale);

    rec.I.resize(static_cast<std::size_t>(sched.J()) + 1);
    rec.s_j.resize(static_cast<std::size_t>(sched.J()) + 1);
    const double s_thr = sched.s_threshold(thresholds.scale);
    rec.s_event = true;
    for (int j = 0; j <= sched.J(); ++j) {
        const double ij = compute_Ij(X, sched, j, quad_tol);
        rec.I[static_cast<std::size_t>(j)] = ij;
        const bool ok = ij <= s_thr;
        rec.s_j[static_cast<std::size_t>(j)] = ok ? 1 : 0;
        if (!ok) rec.s_event = false;
    }
    rec.i0_event = rec.I[0] <= sched.i0_threshold(thresholds.scale);
    return rec;
}

std::vector<IncrementMeanCheck> a1_increment_mean_check(
    int n, const BlockSchedule& sched, int outer_trials, int inner_trials,
    std::uint64_t master_seed) {
    require_integer_schedule(sched);
    const std::int64_t y0 = sched.y(0);
    if (n <= y0)
        throw domain_error("a1_increment_mean_check: need n > y_0");
    const std::uint64_t prefix_seed = derive_seed(master_seed, 0xA110);
    const std::uint64_t inner_seed = derive_seed(master_seed, 0xA111);

    const int k_lo = static_cast<int>(y0) + 1;
    std::vector<RunningStat> re(static_cast<std::size_t>(n) + 1);
    std::vector<RunningStat> im(static_cast<std::size_t>(n) + 1);

    for (int t = 0; t < outer_trials; ++t) {
        const GaussianSequence Xp = sample_gaussians(n, prefix_seed,
                                                     static_cast<std::uint64_t>(t));
        // inner sums depend only on X(1..k-1), fixed for this outer trial
        std::vector<std::complex<double>> s(static_cast<std::size_t>(n) + 1);
        TruncatedExpSweep sweep(Xp, n);
        for (int k = k_lo; k <= n; ++k) {
            sweep.advance_to(k - 1);
            s[static_cast<std::size_t>(k)] = sweep.coeff(n - k);
        }
        for (int i = 0; i < inner_trials; ++i) {
            const std::uint64_t trial =
                static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(inner_trials) +
                static_cast<std::uint64_t>(i);
            for (int k = k_lo; k <= n; ++k) {
                const std::complex<double> xk = gaussian_at(inner_seed, trial, k);
                const std::complex<double> z =
                    xk / std::sqrt(static_cast<double>(k)) *
                    s[static_cast<std::size_t>(k)];
                re[static_cast<std::size_t>(k)].add(z.real());
                im[static_cast<std::size_t>(k)].add(z.imag());
            }
        }
    }

    std::vector<IncrementMeanCheck> out;
    for (int k = k_lo; k <= n; ++k) {
        IncrementMeanCheck c;
        c.k = k;
        c.re = re[static_cast<std::size_t>(k)].estimate(master_seed);
        c.im = im[static_cast<std::size_t>(k)].estimate(master_seed);
        out.push_back(c);
    }
    return out;
}

SupermartingaleCheck supermartingale_ratio_check(int j, const BlockSchedule& sched,
                                                 int outer_trials,
                                                 int inner_trials,
                                                 std::uint64_t master_seed,
                                                 double quad_tol) {
    require_integer_schedule(sched);
    if (j < 1 || j > sched.J())
        throw domain_error("supermartingale_ratio_check: need 1 <= j <= J");
    const std::int64_t yj = sched.y(j);
    const std::int64_t yjm1 = sched.y(j - 1);
    const std::uint64_t prefix_seed = derive_seed(master_seed, 0x50B0);
    const std::uint64_t inner_seed = derive_seed(master_seed, 0x50B1);
    const double b = b_factor(sched, j);

    RunningStat diff;
    CompensatedSum sum_cur, sum_prev;
    for (int t = 0; t < outer_trials; ++t) {
        GaussianSequence Xw = sample_gaussians(
            static_cast<int>(yj), prefix_seed, static_cast<std::uint64_t>(t));
        const double i_prev =
            Ij_prefactor(sched, j - 1) *
            circle_abs2_mean_adaptive(Xw, static_cast<int>(yjm1), 1.0, quad_tol);
        for (int i = 0; i < inner_trials; ++i) {
            const std::uint64_t trial =
                static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(inner_trials) +
                static_cast<std::uint64_t>(i);
            for (std::int64_t k = yjm1 + 1; k <= yj; ++k)
                Xw.set(static_cast<int>(k),
                       gaussian_at(inner_seed, trial, static_cast<int>(k)));
            const double i_cur =
                Ij_prefactor(sched, j) *
                circle_abs2_mean_adaptive(Xw, static_cast<int>(yj), 1.0, quad_tol);
            diff.add(i_cur - b * i_prev);
            sum_cur.add(i_cur);
            sum_prev.add(i_prev);
        }
    }

    SupermartingaleCheck c;
    c.j = j;
    c.b = b;
    c.pooled_diff = diff.estimate(master_seed);
    c.ratio = (sum_prev.value() != 0.0) ? sum_cur.value() / (b * sum_prev.value())
                                        : 0.0;
    return c;
}

SubmartingaleCheck submartingale_check(int r, int beta, int outer_trials,
                                       int inner_trials,
                                       std::uint64_t master_seed,
                                       double z_slack) {
    if (r < 1 || r > kPartitionEnumerationCap)
        throw domain_error("submartingale_check: r out of range");
    if (beta < 1) throw domain_error("submartingale_check: beta must be >= 1");
    const std::uint64_t prefix_seed = derive_seed(master_seed, 0x5B30);
    const std::uint64_t inner_seed = derive_seed(master_seed, 0x5B31);
    const auto at_most_beta = PartitionConstraint::parts_at_most(beta);

    SubmartingaleCheck rep;
    rep.r = r;
    rep.beta = beta;
    rep.outer_trials = outer_trials;
    rep.worst_margin = std::numeric_limits<double>::infinity();

    const int part = beta + 1;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(part));
    for (int t = 0; t < outer_trials; ++t) {
        const GaussianSequence Xp = sample_gaussians(
            beta, prefix_seed, static_cast<std::uint64_t>(t));
        // sum over partitions with parts <= beta+1 factors through the
        // multiplicity of the new part: S_m = restricted sum at size r - m(beta+1)
        std::vector<std::complex<double>> s;
        for (int m = 0; r - m * part >= 0; ++m)
            s.push_back(restricted_sum(r - m * part, Xp, at_most_beta));
        const double base = std::abs(s[0]);

        RunningStat inner;
        for (int i = 0; i < inner_trials; ++i) {
            const std::uint64_t trial =
                static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(inner_trials) +
                static_cast<std::uint64_t>(i);
            const std::complex<double> c =
                gaussian_at(inner_seed, trial, part) * inv_sqrt;
            std::complex<double> val{0.0, 0.0};
            std::complex<double> pw{1.0, 0.0};
            for (std::size_t m = 0; m < s.size(); ++m) {
                if (m > 0) pw *= c / static_cast<double>(m);
                val += pw * s[m];
            }
            inner.add(std::abs(val));
        }
        const MCEstimate e = inner.estimate(master_seed);
        const double margin = e.mean - (base - z_slack * e.stderr_);
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -1e-15) ++rep.violations;
    }
    return rep;
}

}  // namespace rmc
