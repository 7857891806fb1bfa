// Command-line front end: reproducible simulations, oracle cross-checks,
// schedule inspection, event-frequency tables and concentration reports.

#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmc/campaign.hpp"
#include "rmc/circle.hpp"
#include "rmc/concentration.hpp"
#include "rmc/diagnostics.hpp"
#include "rmc/partitions.hpp"
#include "rmc/schedule.hpp"
#include "rmc/series.hpp"

namespace {

using namespace rmc;

struct CliOptions {
    CampaignConfig config;
    std::string per_trial_out;
    std::string format = "csv";
    std::string method = "fast";
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--seed", opt.config.master_seed, "master seed (u64)");
    cmd->add_option("--trials", opt.config.trials, "number of Monte Carlo trials");
    cmd->add_option("--n-max", opt.config.n_max, "largest coefficient index");
    cmd->add_option("--threads", opt.config.threads,
                    "worker threads (0 = auto, env RMC_THREADS)");
    cmd->add_option("--out", opt.config.out_path, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--method", opt.method, "series path: naive or fast")
        ->check(CLI::IsMember({"naive", "fast"}));
    cmd->add_option("--ell", opt.config.schedule.ell, "block parameter ell (>= 2)");
    cmd->add_option("--K", opt.config.schedule.K, "block exponent K");
    cmd->add_option("--epsilon", opt.config.schedule.epsilon, "growth exponent margin");
    cmd->add_option("--C0", opt.config.schedule.C0,
                    "decomposition constant (0 = default 1 + 100K)");
}

void finalize(CliOptions& opt) {
    opt.config.method = opt.method == "naive" ? CampaignConfig::Method::naive
                                              : CampaignConfig::Method::fast;
    opt.config.format = opt.format == "json" ? CampaignConfig::Format::json
                                             : CampaignConfig::Format::csv;
    opt.config.per_trial_path = opt.per_trial_out;
}

int cmd_simulate(CliOptions& opt) {
    finalize(opt);
    const SimulationResult res = run_simulation(opt.config);
    std::string text;
    if (opt.config.format == CampaignConfig::Format::json) {
        text = simulation_to_json(res);
    } else {
        std::ostringstream os;
        write_aggregate_csv(res, os);
        text = os.str();
    }
    write_text_output(opt.config.out_path, text);
    if (!opt.config.per_trial_path.empty()) {
        std::ostringstream os;
        write_per_trial_csv(res, os);
        write_text_output(opt.config.per_trial_path, os.str());
    }
    return 0;
}

int cmd_oracle_check(CliOptions& opt, int n_oracle, int fast_N) {
    finalize(opt);
    int failures = 0;
    std::ostringstream os;

    // series recurrence vs the partition oracle
    double worst_rel = 0.0;
    for (std::int64_t t = 0; t < opt.config.trials; ++t) {
        const GaussianSequence X = sample_gaussians(
            n_oracle, opt.config.master_seed, static_cast<std::uint64_t>(t));
        const CoefficientSeries s = exp_series_naive(X, n_oracle);
        for (int n = 0; n <= n_oracle; ++n) {
            const std::complex<double> oracle = A_oracle(n, X);
            const double rel = std::abs(s.at(n) - oracle) /
                               std::max(1.0, std::abs(oracle));
            worst_rel = std::max(worst_rel, rel);
        }
    }
    os << "recurrence_vs_partition_oracle,n<=" << n_oracle << ",worst_rel,"
       << worst_rel << (worst_rel <= 1e-9 ? ",ok" : ",FAIL") << "\n";
    if (worst_rel > 1e-9) ++failures;

    // fast path vs naive
    const GaussianSequence Xf =
        sample_gaussians(fast_N, opt.config.master_seed, 0);
    const CoefficientSeries naive = exp_series_naive(Xf, fast_N);
    const CoefficientSeries fast = exp_series_fast(Xf, fast_N);
    double max_abs = 0.0, max_coeff = 0.0;
    for (int n = 0; n <= fast_N; ++n) {
        max_abs = std::max(max_abs, std::abs(naive.at(n) - fast.at(n)));
        max_coeff = std::max(max_coeff, std::abs(naive.at(n)));
    }
    const double norm_err = max_abs / (1.0 + max_coeff);
    os << "fast_vs_naive,N=" << fast_N << ",normalized_abs," << norm_err
       << (norm_err <= 1e-8 ? ",ok" : ",FAIL") << "\n";
    if (norm_err > 1e-8) ++failures;

    // quadrature coefficients vs the recurrence
    const int R = std::min<std::int64_t>(opt.config.n_max, 256);
    const GaussianSequence Xq =
        sample_gaussians(R, opt.config.master_seed, 1);
    const auto quad = cauchy_coefficients_adaptive(Xq, R, 1.0, R / 2);
    const CoefficientSeries ref = exp_series_naive(Xq, R / 2);
    double worst_q = 0.0;
    for (int n = 0; n <= R / 2; ++n)
        worst_q = std::max(worst_q,
                           std::abs(quad[static_cast<std::size_t>(n)] - ref.at(n)));
    os << "cauchy_vs_recurrence,R=" << R << ",worst_abs," << worst_q
       << (worst_q <= 1e-6 ? ",ok" : ",FAIL") << "\n";
    if (worst_q > 1e-6) ++failures;

    write_text_output(opt.config.out_path, os.str());
    return failures == 0 ? 0 : 1;
}

int cmd_moments(CliOptions& opt) {
    finalize(opt);
    const auto rows = moment_curve(opt.config);
    std::ostringstream os;
    write_moment_curve_csv(rows, os);
    write_text_output(opt.config.out_path, os.str());
    return 0;
}

int cmd_decompose(CliOptions& opt, int y0) {
    finalize(opt);
    const int n_hi = static_cast<int>(
        std::min<std::int64_t>(opt.config.n_max, kPartitionEnumerationCap));
    std::ostringstream os;
    os << "trial,n,re_A0,im_A0,re_A1,im_A1,re_A2,im_A2,re_A3,im_A3,residual\n";
    double worst = 0.0;
    for (std::int64_t t = 0; t < opt.config.trials; ++t) {
        const GaussianSequence X = sample_gaussians(
            n_hi, opt.config.master_seed, static_cast<std::uint64_t>(t));
        for (int n = y0 + 1; n <= n_hi; ++n) {
            const DecomposedCoefficient d = decompose(n, X, y0);
            const double residual = std::abs(d.total() - A_oracle(n, X));
            worst = std::max(worst, residual);
            os << t << ',' << n << ',' << d.a0.real() << ',' << d.a0.imag()
               << ',' << d.a1.real() << ',' << d.a1.imag() << ',' << d.a2.real()
               << ',' << d.a2.imag() << ',' << d.a3.real() << ',' << d.a3.imag()
               << ',' << residual << '\n';
        }
    }
    os << "# worst_residual=" << worst << "\n";
    write_text_output(opt.config.out_path, os.str());
    return worst <= 1e-12 ? 0 : 1;
}

int cmd_blocks(CliOptions& opt) {
    finalize(opt);
    const BlockSchedule sched = build_schedule(opt.config.schedule);
    std::ostringstream os;
    os << "# ell=" << sched.ell() << " K=" << sched.K()
       << " epsilon=" << sched.epsilon() << " C0=" << sched.C0()
       << " J=" << sched.J() << " log2_X_prev=" << sched.log2_X_prev()
       << " log2_X_ell=" << sched.log2_X_ell() << " T=" << sched.T_ell()
       << " T1=" << sched.T1_ell() << "\n";
    os << "j,y_tilde,y,b_j,b_le_1\n";
    bool all_b_ok = true;
    for (int j = 0; j <= sched.J(); ++j) {
        os << j << ',' << sched.y_tilde(j) << ',' << sched.y_approx(j);
        if (j >= 1) {
            const double b = b_factor(sched, j);
            const bool ok = b <= 1.0 + 1e-12;
            all_b_ok = all_b_ok && ok;
            os << ',' << b << ',' << (ok ? 1 : 0);
        } else {
            os << ",,";
        }
        os << '\n';
    }
    os << "# all_b_le_1=" << (all_b_ok ? 1 : 0) << "\n";
    write_text_output(opt.config.out_path, os.str());
    return 0;
}

int cmd_chaos(CliOptions& opt, std::vector<int>& R_grid, double q, double r,
              int blocks) {
    finalize(opt);
    if (R_grid.empty()) R_grid = {16, 64, 256};
    const MomentFitReport rep = chaos_moment_estimate(
        R_grid, q, r, opt.config.trials, blocks, opt.config.master_seed,
        opt.config.threads);
    std::ostringstream os;
    os << "R,q,r,mom_estimate,mom_stderr,plain_estimate,plain_stderr,shape,"
          "fitted\n";
    for (std::size_t i = 0; i < rep.R_grid.size(); ++i)
        os << rep.R_grid[i] << ',' << q << ',' << r << ','
           << rep.estimates[i].mean << ',' << rep.estimates[i].stderr_ << ','
           << rep.plain_estimates[i].mean << ','
           << rep.plain_estimates[i].stderr_ << ',' << rep.bound_shape[i] << ','
           << rep.fitted[i] << '\n';
    write_text_output(opt.config.out_path, os.str());
    return 0;
}

int cmd_concentration(CliOptions& opt, int n_a1, int inner, int outer) {
    finalize(opt);
    const BlockSchedule sched = build_schedule(opt.config.schedule);
    std::ostringstream os;
    int violations = 0;

    {
        const int N = 100;
        const auto proc = make_sign_process(N, derive_seed(opt.config.master_seed, 1));
        const std::vector<double> eps = {20, 30, 40, 60};
        const TailReport rep =
            hoeffding_check(proc, static_cast<double>(N), eps, opt.config.trials);
        for (std::size_t g = 0; g < rep.grid.size(); ++g)
            os << "hoeffding_sign,eps=" << rep.grid[g] << ",empirical,"
               << rep.empirical[g] << ",bound," << rep.bound[g] << '\n';
        os << "hoeffding_sign violations=" << rep.violations << '\n';
        violations += rep.violations;
    }
    {
        const auto proc =
            make_a1_increment_process(n_a1, sched, derive_seed(opt.config.master_seed, 2));
        const std::vector<double> eps = {1, 2, 3, 4};
        const TailReport rep = hoeffding_check(proc, 4.0, eps, opt.config.trials);
        for (std::size_t g = 0; g < rep.grid.size(); ++g)
            os << "hoeffding_a1,eps=" << rep.grid[g] << ",empirical,"
               << rep.empirical[g] << ",bound," << rep.bound[g] << '\n';
        os << "hoeffding_a1 violations=" << rep.violations << '\n';
        violations += rep.violations;
    }
    {
        const double e_i0 = Ij_expectation(sched, 0);
        const auto seq = make_ij_sequence(sched, derive_seed(opt.config.master_seed, 3));
        const std::vector<double> lambdas = {2.0 * e_i0, 4.0 * e_i0, 8.0 * e_i0};
        const TailReport rep = doob_max_check(seq, e_i0, lambdas, opt.config.trials);
        for (std::size_t g = 0; g < rep.grid.size(); ++g)
            os << "doob_max_Ij,lambda=" << rep.grid[g] << ",empirical,"
               << rep.empirical[g] << ",bound," << rep.bound[g] << '\n';
        os << "doob_max_Ij violations=" << rep.violations << '\n';
        violations += rep.violations;
    }
    {
        const DoobL2Report rep =
            doob_L2_check(2, 3, sched, opt.config.trials,
                          derive_seed(opt.config.master_seed, 4));
        os << "doob_l2,r=" << rep.r << ",j=" << rep.j << ",lhs,"
           << rep.max_sq.mean << ",rhs," << rep.rhs_exact << ",holds,"
           << (rep.holds ? 1 : 0) << '\n';
        if (!rep.holds) ++violations;
    }
    {
        const auto checks = a1_increment_mean_check(
            n_a1, sched, outer, inner, derive_seed(opt.config.master_seed, 5));
        int bad = 0;
        for (const auto& c : checks)
            if (!c.within(5.0)) ++bad;
        os << "a1_increment_means,k_count=" << checks.size()
           << ",outside_5_stderr=" << bad << '\n';
        violations += bad;
    }
    {
        int bad = 0;
        for (int j = 1; j <= sched.J(); ++j) {
            const auto c = supermartingale_ratio_check(
                j, sched, outer, inner, derive_seed(opt.config.master_seed, 6));
            os << "supermartingale,j=" << j << ",b=" << c.b
               << ",ratio=" << c.ratio << ",within_4stderr="
               << (c.within(4.0) ? 1 : 0) << '\n';
            if (!c.within(4.0)) ++bad;
        }
        violations += bad;
    }
    {
        const auto c = submartingale_check(
            3, 2, outer, inner, derive_seed(opt.config.master_seed, 7));
        os << "submartingale,r=" << c.r << ",beta=" << c.beta
           << ",violations=" << c.violations << '\n';
        violations += c.violations;
    }

    os << "total_violations=" << violations << '\n';
    write_text_output(opt.config.out_path, os.str());
    return violations == 0 ? 0 : 1;
}

int cmd_events(CliOptions& opt) {
    finalize(opt);
    const EventFrequencyTable table = event_frequencies(opt.config);
    std::ostringstream os;
    write_event_table_csv(table, os);
    write_text_output(opt.config.out_path, os.str());
    const bool ok = table.union_bound_violations == 0 &&
                    table.t_cover_violations == 0 &&
                    table.v_inequality_all_ok &&
                    (table.w_inequality_all_ok || !table.w_bound_is_theorem);
    return ok ? 0 : 1;
}

int cmd_growth(CliOptions& opt) {
    finalize(opt);
    const GrowthReport rep = growth_report(opt.config);
    std::ostringstream os;
    write_growth_report(rep, os);
    write_text_output(opt.config.out_path, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random power-series coefficient laboratory"};
    app.require_subcommand(1);

    CliOptions opt;
    int n_oracle = 12, fast_N = 2048, y0 = 1;
    int n_a1 = 8, inner = 500, outer = 50;
    double q = 1.0, r = 1.0;
    int blocks = 20;
    std::vector<int> R_grid;

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coefficient study");
    add_common_flags(simulate, opt);
    simulate->add_option("--per-trial-out", opt.per_trial_out,
                         "stream per-trial rows to this path");

    auto* oracle = app.add_subcommand("oracle-check", "cross-check computation paths");
    add_common_flags(oracle, opt);
    oracle->add_option("--n-oracle", n_oracle, "partition-oracle degree cap");
    oracle->add_option("--fast-N", fast_N, "degree for the fast-path comparison");

    auto* moments = app.add_subcommand("moments", "first-moment curve vs (log n)^{-1/4}");
    add_common_flags(moments, opt);

    auto* decomp = app.add_subcommand("decompose", "split A(n) by largest part");
    add_common_flags(decomp, opt);
    decomp->add_option("--y0", y0, "largest-part cutoff");

    auto* blocks_cmd = app.add_subcommand("blocks", "print the block schedule");
    add_common_flags(blocks_cmd, opt);

    auto* chaos = app.add_subcommand("chaos", "chaos moment estimates");
    add_common_flags(chaos, opt);
    chaos->add_option("--q", q, "moment exponent in [1/2, 1]");
    chaos->add_option("--r", r, "circle radius in [1, e^{1/R}]");
    chaos->add_option("--blocks", blocks, "median-of-means blocks");
    chaos->add_option("--R-grid", R_grid, "truncation lengths");

    auto* conc = app.add_subcommand("concentration", "tail and martingale reports");
    add_common_flags(conc, opt);
    conc->add_option("--n-a1", n_a1, "coefficient index for the increment checks");
    conc->add_option("--inner", inner, "inner samples for nested checks");
    conc->add_option("--outer", outer, "outer trials for nested checks");

    auto* events = app.add_subcommand("events", "event frequency table");
    add_common_flags(events, opt);

    auto* growth = app.add_subcommand("growth", "growth statistic distribution");
    add_common_flags(growth, opt);
    growth->add_option("--n0", opt.config.growth_n0, "first index of the sup");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opt);
        if (oracle->parsed()) return cmd_oracle_check(opt, n_oracle, fast_N);
        if (moments->parsed()) return cmd_moments(opt);
        if (decomp->parsed()) return cmd_decompose(opt, y0);
        if (blocks_cmd->parsed()) return cmd_blocks(opt);
        if (chaos->parsed()) return cmd_chaos(opt, R_grid, q, r, blocks);
        if (conc->parsed()) return cmd_concentration(opt, n_a1, inner, outer);
        if (events->parsed()) return cmd_events(opt);
        if (growth->parsed()) return cmd_growth(opt);
    } catch (const rmc::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const rmc::contract_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const rmc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
