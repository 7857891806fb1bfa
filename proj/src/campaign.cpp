#include "rmc/campaign.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rmc/series.hpp"
#include "rmc/threads.hpp"

namespace rmc {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CoefficientSeries compute_series(const GaussianSequence& X, std::int64_t n_max,
                                 CampaignConfig::Method method) {
    return method == CampaignConfig::Method::naive
               ? exp_series_naive(X, static_cast<int>(n_max))
               : exp_series_fast(X, static_cast<int>(n_max));
}

}  // namespace

void CampaignConfig::validate() const {
    if (trials < 1) throw config_error("config: trials must be >= 1");
    if (n_max < 1) throw config_error("config: n_max must be >= 1");
    if (growth_n0 < 3) throw config_error("config: growth n0 must be >= 3");
    for (std::int64_t n : n_grid)
        if (n < 1 || n > n_max)
            throw config_error("config: n_grid entries must lie in [1, n_max]");
}

std::vector<std::int64_t> CampaignConfig::effective_grid() const {
    if (!n_grid.empty()) return n_grid;
    std::vector<std::int64_t> grid;
    for (std::int64_t n = 8; n <= std::min<std::int64_t>(n_max, 1 << 13); n *= 2)
        grid.push_back(n);
    if (grid.empty()) grid.push_back(n_max);
    return grid;
}

SimulationResult run_simulation(const CampaignConfig& config,
                                bool keep_per_trial) {
    config.validate();
    const auto grid = config.effective_grid();
    const std::size_t G = grid.size();
    const bool keep = keep_per_trial || !config.per_trial_path.empty();

    SimulationResult result;
    result.config = config;
    result.grid = grid;

    // Per-trial slots filled in parallel, reduced in trial order afterwards
    // so the aggregates do not depend on the thread count.
    std::vector<std::vector<std::complex<double>>> rows(
        static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, config.threads, [&](std::int64_t t) {
        const GaussianSequence X = sample_gaussians(
            static_cast<int>(config.n_max), config.master_seed,
            static_cast<std::uint64_t>(t));
        const CoefficientSeries series =
            compute_series(X, config.n_max, config.method);
        auto& row = rows[static_cast<std::size_t>(t)];
        row.resize(G);
        for (std::size_t g = 0; g < G; ++g)
            row[g] = series.at(static_cast<int>(grid[g]));
    });

    result.aggregates.resize(G);
    for (std::size_t g = 0; g < G; ++g) {
        RunningStat abs_stat, sq_stat;
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const double a = std::abs(rows[static_cast<std::size_t>(t)][g]);
            abs_stat.add(a);
            sq_stat.add(a * a);
        }
        SimulationAggregate& agg = result.aggregates[g];
        agg.n = grid[g];
        agg.count = config.trials;
        agg.mean_abs = abs_stat.mean();
        agg.mean_sq = sq_stat.mean();
        agg.stderr_sq = sq_stat.estimate().stderr_;
    }

    if (keep) result.per_trial = std::move(rows);
    return result;
}

std::vector<MomentCurveRow> moment_curve(const CampaignConfig& config) {
    const SimulationResult sim = run_simulation(config, true);
    std::vector<MomentCurveRow> rows;
    double first_mean = 0.0;
    double first_logn = 0.0;
    for (std::size_t g = 0; g < sim.grid.size(); ++g) {
        RunningStat abs_stat;
        for (std::int64_t t = 0; t < config.trials; ++t)
            abs_stat.add(std::abs(sim.per_trial[static_cast<std::size_t>(t)][g]));
        MomentCurveRow row;
        row.n = sim.grid[g];
        row.abs_estimate = abs_stat.estimate(config.master_seed);
        const double logn = std::log(static_cast<double>(row.n));
        row.reference = std::pow(logn, -0.25);
        row.degenerate = row.abs_estimate.mean < 1e-14;
        if (g == 0) {
            first_mean = row.abs_estimate.mean;
            first_logn = logn;
            row.ratio_vs_first = 1.0;
            row.reference_ratio = 1.0;
        } else {
            row.ratio_vs_first =
                first_mean > 0.0 ? row.abs_estimate.mean / first_mean : 0.0;
            row.reference_ratio = std::pow(first_logn / logn, 0.25);
        }
        rows.push_back(row);
    }
    return rows;
}

GrowthReport growth_report(const CampaignConfig& config) {
    config.validate();
    GrowthReport rep;
    rep.n0 = config.growth_n0;
    rep.n_max = config.n_max;
    rep.epsilon = config.schedule.epsilon;
    rep.threshold = config.thresholds.sup_threshold;
    rep.caveat =
        "desk-scale diagnostic: log log n is essentially constant over this "
        "range, so this summarizes fluctuations, it does not test the "
        "asymptotic statement";
    if (rep.n0 > rep.n_max)
        throw config_error("growth_report: n0 must be <= n_max");

    const double expo = 0.75 + config.schedule.epsilon;
    std::vector<double> g(static_cast<std::size_t>(config.trials), 0.0);
    parallel_for(config.trials, config.threads, [&](std::int64_t t) {
        const GaussianSequence X = sample_gaussians(
            static_cast<int>(config.n_max), config.master_seed,
            static_cast<std::uint64_t>(t));
        const CoefficientSeries series =
            compute_series(X, config.n_max, config.method);
        double best = 0.0;
        for (std::int64_t n = rep.n0; n <= config.n_max; ++n) {
            const double w = std::pow(std::log(static_cast<double>(n)), expo);
            best = std::max(best,
                            std::abs(series.at(static_cast<int>(n))) / w);
        }
        g[static_cast<std::size_t>(t)] = best;
    });

    rep.g = g;
    rep.q25 = quantile(g, 0.25);
    rep.median = quantile(g, 0.5);
    rep.q75 = quantile(g, 0.75);
    rep.q90 = quantile(g, 0.9);
    rep.q99 = quantile(g, 0.99);
    rep.max = quantile(g, 1.0);
    rep.exceed_count = 0;
    for (double v : g)
        if (v > rep.threshold) ++rep.exceed_count;
    return rep;
}

EventFrequencyTable event_frequencies(const CampaignConfig& config) {
    config.validate();
    const BlockSchedule sched = build_schedule(config.schedule);
    const std::int64_t sample_len =
        std::max(sched.X_ell(), sched.y(sched.J()));

    EventFrequencyTable table;
    table.trials = config.trials;
    table.w_bound_is_theorem = sched.y(0) == 1;

    std::vector<EventRecord> records(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, config.threads, [&](std::int64_t t) {
        const GaussianSequence X = sample_gaussians(
            static_cast<int>(sample_len), config.master_seed,
            static_cast<std::uint64_t>(t));
        records[static_cast<std::size_t>(t)] =
            evaluate_events(X, sched, config.thresholds);
    });

    std::int64_t b = 0, b0 = 0, b1 = 0, b2 = 0, b3 = 0;
    std::int64_t t_bar = 0, t2_bar = 0, s_bar = 0, i0 = 0;
    std::int64_t p1b = 0, p1t = 0, p2b = 0, p2t = 0;
    for (const EventRecord& r : records) {
        b += r.b_event;
        b0 += r.b_component[0];
        b1 += r.b_component[1];
        b2 += r.b_component[2];
        b3 += r.b_component[3];
        t_bar += !r.t_event;
        t2_bar += !r.t2_event;
        s_bar += !r.s_event;
        i0 += r.i0_event;
        p1b += r.p1_block_event;
        p1t += r.p1_tilde_event;
        p2b += r.p2_block_event;
        p2t += r.p2_tilde_event;

        const int comp_sum = static_cast<int>(r.b_component[0]) +
                             static_cast<int>(r.b_component[1]) +
                             static_cast<int>(r.b_component[2]) +
                             static_cast<int>(r.b_component[3]);
        if (static_cast<int>(r.b_event) > comp_sum)
            ++table.union_bound_violations;
        if (static_cast<int>(!r.t_event) >
            static_cast<int>(r.p1_block_event) + static_cast<int>(r.p1_tilde_event))
            ++table.t_cover_violations;
        if (static_cast<int>(!r.t2_event) >
            static_cast<int>(r.p2_block_event) + static_cast<int>(r.p2_tilde_event))
            ++table.t_cover_violations;
        if (!r.v_inequality_ok) table.v_inequality_all_ok = false;
        if (!r.w_inequality_ok) table.w_inequality_all_ok = false;
    }

    auto add_row = [&](const std::string& name, std::int64_t count) {
        EventFrequencyRow row;
        row.name = name;
        row.count = count;
        row.frequency =
            static_cast<double>(count) / static_cast<double>(config.trials);
        row.ci = wilson_interval(count, config.trials);
        table.rows.push_back(row);
    };
    add_row("B", b);
    add_row("B0", b0);
    add_row("B1", b1);
    add_row("B2", b2);
    add_row("B3", b3);
    add_row("T_bar", t_bar);
    add_row("T2_bar", t2_bar);
    add_row("S_bar", s_bar);
    add_row("A_I0", i0);
    add_row("P1_block", p1b);
    add_row("P1_tilde", p1t);
    add_row("P2_block", p2b);
    add_row("P2_tilde", p2t);
    return table;
}

void write_aggregate_csv(const SimulationResult& result, std::ostream& os) {
    os << "n,count,mean_abs,mean_sq,stderr\n";
    for (const SimulationAggregate& a : result.aggregates)
        os << a.n << ',' << a.count << ',' << fmt_double(a.mean_abs) << ','
           << fmt_double(a.mean_sq) << ',' << fmt_double(a.stderr_sq) << '\n';
}

void write_per_trial_csv(const SimulationResult& result, std::ostream& os) {
    os << "trial,n,re_A,im_A,abs_A\n";
    for (std::size_t t = 0; t < result.per_trial.size(); ++t)
        for (std::size_t g = 0; g < result.grid.size(); ++g) {
            const std::complex<double> a = result.per_trial[t][g];
            os << t << ',' << result.grid[g] << ',' << fmt_double(a.real())
               << ',' << fmt_double(a.imag()) << ',' << fmt_double(std::abs(a))
               << '\n';
        }
}

std::string config_to_json(const CampaignConfig& config) {
    nlohmann::json j;
    j["trials"] = config.trials;
    j["n_max"] = config.n_max;
    j["seed"] = config.master_seed;
    j["method"] =
        config.method == CampaignConfig::Method::naive ? "naive" : "fast";
    j["ell"] = config.schedule.ell;
    j["K"] = config.schedule.K;
    j["epsilon"] = config.schedule.epsilon;
    j["C0"] = config.schedule.C0;
    // thread count deliberately not echoed: outputs are invariant to it
    j["sup_threshold"] = config.thresholds.sup_threshold;
    j["component_threshold"] = config.thresholds.component_threshold;
    j["threshold_scale"] = config.thresholds.scale;
    return j.dump();
}

std::string simulation_to_json(const SimulationResult& result) {
    nlohmann::json j;
    j["version"] = kVersionTag;
    j["config"] = nlohmann::json::parse(config_to_json(result.config));
    nlohmann::json rows = nlohmann::json::array();
    for (const SimulationAggregate& a : result.aggregates) {
        nlohmann::json row;
        row["n"] = a.n;
        row["count"] = a.count;
        row["mean_abs"] = a.mean_abs;
        row["mean_sq"] = a.mean_sq;
        row["stderr"] = a.stderr_sq;
        rows.push_back(row);
    }
    j["aggregates"] = rows;
    return j.dump(2) + "\n";
}

void write_moment_curve_csv(const std::vector<MomentCurveRow>& rows,
                            std::ostream& os) {
    os << "n,mean_abs,stderr,reference,ratio_vs_first,reference_ratio,"
          "degenerate\n";
    for (const MomentCurveRow& r : rows)
        os << r.n << ',' << fmt_double(r.abs_estimate.mean) << ','
           << fmt_double(r.abs_estimate.stderr_) << ','
           << fmt_double(r.reference) << ',' << fmt_double(r.ratio_vs_first)
           << ',' << fmt_double(r.reference_ratio) << ','
           << (r.degenerate ? 1 : 0) << '\n';
}

void write_growth_report(const GrowthReport& report, std::ostream& os) {
    os << "# " << report.caveat << '\n';
    os << "n0,n_max,epsilon,threshold,trials,q25,median,q75,q90,q99,max,"
          "exceed_count\n";
    os << report.n0 << ',' << report.n_max << ',' << fmt_double(report.epsilon)
       << ',' << fmt_double(report.threshold) << ',' << report.g.size() << ','
       << fmt_double(report.q25) << ',' << fmt_double(report.median) << ','
       << fmt_double(report.q75) << ',' << fmt_double(report.q90) << ','
       << fmt_double(report.q99) << ',' << fmt_double(report.max) << ','
       << report.exceed_count << '\n';
}

void write_event_table_csv(const EventFrequencyTable& table, std::ostream& os) {
    os << "event,count,trials,frequency,ci_lo,ci_hi\n";
    for (const EventFrequencyRow& r : table.rows)
        os << r.name << ',' << r.count << ',' << table.trials << ','
           << fmt_double(r.frequency) << ',' << fmt_double(r.ci.lo) << ','
           << fmt_double(r.ci.hi) << '\n';
    os << "# union_bound_violations=" << table.union_bound_violations
       << " t_cover_violations=" << table.t_cover_violations
       << " v_inequality_ok=" << (table.v_inequality_all_ok ? 1 : 0)
       << " w_inequality_ok=" << (table.w_inequality_all_ok ? 1 : 0) << '\n';
}

void write_text_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open output file: " + path);
    os << content;
    if (!os) throw io_error("failed writing output file: " + path);
}

}  // namespace rmc
