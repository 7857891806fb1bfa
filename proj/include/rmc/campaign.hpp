#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmc/diagnostics.hpp"
#include "rmc/schedule.hpp"
#include "rmc/stats.hpp"

namespace rmc {

inline constexpr const char* kVersionTag = "rmc 0.1.0";

// Reproducible Monte Carlo campaigns: one config in, deterministic tables
// out, independent of the thread count.

struct CampaignConfig {
    std::int64_t trials = 1000;
    std::int64_t n_max = 1 << 13;
    std::uint64_t master_seed = 1;
    enum class Method { naive, fast };
    Method method = Method::fast;
    ScheduleConfig schedule;       // ell, K, epsilon, C0
    EventThresholds thresholds;
    int threads = 0;               // 0 -> RMC_THREADS env, then hardware
    std::string out_path;          // "" -> stdout
    std::string per_trial_path;    // optional per-trial rows
    enum class Format { csv, json };
    Format format = Format::csv;
    std::vector<std::int64_t> n_grid;  // empty -> log-spaced 2^3..2^13 capped
    std::int64_t growth_n0 = 8;        // growth statistic starts here (>= 3)

    void validate() const;
    std::vector<std::int64_t> effective_grid() const;
};

struct SimulationAggregate {
    std::int64_t n = 0;
    std::int64_t count = 0;
    double mean_abs = 0.0;
    double mean_sq = 0.0;
    double stderr_sq = 0.0;  // standard error of mean_sq
};

struct SimulationResult {
    CampaignConfig config;
    std::vector<std::int64_t> grid;
    std::vector<SimulationAggregate> aggregates;
    // per_trial[t][g] = A(grid[g]) in trial t; filled when requested
    std::vector<std::vector<std::complex<double>>> per_trial;
};

SimulationResult run_simulation(const CampaignConfig& config,
                                bool keep_per_trial = false);

struct MomentCurveRow {
    std::int64_t n = 0;
    MCEstimate abs_estimate;
    double reference = 0.0;        // (log n)^{-1/4}
    double ratio_vs_first = 0.0;   // est(n) / est(n_first)
    double reference_ratio = 0.0;  // (log n_first / log n)^{1/4}
    bool degenerate = false;       // flagged when the estimate is ~0
};
std::vector<MomentCurveRow> moment_curve(const CampaignConfig& config);

struct GrowthReport {
    std::int64_t n0 = 0;
    std::int64_t n_max = 0;
    double epsilon = 0.0;
    double threshold = 0.0;  // exceedance cutoff (the sup-event constant)
    std::vector<double> g;   // per-trial max_n |A(n)| / (log n)^{3/4+eps}
    double q25 = 0.0, median = 0.0, q75 = 0.0, q90 = 0.0, q99 = 0.0, max = 0.0;
    std::int64_t exceed_count = 0;
    std::string caveat;
};
GrowthReport growth_report(const CampaignConfig& config);

struct EventFrequencyRow {
    std::string name;
    std::int64_t count = 0;
    double frequency = 0.0;
    WilsonInterval ci;
};

struct EventFrequencyTable {
    std::int64_t trials = 0;
    std::vector<EventFrequencyRow> rows;
    // per-trial set inclusions; any nonzero count is an invariant violation
    std::int64_t union_bound_violations = 0;  // 1[B] <= sum_r 1[B_r]
    std::int64_t t_cover_violations = 0;      // 1[!T] <= 1[P1] + 1[P1~] (and V2)
    bool v_inequality_all_ok = true;
    bool w_inequality_all_ok = true;
    // the W <= V2/(2 y0) report is a theorem only at y0 = 1; for larger y0 a
    // failure is a property of the displayed constant, not a bug
    bool w_bound_is_theorem = true;
};
EventFrequencyTable event_frequencies(const CampaignConfig& config);

// Writers. Doubles are printed with %.17g so identical campaigns produce
// byte-identical files.
void write_aggregate_csv(const SimulationResult& result, std::ostream& os);
void write_per_trial_csv(const SimulationResult& result, std::ostream& os);
std::string simulation_to_json(const SimulationResult& result);
void write_moment_curve_csv(const std::vector<MomentCurveRow>& rows,
                            std::ostream& os);
void write_growth_report(const GrowthReport& report, std::ostream& os);
void write_event_table_csv(const EventFrequencyTable& table, std::ostream& os);

// Writes to config.out_path ("" -> the provided stream); throws io_error with
// the path on failure.
void write_text_output(const std::string& path, const std::string& content);

std::string config_to_json(const CampaignConfig& config);

}  // namespace rmc
