#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rmc/campaign.hpp"

using namespace rmc;

namespace {

CampaignConfig small_config() {
    CampaignConfig c;
    c.trials = 200;
    c.n_max = 64;
    c.master_seed = 0x1234;
    c.n_grid = {8, 16, 64};
    return c;
}

std::string aggregate_csv(const SimulationResult& r) {
    std::ostringstream os;
    write_aggregate_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("identical configs give byte-identical tables") {
    auto c = small_config();
    const auto a = run_simulation(c);
    const auto b = run_simulation(c);
    CHECK(aggregate_csv(a) == aggregate_csv(b));

    c.threads = 3;
    const auto threaded = run_simulation(c);
    CHECK(aggregate_csv(a) == aggregate_csv(threaded));
}

TEST_CASE("naive and fast methods agree to solver precision") {
    auto c = small_config();
    c.method = CampaignConfig::Method::naive;
    const auto a = run_simulation(c);
    c.method = CampaignConfig::Method::fast;
    const auto b = run_simulation(c);
    for (std::size_t g = 0; g < a.aggregates.size(); ++g) {
        CHECK(a.aggregates[g].mean_sq ==
              doctest::Approx(b.aggregates[g].mean_sq).epsilon(1e-9));
    }
}

TEST_CASE("second moment of A(n) sits near one") {
    auto c = small_config();
    c.trials = 3000;
    const auto r = run_simulation(c);
    for (const auto& agg : r.aggregates) {
        CHECK(std::abs(agg.mean_sq - 1.0) <= 5.0 * agg.stderr_sq);
        // Cauchy-Schwarz: E|A| <= sqrt(E|A|^2)
        CHECK(agg.mean_abs <= std::sqrt(agg.mean_sq) * (1.0 + 1e-12));
    }
}

TEST_CASE("halved-and-merged aggregation stays within 1e-12") {
    auto c = small_config();
    const auto full = run_simulation(c, true);
    for (std::size_t g = 0; g < full.grid.size(); ++g) {
        RunningStat lo, hi;
        for (std::int64_t t = 0; t < c.trials; ++t) {
            const double a =
                std::abs(full.per_trial[static_cast<std::size_t>(t)][g]);
            (t < c.trials / 2 ? lo : hi).add(a * a);
        }
        lo.merge(hi);
        CHECK(std::abs(lo.mean() - full.aggregates[g].mean_sq) <= 1e-12);
    }
}

TEST_CASE("config validation") {
    CampaignConfig c;
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), config_error);
    c = CampaignConfig{};
    c.n_grid = {1 << 20};
    c.n_max = 16;
    CHECK_THROWS_AS(c.validate(), config_error);
    c = CampaignConfig{};
    c.growth_n0 = 2;
    CHECK_THROWS_AS(c.validate(), config_error);
}

TEST_CASE("moment curve references") {
    auto c = small_config();
    c.trials = 400;
    c.n_grid = {16, 64};
    const auto rows = moment_curve(c);
    CHECK(rows.size() == 2);
    CHECK(rows[0].reference ==
          doctest::Approx(std::pow(std::log(16.0), -0.25)).epsilon(1e-12));
    CHECK(rows[1].reference_ratio ==
          doctest::Approx(std::pow(std::log(16.0) / std::log(64.0), 0.25))
              .epsilon(1e-12));
    CHECK(!rows[0].degenerate);
}

TEST_CASE("growth report is ordered and non-negative") {
    auto c = small_config();
    c.trials = 100;
    c.n_max = 128;
    const auto rep = growth_report(c);
    CHECK(rep.g.size() == 100);
    for (double v : rep.g) CHECK(v >= 0.0);
    CHECK(rep.q25 <= rep.median);
    CHECK(rep.median <= rep.q75);
    CHECK(rep.q75 <= rep.q90);
    CHECK(rep.q90 <= rep.q99);
    CHECK(rep.q99 <= rep.max);
    CHECK(!rep.caveat.empty());
}

TEST_CASE("event frequencies preserve the set inclusions") {
    CampaignConfig c;
    c.trials = 60;
    c.master_seed = 0xE11E;
    c.schedule = {.ell = 2, .K = 2.0, .epsilon = 0.25};
    const auto table = event_frequencies(c);
    CHECK(table.trials == 60);
    CHECK(table.union_bound_violations == 0);
    CHECK(table.t_cover_violations == 0);
    CHECK(table.v_inequality_all_ok);
    CHECK(table.w_inequality_all_ok);
    for (const auto& row : table.rows) {
        CHECK(row.frequency >= 0.0);
        CHECK(row.frequency <= 1.0);
        CHECK(row.ci.lo <= row.frequency + 1e-12);
        CHECK(row.ci.hi >= row.frequency - 1e-12);
    }
}

TEST_CASE("json summary carries the version tag and config echo") {
    auto c = small_config();
    c.trials = 20;
    const auto r = run_simulation(c);
    const std::string json = simulation_to_json(r);
    CHECK(json.find(kVersionTag) != std::string::npos);
    CHECK(json.find("\"seed\": 4660") != std::string::npos);
    CHECK(json.find("mean_sq") != std::string::npos);
}

TEST_CASE("per-trial csv schema") {
    auto c = small_config();
    c.trials = 3;
    const auto r = run_simulation(c, true);
    std::ostringstream os;
    write_per_trial_csv(r, os);
    const std::string text = os.str();
    CHECK(text.rfind("trial,n,re_A,im_A,abs_A\n", 0) == 0);
}
