#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "dhsim/pricing.hpp"
#include "dhsim/sim.hpp"
#include "test_util.hpp"

using namespace dhsim;

namespace {

double nansum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("paradigms coincide without excess heat") {
    auto s = testutil::synthetic_scenario(21, 72, 3, 0);
    auto mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    auto ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
    REQUIRE(mp.hours() == 72);
    REQUIRE(ss.hours() == 72);
    CHECK(mp.objective == doctest::Approx(ss.objective));
    for (int t = 0; t < 72; ++t) {
        CHECK(mp.market_price[t] == doctest::Approx(ss.market_price[t]));
        CHECK(mp.unsupplied[t] == doctest::Approx(ss.unsupplied[t]));
        for (std::size_t i = 0; i < s.chps.size(); ++i)
            CHECK(mp.chp_heat[i][t] == doctest::Approx(ss.chp_heat[i][t]));
    }
}

TEST_CASE("fleet state is carried across block seams") {
    auto s = testutil::synthetic_scenario(22, 48, 3, 1, 100.0, 500.0, 45.0);
    for (auto paradigm : {sim::Paradigm::MarketParticipation, sim::Paradigm::SelfScheduling}) {
        auto r = sim::run_paradigm(s, paradigm);
        REQUIRE(r.fridge_temp[0].size() == 49);
        CHECK(r.fridge_temp[0][0] == doctest::Approx(s.fleets[0].t_fridge_init));

        // the thermal recursion must hold at every hour, including hour 24
        const auto& f = s.fleets[0];
        double per_unit = kKwPerMw / static_cast<double>(f.unit_count);
        for (int t = 0; t < 48; ++t) {
            double net = (r.eh_generated[0][t] - r.eh_elec_load[0][t]) * per_unit;
            double expect = r.fridge_temp[0][t] + f.a_coef * (f.t_indoor - r.fridge_temp[0][t]) -
                            f.b_coef * net;
            CHECK(r.fridge_temp[0][t + 1] == doctest::Approx(expect).epsilon(1e-6));
        }
        // the seam ramp limit binds between hour 23 and 24
        for (int t = 1; t < 48; ++t)
            CHECK(std::fabs(r.eh_generated[0][t] - r.eh_generated[0][t - 1]) <=
                  f.ramp_mw() + 1e-6);
    }
}

TEST_CASE("whole-horizon clearing never loses to chained blocks") {
    auto s = testutil::synthetic_scenario(23, 48, 3, 1, 100.0, 500.0, 45.0);
    auto chained = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    s.whole_horizon = true;
    auto whole = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    CHECK(whole.objective <= chained.objective + 1e-6 * (1.0 + std::fabs(chained.objective)));
}

TEST_CASE("comparison report: zero fleets give zero suboptimality") {
    auto s = testutil::synthetic_scenario(24, 72, 3, 0);
    auto mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    auto ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
    auto rep = sim::compute_report(mp, ss, s);
    CHECK(rep.suboptimality_total == doctest::Approx(0.0));
    for (double v : rep.suboptimality_monthly) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("two-hour hand case: suboptimality is the bid spread on shifted heat") {
    ScenarioInputs s;
    s.axis.start = parse_hour("2019-01-01 00:00");
    s.axis.length = 2;
    s.axis.block_length = 2;
    s.heat_load = {150.0, 80.0};
    s.elec_price = {30.0, 30.0};
    s.ambient_temp = {15.0, 5.0};  // signal favors hour 1, the cheap-chp hour
    s.chps.push_back(testutil::flat_bid_chp("cheap", 10.0, 100.0));
    s.chps.push_back(testutil::flat_bid_chp("dear", 50.0, 100.0));
    ExcessHeatFleet f = testutil::reference_fleet("f", 1000);
    f.avg_window = 2;
    f.ramp_frac = 1.0;
    f.g_max_unit = 20.0;   // 20 MW, always inframarginal
    f.t_avg_min = 4.5;     // binding band: total cooling is limited, so the
    f.t_avg_max = 5.0;     // paradigms must choose which hour gets it
    s.fleets.push_back(f);
    REQUIRE(validate_scenario(s).empty());

    auto mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    auto ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
    auto rep = sim::compute_report(mp, ss, s);

    // marginal plants by construction: "dear" (bid 50) in hour 0, "cheap"
    // (bid 10) in hour 1; joint clearing prefers displacing the dear one
    double shifted0 = mp.eh_generated[0][0] - ss.eh_generated[0][0];
    double shifted1 = mp.eh_generated[0][1] - ss.eh_generated[0][1];
    CHECK(shifted0 > 0.5);  // mp leans on hour 0, ss on hour 1
    CHECK(rep.suboptimality_total ==
          doctest::Approx(50.0 * shifted0 + 10.0 * shifted1).epsilon(1e-9));
    CHECK(rep.suboptimality_total > 0.0);
}

TEST_CASE("revenue rules: ss is paid for waste, mp is not") {
    ScenarioInputs s;
    s.axis.start = parse_hour("2019-01-01 00:00");
    s.axis.length = 6;
    s.axis.block_length = 6;
    s.heat_load.assign(6, 0.0);       // everything generated is surplus
    s.elec_price.assign(6, 1.0);
    s.ambient_temp.assign(6, 0.0);    // mu = 380, cooling is highly profitable
    s.fleets.push_back(testutil::reference_fleet("f", 500));

    auto mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    auto ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
    auto rep = sim::compute_report(mp, ss, s);

    double ss_gen = nansum(ss.eh_generated[0]);
    CHECK(ss_gen > 1.0);
    CHECK(nansum(ss.eh_wasted[0]) == doctest::Approx(ss_gen).epsilon(1e-9));
    // independent recomputation of the two payment rules
    double mu = pricing::price_signal(0.0);
    CHECK(rep.ss.eh_revenue == doctest::Approx(mu * ss_gen).epsilon(1e-9));
    double mp_expected = 0.0;
    for (int t = 0; t < 6; ++t)
        mp_expected += mp.market_price[t] * (mp.eh_generated[0][t] - mp.eh_wasted[0][t]);
    CHECK(rep.mp.eh_revenue == doctest::Approx(mp_expected).epsilon(1e-9));
    CHECK(std::fabs(rep.mp.eh_revenue) <= 1e-6);  // scheduled volume is zero
}

TEST_CASE("monthly aggregates sum to horizon totals") {
    auto s = testutil::synthetic_scenario(26, 24 * 60, 3, 1, 200.0, 900.0, 80.0);
    auto mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
    auto ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
    auto rep = sim::compute_report(mp, ss, s);
    REQUIRE(rep.months.size() == 3);  // Jan + Feb + 24 h of Mar

    for (const ParadigmMetrics* m : {&rep.mp, &rep.ss}) {
        CHECK(nansum(m->monthly_chp_cost) == doctest::Approx(m->total_chp_cost).epsilon(1e-9));
    }
    double mp_gen = 0.0, mp_waste = 0.0;
    for (int t = 0; t < mp.hours(); ++t) {
        mp_gen += mp.eh_generated[0][t] - mp.eh_wasted[0][t];
        mp_waste += mp.eh_wasted[0][t];
    }
    CHECK(nansum(rep.mp.monthly_scheduled_eh) == doctest::Approx(mp_gen).epsilon(1e-9));
    CHECK(nansum(rep.mp.monthly_wasted_eh) == doctest::Approx(mp_waste).epsilon(1e-9));
    CHECK(rep.suboptimality_total ==
          doctest::Approx(nansum(rep.suboptimality_monthly)).epsilon(1e-9));
    CHECK(rep.suboptimality_total ==
          doctest::Approx(rep.ss.total_chp_cost - rep.mp.total_chp_cost).epsilon(1e-9));
}

TEST_CASE("capacity resizing rounds to whole units") {
    auto base = testutil::synthetic_scenario(27, 24, 2, 1);
    auto at10 = sim::scenario_at_capacity(base, 10.0);
    REQUIRE(at10.fleets.size() == 1);
    CHECK(at10.fleets[0].unit_count == 333);  // round(10 * 1000 / 30)
    auto at0 = sim::scenario_at_capacity(base, 0.0);
    CHECK(at0.fleets.empty());
}

TEST_CASE("sweep: deterministic under parallelism, monotone in capacity") {
    sim::SweepSpec spec;
    spec.base = testutil::synthetic_scenario(28, 168, 3, 1, 150.0, 700.0, 60.0);
    spec.capacities_mw = {0.0, 30.0, 60.0};

    spec.jobs = 1;
    auto serial = sim::run_sweep(spec);
    spec.jobs = 3;
    auto parallel = sim::run_sweep(spec);

    REQUIRE(serial.size() == 3);
    REQUIRE(parallel.size() == 3);
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CAPTURE(k);
        REQUIRE(serial[k].error.empty());
        REQUIRE(parallel[k].error.empty());
        CHECK(serial[k].mp.objective == parallel[k].mp.objective);  // bitwise
        CHECK(serial[k].ss.objective == parallel[k].ss.objective);
        CHECK(serial[k].capacity_mw == parallel[k].capacity_mw);
    }

    // capacity 0: no suboptimality; larger zero-bid capacity can only help mp
    REQUIRE(serial[0].report.has_value());
    CHECK(serial[0].report->suboptimality_total == doctest::Approx(0.0));
    CHECK(serial[1].mp.objective <= serial[0].mp.objective + 1e-6);
    CHECK(serial[2].mp.objective <= serial[1].mp.objective + 1e-6);
    for (const auto& p : serial) {
        REQUIRE(p.report.has_value());
        CHECK(p.report->suboptimality_total >= -1e-6 * (1.0 + std::fabs(p.mp.objective)));
    }
}

TEST_CASE("sweep survives a failing point") {
    sim::SweepSpec spec;
    spec.base = testutil::synthetic_scenario(29, 48, 2, 1, 100.0, 400.0, 30.0);
    spec.base.fleets[0].t_indoor = 25.0;  // unsustainable band: blocks go infeasible
    spec.capacities_mw = {0.0, 30.0};
    spec.jobs = 2;
    auto points = sim::run_sweep(spec);
    REQUIRE(points.size() == 2);
    CHECK(points[0].error.empty());     // no fleet at capacity 0
    CHECK(!points[1].error.empty());
}
