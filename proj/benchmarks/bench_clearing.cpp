// Microbenchmarks for the hot paths: one 24 h clearing block per paradigm,
// the embedded LP solver, and the per-hour pricing primitives.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dhsim/clearing.hpp"
#include "dhsim/pricing.hpp"
#include "dhsim/sim.hpp"
#include "dhsim/time_axis.hpp"

namespace {

using namespace dhsim;

ScenarioInputs bench_scenario(int hours, int n_chps, int n_fleets) {
    ScenarioInputs s;
    s.name = "bench";
    s.axis.start = parse_hour("2019-01-07 00:00");
    s.axis.length = hours;
    s.axis.block_length = 24;

    s.heat_load.resize(hours);
    s.elec_price.resize(hours);
    s.ambient_temp.resize(hours);
    for (int t = 0; t < hours; ++t) {
        s.ambient_temp[t] = 5.0 + 5.0 * std::sin(t / 26.7) + 3.0 * std::sin(t / 3.8);
        s.heat_load[t] = 400.0 + 180.0 * std::sin(t / 26.7 + 1.0) + 90.0 * std::sin(t / 3.8 + 0.5);
        s.elec_price[t] = 35.0 + 10.0 * std::sin(t / 3.8 - 1.0) + 5.0 * std::sin(t / 26.7);
    }

    for (int i = 0; i < n_chps; ++i) {
        ChpParams c;
        c.id = "chp" + std::to_string(i);
        c.alpha = 8.0 + 12.0 * i;
        c.rho_e = 2.0 + 0.1 * i;
        c.rho_h = 1.0;
        c.r = 0.45;
        c.g_h_max = 250.0;
        c.f_max = 600.0;
        s.chps.push_back(c);
    }
    for (int e = 0; e < n_fleets; ++e) {
        ExcessHeatFleet f;
        f.id = "fleet" + std::to_string(e);
        f.unit_count = 2000;
        f.a_coef = 0.1;
        f.b_coef = 1.0 / 21.0;
        f.t_fridge_min = 2.0;
        f.t_fridge_max = 8.0;
        f.t_avg_min = 4.0;
        f.t_avg_max = 5.0;
        f.avg_window = 6;
        f.t_indoor = 10.0;
        f.g_max_unit = 30.0;
        f.ramp_frac = 0.25;
        f.t_fridge_init = 4.5;
        s.fleets.push_back(f);
    }
    return s;
}

std::vector<models::FleetState> fresh_states(const ScenarioInputs& s) {
    std::vector<models::FleetState> states;
    for (const auto& f : s.fleets) states.push_back({f.t_fridge_init, 0.0, false});
    return states;
}

void BM_ClearBlockMp(benchmark::State& state) {
    auto s = bench_scenario(24, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    auto states = fresh_states(s);
    for (auto _ : state) {
        auto out = clearing::clear_market_participation(s, {0, 24}, states);
        benchmark::DoNotOptimize(out.result.objective);
    }
}
BENCHMARK(BM_ClearBlockMp)->Args({3, 1})->Args({13, 1})->Args({13, 4});

void BM_SelfScheduleBlock(benchmark::State& state) {
    auto s = bench_scenario(24, 0, 1);
    auto cop = pricing::cop_series(s.cop, s.ambient_temp);
    std::vector<double> mu(24);
    for (int t = 0; t < 24; ++t) mu[t] = pricing::price_signal(s.ambient_temp[t]);
    models::FleetState st{s.fleets[0].t_fridge_init, 0.0, false};
    for (auto _ : state) {
        auto sched = clearing::self_schedule(s.fleets[0], cop, mu, s.elec_price, st);
        benchmark::DoNotOptimize(sched.generated.data());
    }
}
BENCHMARK(BM_SelfScheduleBlock);

void BM_RunParadigmWeekMp(benchmark::State& state) {
    auto s = bench_scenario(168, 3, 1);
    for (auto _ : state) {
        auto r = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
        benchmark::DoNotOptimize(r.objective);
    }
}
BENCHMARK(BM_RunParadigmWeekMp)->Unit(benchmark::kMillisecond);

void BM_ChpBid(benchmark::State& state) {
    ChpParams c;
    c.alpha = 20.0;
    c.rho_e = 2.0;
    c.rho_h = 1.0;
    c.r = 0.5;
    double lambda = 0.0;
    for (auto _ : state) {
        lambda += 0.25;
        if (lambda > 80.0) lambda = 0.0;
        benchmark::DoNotOptimize(pricing::chp_bid(c, lambda));
    }
}
BENCHMARK(BM_ChpBid);

void BM_MeritOrderOracle(benchmark::State& state) {
    std::vector<std::pair<double, double>> bids;
    for (int i = 0; i < 20; ++i) bids.push_back({5.0 + 3.0 * i, 40.0 + 7.0 * (i % 5)});
    for (auto _ : state) {
        auto res = clearing::merit_order_oracle(bids, 600.0, 5000.0);
        benchmark::DoNotOptimize(res.cost);
    }
}
BENCHMARK(BM_MeritOrderOracle);

}  // namespace

BENCHMARK_MAIN();
