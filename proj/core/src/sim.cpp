#include "dhsim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dhsim/errors.hpp"
#include "dhsim/pricing.hpp"

namespace dhsim::sim {

const char* to_string(Paradigm p) {
    return p == Paradigm::MarketParticipation ? "mp" : "ss";
}

namespace {

void append_block(ClearingResult& full, const ClearingResult& block) {
    auto cat = [](std::vector<double>& dst, const std::vector<double>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };
    for (std::size_t i = 0; i < full.chp_heat.size(); ++i) cat(full.chp_heat[i], block.chp_heat[i]);
    for (std::size_t e = 0; e < full.eh_generated.size(); ++e) {
        cat(full.eh_generated[e], block.eh_generated[e]);
        cat(full.eh_wasted[e], block.eh_wasted[e]);
        cat(full.eh_elec_load[e], block.eh_elec_load[e]);
        // Skip the block's initial temperature; it equals the carried value.
        full.fridge_temp[e].insert(full.fridge_temp[e].end(), block.fridge_temp[e].begin() + 1,
                                   block.fridge_temp[e].end());
    }
    cat(full.unsupplied, block.unsupplied);
    cat(full.market_price, block.market_price);
    cat(full.marginal_bid, block.marginal_bid);
    full.objective += block.objective;
}

}  // namespace

ClearingResult run_paradigm(const ScenarioInputs& s, Paradigm paradigm) {
    const int horizon = s.axis.length;
    const int block_len = s.whole_horizon ? horizon : s.axis.block_length;

    ClearingResult full;
    full.chp_heat.resize(s.chps.size());
    full.eh_generated.resize(s.fleets.size());
    full.eh_wasted.resize(s.fleets.size());
    full.eh_elec_load.resize(s.fleets.size());
    full.fridge_temp.resize(s.fleets.size());
    for (std::size_t e = 0; e < s.fleets.size(); ++e)
        full.fridge_temp[e].push_back(s.fleets[e].t_fridge_init);

    std::vector<models::FleetState> state(s.fleets.size());
    for (std::size_t e = 0; e < s.fleets.size(); ++e) {
        state[e].fridge_temp = s.fleets[e].t_fridge_init;
        state[e].ramp_active = false;  // ramp disabled at the horizon start
    }

    int block_index = 0;
    for (int begin = 0; begin < horizon; begin += block_len, ++block_index) {
        clearing::BlockRange block{begin, std::min(begin + block_len, horizon)};
        // Terminal condition at every seam: the block must hand its successor
        // a temperature inside the averaging band, or the successor's first
        // window average can be unreachable under the seam ramp limit.
        bool terminal_band = block.end < horizon;
        try {
            if (paradigm == Paradigm::MarketParticipation) {
                auto br = clearing::clear_market_participation(s, block, state, nullptr,
                                                               terminal_band);
                append_block(full, br.result);
                state = std::move(br.end_state);
            } else {
                auto cop = pricing::cop_series(
                    s.cop, std::vector<double>(s.ambient_temp.begin() + block.begin,
                                               s.ambient_temp.begin() + block.end));
                std::vector<double> mu(block.hours());
                for (int t = 0; t < block.hours(); ++t)
                    mu[t] = s.price_scale * pricing::price_signal(s.ambient_temp[block.begin + t]);
                std::vector<double> lam(s.elec_price.begin() + block.begin,
                                        s.elec_price.begin() + block.end);

                std::vector<clearing::FleetSchedule> schedules(s.fleets.size());
                for (std::size_t e = 0; e < s.fleets.size(); ++e)
                    schedules[e] =
                        clearing::self_schedule(s.fleets[e], cop, mu, lam, state[e], terminal_band);

                auto br = clearing::clear_residual(s, block, schedules);
                append_block(full, br.result);
                state = std::move(br.end_state);
            }
        } catch (const std::exception& e) {
            throw InvariantError(std::string(to_string(paradigm)) + " paradigm failed in block " +
                                 std::to_string(block_index) + " (hours " +
                                 std::to_string(block.begin) + ".." + std::to_string(block.end) +
                                 "): " + e.what());
        }
    }
    return full;
}

ComparisonReport compute_report(const ClearingResult& mp, const ClearingResult& ss,
                                const ScenarioInputs& s) {
    if (mp.hours() != s.axis.length || ss.hours() != s.axis.length)
        throw AxisMismatchError("compute_report: result horizon does not match the scenario axis");

    ComparisonReport rep;
    rep.months = s.axis.months();
    auto month_of = s.axis.month_of_hour();
    std::size_t n_months = rep.months.size();

    auto month_index = [&](int t) {
        return static_cast<std::size_t>(
            std::lower_bound(rep.months.begin(), rep.months.end(), month_of[t]) -
            rep.months.begin());
    };

    auto fill = [&](const ClearingResult& r, ParadigmMetrics& m, bool uniform_price_revenue) {
        m.monthly_chp_cost.assign(n_months, 0.0);
        m.monthly_scheduled_eh.assign(n_months, 0.0);
        m.monthly_wasted_eh.assign(n_months, 0.0);
        m.monthly_avg_price.assign(n_months, 0.0);
        std::vector<int> month_hours(n_months, 0);

        for (int t = 0; t < s.axis.length; ++t) {
            std::size_t k = month_index(t);
            ++month_hours[k];
            for (std::size_t i = 0; i < s.chps.size(); ++i)
                m.monthly_chp_cost[k] +=
                    pricing::chp_bid(s.chps[i], s.elec_price[t]) * r.chp_heat[i][t];
            for (std::size_t e = 0; e < s.fleets.size(); ++e) {
                double gen = r.eh_generated[e][t];
                double waste = r.eh_wasted[e][t];
                m.monthly_scheduled_eh[k] += gen - waste;
                m.monthly_wasted_eh[k] += waste;
                if (uniform_price_revenue) {
                    m.eh_revenue += r.market_price[t] * (gen - waste);
                } else {
                    // Self-scheduling pays the signal for all generated heat,
                    // wasted or not.
                    m.eh_revenue +=
                        s.price_scale * pricing::price_signal(s.ambient_temp[t]) * gen;
                }
            }
            m.monthly_avg_price[k] += r.market_price[t];
        }
        for (std::size_t k = 0; k < n_months; ++k)
            if (month_hours[k] > 0) m.monthly_avg_price[k] /= month_hours[k];
        m.total_chp_cost = 0.0;
        for (double c : m.monthly_chp_cost) m.total_chp_cost += c;
        m.objective = r.objective;
    };

    fill(mp, rep.mp, /*uniform_price_revenue=*/true);
    fill(ss, rep.ss, /*uniform_price_revenue=*/false);

    rep.suboptimality_total = rep.ss.total_chp_cost - rep.mp.total_chp_cost;
    rep.suboptimality_monthly.resize(n_months);
    for (std::size_t k = 0; k < n_months; ++k)
        rep.suboptimality_monthly[k] = rep.ss.monthly_chp_cost[k] - rep.mp.monthly_chp_cost[k];
    return rep;
}

ScenarioInputs scenario_at_capacity(const ScenarioInputs& base, double capacity_mw) {
    ScenarioInputs s = base;
    if (base.fleets.empty())
        throw InvariantError("scenario_at_capacity: base scenario has no fleet template");

    double base_total = 0.0;
    for (const auto& f : base.fleets) base_total += static_cast<double>(f.unit_count);

    s.fleets.clear();
    for (const auto& f : base.fleets) {
        double share = static_cast<double>(f.unit_count) / base_total;
        auto units = static_cast<long long>(
            std::llround(capacity_mw * share * kKwPerMw / f.g_max_unit));
        if (units < 1) continue;
        ExcessHeatFleet scaled = f;
        scaled.unit_count = units;
        s.fleets.push_back(scaled);
    }
    return s;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
    std::vector<SweepPoint> points(spec.capacities_mw.size());

    auto run_point = [&](std::size_t k) {
        SweepPoint& p = points[k];
        p.capacity_mw = spec.capacities_mw[k];
        try {
            ScenarioInputs s = scenario_at_capacity(spec.base, p.capacity_mw);
            p.unit_count = 0;
            for (const auto& f : s.fleets) p.unit_count += f.unit_count;
            p.mp = run_paradigm(s, Paradigm::MarketParticipation);
            p.ss = run_paradigm(s, Paradigm::SelfScheduling);
            p.report = compute_report(p.mp, p.ss, s);
        } catch (const std::exception& e) {
            p.error = e.what();
        }
    };

    int jobs = std::max(1, spec.jobs);
    if (jobs == 1 || points.size() <= 1) {
        for (std::size_t k = 0; k < points.size(); ++k) run_point(k);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next.fetch_add(1); k < points.size(); k = next.fetch_add(1))
                run_point(k);
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(jobs, static_cast<int>(points.size()));
        pool.reserve(n);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return points;
}

}  // namespace dhsim::sim
