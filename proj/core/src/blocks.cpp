#include "dhsim/blocks.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dhsim/pricing.hpp"

namespace dhsim::models {

ChpBlockVars build_chp_block(lp::LinearProgram& lp, const ChpParams& chp,
                             std::span<const double> bids) {
    if (bids.empty()) throw std::invalid_argument("build_chp_block: needs at least one hour");
    double cap = pricing::chp_heat_cap(chp);
    ChpBlockVars vars;
    vars.heat.reserve(bids.size());
    for (std::size_t t = 0; t < bids.size(); ++t)
        vars.heat.push_back(
            lp.add_variable(0.0, cap, bids[t], "g_" + chp.id + "_" + std::to_string(t)));
    return vars;
}

FleetBlockVars build_excess_heat_block(lp::LinearProgram& lp, const ExcessHeatFleet& fleet,
                                       std::span<const double> cop, const FleetState& state,
                                       bool terminal_band) {
    const int hours = static_cast<int>(cop.size());
    if (hours < 1) throw std::invalid_argument("build_excess_heat_block: needs at least one hour");
    for (double c : cop)
        if (!(c > 1.0))
            throw std::invalid_argument("build_excess_heat_block: COP must be > 1, got " +
                                        std::to_string(c));

    const double cap_mw = fleet.capacity_mw();
    const double ramp_mw = fleet.ramp_mw();
    // MW aggregate -> kW per unit, for the per-unit thermal recursion.
    const double per_unit = kKwPerMw / static_cast<double>(fleet.unit_count);

    FleetBlockVars v;
    v.generated.reserve(hours);
    v.elec_load.reserve(hours);
    v.fridge_temp.reserve(hours);
    const std::string& id = fleet.id;

    for (int t = 0; t < hours; ++t) {
        double lo = 0.0, hi = cap_mw;
        if (t == 0 && state.ramp_active) {
            lo = std::max(lo, state.last_output_mw - ramp_mw);
            hi = std::min(hi, state.last_output_mw + ramp_mw);
            if (lo > hi)
                throw std::invalid_argument("build_excess_heat_block: carried setpoint breaks ramp");
        }
        v.generated.push_back(lp.add_variable(lo, hi, 0.0, "G_" + id + "_" + std::to_string(t)));
        v.elec_load.push_back(lp.add_variable(0.0, cap_mw, 0.0, "L_" + id + "_" + std::to_string(t)));
        v.fridge_temp.push_back(lp.add_variable(fleet.t_fridge_min, fleet.t_fridge_max, 0.0,
                                                "T_" + id + "_" + std::to_string(t + 1)));
    }

    for (int t = 0; t < hours; ++t) {
        // G - COP * L = 0
        lp.add_eq_row(0.0, {{v.generated[t], 1.0}, {v.elec_load[t], -cop[t]}},
                      "cop_" + id + "_" + std::to_string(t));

        // T_{t+1} = T_t + A (T_indoor - T_t) - B * per_unit * (G - L)
        double k = fleet.b_coef * per_unit;
        double keep = 1.0 - fleet.a_coef;
        double rhs = fleet.a_coef * fleet.t_indoor;
        std::vector<std::pair<int, double>> coeffs{{v.fridge_temp[t], 1.0},
                                                   {v.generated[t], k},
                                                   {v.elec_load[t], -k}};
        if (t == 0) {
            rhs += keep * state.fridge_temp;
        } else {
            coeffs.push_back({v.fridge_temp[t - 1], -keep});
        }
        lp.add_eq_row(rhs, std::move(coeffs), "temp_" + id + "_" + std::to_string(t));

        if (t >= 1) {
            lp.add_row(-ramp_mw, ramp_mw, {{v.generated[t], 1.0}, {v.generated[t - 1], -1.0}},
                       "ramp_" + id + "_" + std::to_string(t));
        }
    }

    // Window-average band over consecutive avg_window-hour periods covering
    // the block (last window may be short). Uses end-of-hour temperatures.
    for (int w0 = 0; w0 < hours; w0 += fleet.avg_window) {
        int w1 = std::min(w0 + fleet.avg_window, hours);
        int n = w1 - w0;
        std::vector<std::pair<int, double>> coeffs;
        coeffs.reserve(n);
        for (int t = w0; t < w1; ++t) coeffs.push_back({v.fridge_temp[t], 1.0});
        lp.add_row(n * fleet.t_avg_min, n * fleet.t_avg_max, std::move(coeffs),
                   "avg_" + id + "_" + std::to_string(w0));
    }

    if (terminal_band)
        lp.set_bounds(v.fridge_temp[hours - 1], fleet.t_avg_min, fleet.t_avg_max);

    return v;
}

}  // namespace dhsim::models
