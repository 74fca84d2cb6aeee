#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "dhsim/pricing.hpp"
#include "dhsim/types.hpp"

namespace dhsim {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioInputs& s) {
    std::vector<std::string> v;
    auto bad = [&v](const std::string& msg) { v.push_back(msg); };

    if (s.axis.length <= 0) bad("axis.length must be positive");
    if (s.axis.block_length <= 0) bad("axis.block_length must be positive");

    auto check_len = [&](const std::vector<double>& series, const char* name) {
        if (static_cast<int>(series.size()) != s.axis.length)
            bad(std::string(name) + " length mismatch: expected " + std::to_string(s.axis.length) +
                ", got " + std::to_string(series.size()));
    };
    check_len(s.heat_load, "heat_load");
    check_len(s.elec_price, "elec_price");
    check_len(s.ambient_temp, "ambient_temp");

    for (double l : s.heat_load) {
        if (l < 0.0) {
            bad("heat_load must be nonnegative elementwise");
            break;
        }
    }

    for (const auto& chp : s.chps) {
        auto field = [&](const char* f) { return "chp '" + chp.id + "': " + f; };
        if (!(chp.rho_e > 0.0)) bad(field("rho_e must be > 0"));
        if (!(chp.rho_h > 0.0)) bad(field("rho_h must be > 0"));
        if (chp.r < 0.0) bad(field("r must be >= 0"));
        if (!(chp.f_max > 0.0)) bad(field("f_max must be > 0"));
        if (chp.g_h_max < 0.0) bad(field("g_h_max must be >= 0"));
        if (chp.alpha < 0.0) bad(field("alpha must be >= 0"));
    }

    for (const auto& f : s.fleets) {
        auto field = [&](const std::string& msg) { return "fleet '" + f.id + "': " + msg; };
        if (f.unit_count < 1) bad(field("unit_count must be >= 1"));
        if (!(f.g_max_unit > 0.0)) bad(field("g_max_unit must be > 0"));
        if (!(f.ramp_frac > 0.0 && f.ramp_frac <= 1.0)) bad(field("ramp_frac must be in (0, 1]"));
        if (f.avg_window < 1) bad(field("avg_window must be >= 1"));
        if (!(f.t_fridge_min <= f.t_avg_min && f.t_avg_min <= f.t_avg_max &&
              f.t_avg_max <= f.t_fridge_max))
            bad(field(fmt("average band [%g, %g] outside hard band", f.t_avg_min, f.t_avg_max)));
        if (!(f.t_fridge_min <= f.t_fridge_init && f.t_fridge_init <= f.t_fridge_max))
            bad(field(fmt("t_fridge_init %g outside hard band", f.t_fridge_init)));
    }

    if (!(s.cop.cop_min >= 1.0)) bad("cop.cop_min must be >= 1.0");
    if (!(s.cop.cop_max >= s.cop.cop_min)) bad("cop.cop_max must be >= cop_min");
    if (!s.fleets.empty()) {
        // COP <= 1 would make net cooling impossible; reject up front.
        double min_cop = s.cop.cop_max;
        for (double temp : s.ambient_temp) min_cop = std::min(min_cop, pricing::cop_at(s.cop, temp));
        if (!(min_cop > 1.0)) bad(fmt("cop: evaluated COP reaches %g (must stay > 1)", min_cop));

        // The fleet must be able to hold the average band: at t_avg_max the
        // worst-case heat influx cannot exceed the best-case extraction, or
        // the fridge temperature inevitably escapes and clearing becomes
        // infeasible after a few blocks.
        if (min_cop > 1.0) {
            for (const auto& f : s.fleets) {
                double influx = f.a_coef * (f.t_indoor - f.t_avg_max);
                double extraction = f.b_coef * f.g_max_unit * (1.0 - 1.0 / min_cop);
                if (influx > extraction)
                    bad("fleet '" + f.id +
                        fmt("': cannot sustain the average band (heat influx %g degC/h exceeds "
                            "max extraction %g degC/h)",
                            influx, extraction));
            }
        }
    }

    // The curtailment penalty must dominate every CHP bid over the horizon.
    double max_bid = 0.0;
    for (const auto& chp : s.chps)
        for (double lam : s.elec_price) max_bid = std::max(max_bid, pricing::chp_bid(chp, lam));
    if (!(s.penalty_unsupplied > max_bid))
        bad(fmt("penalty_unsupplied %g does not exceed the maximum CHP bid %g", s.penalty_unsupplied,
                max_bid));

    if (s.price_scale < 0.0) bad("price_scale must be >= 0");

    return v;
}

}  // namespace dhsim
