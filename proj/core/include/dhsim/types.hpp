#pragma once

#include <string>
#include <vector>

#include "dhsim/time_axis.hpp"

namespace dhsim {

// Fleet capacities are stored per-unit in kW; everything crossing module
// boundaries is in MW. The conversion factor is exactly 1000.
inline constexpr double kKwPerMw = 1000.0;

struct ChpParams {
    std::string id;
    double rho_e = 0.0;    // fuel per MWh electricity
    double rho_h = 0.0;    // fuel per MWh heat
    double r = 0.0;        // minimum power-to-heat ratio
    double f_max = 0.0;    // max fuel intake, MWh-fuel/h
    double g_h_max = 0.0;  // max heat output, MW
    double alpha = 0.0;    // fuel price, currency/MWh-fuel
};

// Aggregated identical cooling-based excess-heat producers.
struct ExcessHeatFleet {
    std::string id;
    long long unit_count = 1;
    double a_coef = 0.1;            // fridge-to-indoor coupling, 1/h
    double b_coef = 1.0 / 21.0;     // degC per kWh net heat extracted (per unit)
    double t_fridge_min = 2.0;      // degC, hard bounds
    double t_fridge_max = 8.0;
    double t_avg_min = 4.0;         // degC, window-average band
    double t_avg_max = 5.0;
    int avg_window = 6;             // hours per averaging period
    double t_indoor = 25.0;         // degC
    double g_max_unit = 30.0;       // kW per unit
    double ramp_frac = 0.25;        // per hour, fraction of g_max_unit
    double t_fridge_init = 4.5;     // degC

    double capacity_mw() const { return unit_count * g_max_unit / kKwPerMw; }
    double ramp_mw() const { return ramp_frac * capacity_mw(); }
};

struct CopModel {
    double cop0 = 3.0;
    double cop1 = 0.05;  // per degC ambient
    double cop_min = 1.5;
    double cop_max = 5.0;
};

struct ScenarioInputs {
    std::string name;
    TimeAxis axis;
    std::vector<double> heat_load;     // MW
    std::vector<double> elec_price;    // currency/MWh
    std::vector<double> ambient_temp;  // degC
    double penalty_unsupplied = 5000.0;
    double price_scale = 1.0;          // multiplier on the self-scheduling price signal
    bool whole_horizon = false;        // solve the horizon as one LP instead of chained blocks
    std::vector<ChpParams> chps;
    std::vector<ExcessHeatFleet> fleets;
    CopModel cop;
};

// Per-hour schedules and prices over a horizon (or one block of it).
struct ClearingResult {
    std::vector<std::vector<double>> chp_heat;     // [chp][t], MW
    std::vector<std::vector<double>> eh_generated; // [fleet][t], MW
    std::vector<std::vector<double>> eh_wasted;    // [fleet][t], MW
    std::vector<std::vector<double>> eh_elec_load; // [fleet][t], MW
    std::vector<std::vector<double>> fridge_temp;  // [fleet][t+1], degC (index 0 = initial)
    std::vector<double> unsupplied;                // [t], MW
    std::vector<double> market_price;              // [t], balance dual, currency/MWh
    std::vector<double> marginal_bid;              // [t], bid of most expensive scheduled producer
    double objective = 0.0;                        // Sum c_it G_it + c^U U_t (excess heat bids are zero)

    int hours() const { return static_cast<int>(unsupplied.size()); }
};

struct ParadigmMetrics {
    double total_chp_cost = 0.0;
    std::vector<double> monthly_chp_cost;
    std::vector<double> monthly_scheduled_eh;  // MWh of (G - W)
    std::vector<double> monthly_wasted_eh;     // MWh of W
    std::vector<double> monthly_avg_price;     // unweighted hourly mean of market price
    double eh_revenue = 0.0;
    double objective = 0.0;  // full clearing objective incl. curtailment penalty
};

struct ComparisonReport {
    std::vector<MonthKey> months;
    ParadigmMetrics mp;
    ParadigmMetrics ss;
    double suboptimality_total = 0.0;            // ss - mp, CHP generation cost
    std::vector<double> suboptimality_monthly;
};

// Returns an empty list iff every domain invariant holds; each violation
// names the offending field and rule.
std::vector<std::string> validate_scenario(const ScenarioInputs& s);

}  // namespace dhsim
