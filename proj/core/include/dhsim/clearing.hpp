#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "dhsim/blocks.hpp"
#include "dhsim/types.hpp"

namespace dhsim::clearing {

// Hour range [begin, end) into the scenario's series.
struct BlockRange {
    int begin = 0;
    int end = 0;
    int hours() const { return end - begin; }
};

struct BlockResult {
    ClearingResult result;  // sized to the block
    std::vector<models::FleetState> end_state;
};

// Joint LP clearing with excess-heat fleets as market participants (zero
// bids). The hourly balance rows are priced; market_price carries their
// duals and marginal_bid the bid of the most expensive scheduled producer.
// terminal_band applies the chained-block terminal condition of
// models::build_excess_heat_block; set it whenever another block follows.
BlockResult clear_market_participation(const ScenarioInputs& s, BlockRange block,
                                       const std::vector<models::FleetState>& state,
                                       std::ostream* lp_dump = nullptr,
                                       bool terminal_band = false);

struct FleetSchedule {
    std::vector<double> generated;    // MW per hour
    std::vector<double> elec_load;    // MW per hour
    std::vector<double> fridge_temp;  // degC, initial + end of each hour
    models::FleetState end_state;
};

// Private producer optimization against the price signal mu: minimize
// electricity cost minus heat income over the fleet's feasible region.
// Degenerate optima are resolved by a tiny secondary cost on generation.
FleetSchedule self_schedule(const ExcessHeatFleet& fleet, std::span<const double> cop,
                            std::span<const double> mu, std::span<const double> elec_price,
                            const models::FleetState& state, bool terminal_band = false);

// Residual clearing: the self-scheduled output is a fixed, zero-bid,
// must-take input; CHPs fill the remaining load and waste absorbs surplus.
BlockResult clear_residual(const ScenarioInputs& s, BlockRange block,
                           const std::vector<FleetSchedule>& fixed_eh,
                           std::ostream* lp_dump = nullptr);

struct MeritOrderResult {
    std::vector<double> dispatch;
    double unsupplied = 0.0;
    double price = 0.0;
    double cost = 0.0;
};

// Independent single-hour dispatch oracle: fill load in ascending bid
// order; price is the bid of the last dispatched unit (the penalty when
// load is curtailed, zero when there is no load).
MeritOrderResult merit_order_oracle(const std::vector<std::pair<double, double>>& bids,
                                    double load, double penalty);

}  // namespace dhsim::clearing
