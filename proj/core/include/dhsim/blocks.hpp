#pragma once

#include <span>
#include <vector>

#include "dhsim/lp.hpp"
#include "dhsim/types.hpp"

namespace dhsim::models {

// Carried state between consecutive clearing blocks of one paradigm.
struct FleetState {
    double fridge_temp = 4.5;       // degC at the block start
    double last_output_mw = 0.0;    // aggregate pump output in the hour before the block
    bool ramp_active = false;       // false only at the very start of a horizon
};

struct ChpBlockVars {
    std::vector<int> heat;  // one variable per hour, MW
};

struct FleetBlockVars {
    std::vector<int> generated;   // G, MW aggregate
    std::vector<int> elec_load;   // L, MW aggregate
    std::vector<int> fridge_temp; // T at end of each hour, degC
};

// One box-bounded heat variable per hour with the given bid as cost.
// The CHP feasible region collapses to per-hour bounds, so there is no
// intertemporal coupling.
ChpBlockVars build_chp_block(lp::LinearProgram& lp, const ChpParams& chp,
                             std::span<const double> bids);

// Fleet variables and constraints for one block: COP coupling G = COP*L,
// fridge temperature recursion, hard and window-average temperature bands,
// pump capacity and ramp limits (including the seam against the previous
// block's last setpoint). Aggregate variables are in MW; the recursion is
// scaled to per-unit kW so the per-unit thermal coefficients apply.
// Requires every COP > 1 (otherwise there is no net cooling).
//
// terminal_band: additionally pins the end-of-block temperature into the
// averaging band. Chained block solves need this terminal condition so an
// optimal block cannot hand its successor a state from which the successor's
// first window average is unreachable (receding-horizon recursive
// feasibility); single-block and whole-horizon solves leave it off.
FleetBlockVars build_excess_heat_block(lp::LinearProgram& lp, const ExcessHeatFleet& fleet,
                                       std::span<const double> cop, const FleetState& state,
                                       bool terminal_band = false);

}  // namespace dhsim::models
