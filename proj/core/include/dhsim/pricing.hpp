#pragma once

#include <vector>

#include "dhsim/types.hpp"

namespace dhsim::pricing {

// Electricity-price-dependent heat bid of a CHP. Below the threshold
// elec_price <= alpha*rho_e the plant bids fuel cost net of electricity
// income; above it, the lost opportunity of selling heat instead of power.
// Continuous at the threshold (both branches equal alpha*rho_h there).
double chp_bid(const ChpParams& chp, double elec_price);

// Heat output cap after folding the fuel limit and power-to-heat coupling
// into a single per-hour bound: min(g_h_max, f_max / (rho_h + r*rho_e)).
double chp_heat_cap(const ChpParams& chp);

// Ambient-temperature price signal for self-scheduling producers:
// 380 * 0.92^T below 17.5 degC, zero at and above.
double price_signal(double ambient_temp);

// Affine-in-ambient COP with clamping.
double cop_at(const CopModel& model, double ambient_temp);
std::vector<double> cop_series(const CopModel& model, const std::vector<double>& ambient_temp);

// Excess-heat producers bid at zero in the market-participation clearing.
inline double eh_bid() { return 0.0; }

}  // namespace dhsim::pricing
