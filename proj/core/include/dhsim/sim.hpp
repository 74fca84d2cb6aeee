#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhsim/clearing.hpp"
#include "dhsim/types.hpp"

namespace dhsim::sim {

enum class Paradigm { MarketParticipation, SelfScheduling };

const char* to_string(Paradigm p);

// Chains clearing blocks over the whole horizon, carrying fleet state
// (fridge temperature, last setpoint) across block seams. For
// self-scheduling, the price signal is evaluated from ambient temperature
// and scaled by the scenario's price_scale before each fleet optimizes.
ClearingResult run_paradigm(const ScenarioInputs& s, Paradigm paradigm);

ComparisonReport compute_report(const ClearingResult& mp, const ClearingResult& ss,
                                const ScenarioInputs& s);

struct SweepSpec {
    std::vector<double> capacities_mw;  // total excess-heat MW per point
    ScenarioInputs base;
    int jobs = 1;
};

// The base scenario with its fleets resized to a total capacity; capacity 0
// drops the fleets entirely. Multi-fleet bases split capacity in proportion
// to their configured unit counts.
ScenarioInputs scenario_at_capacity(const ScenarioInputs& base, double capacity_mw);

struct SweepPoint {
    double capacity_mw = 0.0;
    long long unit_count = 0;
    std::optional<ComparisonReport> report;
    ClearingResult mp;
    ClearingResult ss;
    std::string error;  // nonempty when this point failed
};

// One point per capacity, deterministic ordering regardless of job count;
// per-capacity failures are captured without aborting the sweep.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

}  // namespace dhsim::sim
