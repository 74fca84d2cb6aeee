#pragma once

#include <string>

#include "dhsim/types.hpp"

namespace dhsim::io {

// Loads a scenario document (JSON key-value tree) and the three hourly CSV
// series it references (paths resolved relative to the document), aligns
// the series to their common window, and returns the assembled inputs.
// Throws IoError / ParseError and the ingest errors.
ScenarioInputs load_scenario(const std::string& path);

// Writes the scenario document plus its three series files into `dir`
// (created if missing). Returns the path of the written document.
// load_scenario(save_scenario(s, dir)) round-trips every field.
std::string save_scenario(const ScenarioInputs& s, const std::string& dir);

}  // namespace dhsim::io
