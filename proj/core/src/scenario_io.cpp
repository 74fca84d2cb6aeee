#include "dhsim/scenario_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dhsim/errors.hpp"
#include "dhsim/ingest.hpp"

namespace dhsim::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ChpParams chp_from_json(const json& j) {
    ChpParams c;
    c.id = j.at("id").get<std::string>();
    c.rho_e = j.at("rho_e").get<double>();
    c.rho_h = j.at("rho_h").get<double>();
    c.r = j.at("r").get<double>();
    c.f_max = j.at("f_max").get<double>();
    c.g_h_max = j.at("g_h_max").get<double>();
    c.alpha = j.at("alpha").get<double>();
    return c;
}

json chp_to_json(const ChpParams& c) {
    return json{{"id", c.id},     {"rho_e", c.rho_e},     {"rho_h", c.rho_h}, {"r", c.r},
                {"f_max", c.f_max}, {"g_h_max", c.g_h_max}, {"alpha", c.alpha}};
}

ExcessHeatFleet fleet_from_json(const json& j) {
    ExcessHeatFleet f;
    f.id = j.at("id").get<std::string>();
    f.unit_count = j.at("unit_count").get<long long>();
    f.a_coef = j.at("a_coef").get<double>();
    f.b_coef = j.at("b_coef").get<double>();
    f.t_fridge_min = j.at("t_fridge_min").get<double>();
    f.t_fridge_max = j.at("t_fridge_max").get<double>();
    f.t_avg_min = j.at("t_avg_min").get<double>();
    f.t_avg_max = j.at("t_avg_max").get<double>();
    f.avg_window = j.value("avg_window", 6);
    f.t_indoor = j.value("t_indoor", 25.0);
    f.g_max_unit = j.at("g_max_unit").get<double>();
    f.ramp_frac = j.at("ramp_frac").get<double>();
    f.t_fridge_init = j.value("t_fridge_init", 0.5 * (f.t_avg_min + f.t_avg_max));
    return f;
}

json fleet_to_json(const ExcessHeatFleet& f) {
    return json{{"id", f.id},
                {"unit_count", f.unit_count},
                {"a_coef", f.a_coef},
                {"b_coef", f.b_coef},
                {"t_fridge_min", f.t_fridge_min},
                {"t_fridge_max", f.t_fridge_max},
                {"t_avg_min", f.t_avg_min},
                {"t_avg_max", f.t_avg_max},
                {"avg_window", f.avg_window},
                {"t_indoor", f.t_indoor},
                {"g_max_unit", f.g_max_unit},
                {"ramp_frac", f.ramp_frac},
                {"t_fridge_init", f.t_fridge_init}};
}

}  // namespace

ScenarioInputs load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    ScenarioInputs s;
    try {
        s.name = doc.value("name", fs::path(path).stem().string());
        s.axis.block_length = doc.value("block_length", 24);
        s.penalty_unsupplied = doc.value("penalty_unsupplied", 5000.0);
        s.price_scale = doc.value("price_scale", 1.0);
        s.whole_horizon = doc.value("whole_horizon", false);

        if (doc.contains("cop")) {
            const json& c = doc["cop"];
            s.cop.cop0 = c.value("cop0", 3.0);
            s.cop.cop1 = c.value("cop1", 0.05);
            s.cop.cop_min = c.value("cop_min", 1.5);
            s.cop.cop_max = c.value("cop_max", 5.0);
        }

        for (const json& j : doc.value("chps", json::array())) s.chps.push_back(chp_from_json(j));
        for (const json& j : doc.value("fleets", json::array()))
            s.fleets.push_back(fleet_from_json(j));

        const json& series = doc.at("series");
        fs::path base = fs::path(path).parent_path();
        auto resolve = [&](const std::string& rel) { return (base / rel).string(); };

        std::vector<ingest::RawSeries> raw;
        raw.push_back(ingest::load_series(resolve(series.at("heat_load").get<std::string>())));
        raw.push_back(ingest::load_series(resolve(series.at("elec_price").get<std::string>())));
        raw.push_back(ingest::load_series(resolve(series.at("ambient_temp").get<std::string>())));

        auto aligned = ingest::align(raw, s.axis.block_length);
        s.axis = aligned.axis;
        s.axis.block_length = doc.value("block_length", 24);
        s.heat_load = std::move(aligned.values[0]);
        s.elec_price = std::move(aligned.values[1]);
        s.ambient_temp = std::move(aligned.values[2]);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return s;
}

std::string save_scenario(const ScenarioInputs& s, const std::string& dir) {
    fs::create_directories(dir);
    fs::path base(dir);

    auto write = [&](const std::string& file, const std::vector<double>& values) {
        ingest::RawSeries raw;
        raw.values = values;
        raw.timestamps.resize(values.size());
        for (std::size_t t = 0; t < values.size(); ++t)
            raw.timestamps[t] = s.axis.start + static_cast<HourStamp>(t);
        ingest::write_series(raw, (base / file).string());
    };
    write("heat_load.csv", s.heat_load);
    write("elec_price.csv", s.elec_price);
    write("ambient_temp.csv", s.ambient_temp);

    json doc;
    doc["name"] = s.name;
    doc["block_length"] = s.axis.block_length;
    doc["penalty_unsupplied"] = s.penalty_unsupplied;
    doc["price_scale"] = s.price_scale;
    doc["whole_horizon"] = s.whole_horizon;
    doc["cop"] = json{{"cop0", s.cop.cop0},
                      {"cop1", s.cop.cop1},
                      {"cop_min", s.cop.cop_min},
                      {"cop_max", s.cop.cop_max}};
    doc["chps"] = json::array();
    for (const auto& c : s.chps) doc["chps"].push_back(chp_to_json(c));
    doc["fleets"] = json::array();
    for (const auto& f : s.fleets) doc["fleets"].push_back(fleet_to_json(f));
    doc["series"] = json{{"heat_load", "heat_load.csv"},
                         {"elec_price", "elec_price.csv"},
                         {"ambient_temp", "ambient_temp.csv"}};

    fs::path out_path = base / "scenario.json";
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write scenario file: " + out_path.string());
    out << doc.dump(2) << '\n';
    return out_path.string();
}

}  // namespace dhsim::io
