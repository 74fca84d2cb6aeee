#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhsim/clearing.hpp"
#include "dhsim/errors.hpp"
#include "dhsim/pricing.hpp"
#include "dhsim/report.hpp"
#include "dhsim/scenario_io.hpp"
#include "dhsim/sim.hpp"

namespace fs = std::filesystem;
using namespace dhsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation or clearing failure
constexpr int kExitUsage = 2;   // usage or IO failure

std::string default_out_dir() {
    const char* env = std::getenv("DHSIM_OUT_DIR");
    return env && *env ? env : "out";
}

ScenarioInputs load_or_exit(const std::string& path) {
    try {
        return io::load_scenario(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitUsage);
    }
}

int validate_or_fail(const ScenarioInputs& s) {
    auto violations = validate_scenario(s);
    if (violations.empty()) return kExitOk;
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return kExitDomain;
}

// "start:stop:step" (inclusive of stop when aligned) or "a,b,c".
std::vector<double> parse_capacities(const std::string& text) {
    std::vector<double> caps;
    auto parse_num = [](const std::string& tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;  // stod throws on a fully unparsable token
        }
        if (tok.empty() || used != tok.size())
            throw CLI::ValidationError("capacities", "bad number '" + tok + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        auto c1 = text.find(':');
        auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw CLI::ValidationError("capacities", "expected start:stop:step");
        double start = parse_num(text.substr(0, c1));
        double stop = parse_num(text.substr(c1 + 1, c2 - c1 - 1));
        double step = parse_num(text.substr(c2 + 1));
        if (step <= 0) throw CLI::ValidationError("capacities", "step must be positive");
        for (double v = start; v <= stop + 1e-9; v += step) caps.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            if (!tok.empty()) caps.push_back(parse_num(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    for (double c : caps)
        if (c < 0) throw CLI::ValidationError("capacities", "capacities must be >= 0");
    if (caps.empty()) throw CLI::ValidationError("capacities", "no capacities given");
    return caps;
}

void print_summary(const char* tag, const ClearingResult& r) {
    double waste = 0.0, mean_price = 0.0;
    for (const auto& w : r.eh_wasted)
        for (double v : w) waste += v;
    for (double p : r.market_price) mean_price += p;
    if (r.hours() > 0) mean_price /= r.hours();
    std::printf("%s: total cost %.2f, wasted heat %.2f MWh, mean price %.4f\n", tag, r.objective,
                waste, mean_price);
}

void dump_first_block_lps(const ScenarioInputs& s, const std::string& out_dir) {
    fs::create_directories(out_dir);
    clearing::BlockRange block{0, std::min(s.axis.block_length, s.axis.length)};
    std::vector<models::FleetState> state(s.fleets.size());
    for (std::size_t e = 0; e < s.fleets.size(); ++e)
        state[e] = {s.fleets[e].t_fridge_init, 0.0, false};

    std::ofstream mp(fs::path(out_dir) / "lp_dump_mp.lp");
    clearing::clear_market_participation(s, block, state, &mp);

    auto cop = pricing::cop_series(
        s.cop, std::vector<double>(s.ambient_temp.begin(), s.ambient_temp.begin() + block.end));
    std::vector<double> mu(block.hours());
    for (int t = 0; t < block.hours(); ++t)
        mu[t] = s.price_scale * pricing::price_signal(s.ambient_temp[t]);
    std::vector<double> lam(s.elec_price.begin(), s.elec_price.begin() + block.end);
    std::vector<clearing::FleetSchedule> schedules(s.fleets.size());
    for (std::size_t e = 0; e < s.fleets.size(); ++e)
        schedules[e] = clearing::self_schedule(s.fleets[e], cop, mu, lam, state[e]);
    std::ofstream ss(fs::path(out_dir) / "lp_dump_ss.lp");
    clearing::clear_residual(s, block, schedules, &ss);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"District-heating excess-heat scheduling and pricing simulator"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "reserved; the engine is deterministic")->group("");

    std::string scenario_path;
    std::string out_dir = default_out_dir();

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", scenario_path, "scenario JSON document")->required();

    auto* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("scenario", scenario_path, "scenario JSON document")->required();
    std::string paradigm = "both";
    bool whole_horizon = false, dump_lp = false;
    double price_scale = -1.0;
    run->add_option("--paradigm", paradigm, "mp | ss | both")
        ->check(CLI::IsMember({"mp", "ss", "both"}));
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--whole-horizon", whole_horizon, "solve the horizon as one LP");
    run->add_flag("--dump-lp", dump_lp, "dump the first clearing block in LP format");
    run->add_option("--price-scale", price_scale, "multiplier on the price signal");

    auto* sweep = app.add_subcommand("sweep", "run a capacity sweep");
    sweep->add_option("scenario", scenario_path, "scenario JSON document")->required();
    std::string capacities = "0:2100:300";
    int jobs = 1;
    sweep->add_option("--capacities", capacities, "comma list or start:stop:step (MW)");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "parallel sweep workers")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (validate->parsed()) {
        ScenarioInputs s = load_or_exit(scenario_path);
        int rc = validate_or_fail(s);
        if (rc == kExitOk) std::printf("OK: scenario '%s', %d hours\n", s.name.c_str(), s.axis.length);
        return rc;
    }

    if (run->parsed()) {
        ScenarioInputs s = load_or_exit(scenario_path);
        if (whole_horizon) s.whole_horizon = true;
        if (price_scale >= 0.0) s.price_scale = price_scale;
        if (int rc = validate_or_fail(s); rc != kExitOk) return rc;

        try {
            if (dump_lp) dump_first_block_lps(s, out_dir);

            sim::SweepPoint point;
            point.capacity_mw = 0.0;
            for (const auto& f : s.fleets) point.capacity_mw += f.capacity_mw();
            for (const auto& f : s.fleets) point.unit_count += f.unit_count;

            if (paradigm == "mp" || paradigm == "both")
                point.mp = sim::run_paradigm(s, sim::Paradigm::MarketParticipation);
            if (paradigm == "ss" || paradigm == "both")
                point.ss = sim::run_paradigm(s, sim::Paradigm::SelfScheduling);
            if (paradigm == "both") point.report = sim::compute_report(point.mp, point.ss, s);

            std::vector<sim::SweepPoint> points{std::move(point)};
            auto manifest = report::write_results(points, s.axis, out_dir);
            if (points[0].report) {
                auto charts = report::render_charts(points, out_dir);
                manifest.insert(manifest.end(), charts.begin(), charts.end());
            }

            if (points[0].mp.hours() > 0) print_summary("mp", points[0].mp);
            if (points[0].ss.hours() > 0) print_summary("ss", points[0].ss);
            if (points[0].report)
                std::printf("suboptimality (ss - mp CHP cost): %.2f\n",
                            points[0].report->suboptimality_total);
            std::printf("wrote %zu files to %s\n", manifest.size(), out_dir.c_str());
            return kExitOk;
        } catch (const IoError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitDomain;
        }
    }

    // sweep
    ScenarioInputs s = load_or_exit(scenario_path);
    if (int rc = validate_or_fail(s); rc != kExitOk) return rc;
    try {
        sim::SweepSpec spec;
        spec.base = std::move(s);
        spec.capacities_mw = parse_capacities(capacities);
        spec.jobs = jobs;

        auto points = sim::run_sweep(spec);
        auto manifest = report::write_results(points, spec.base.axis, out_dir);
        auto charts = report::render_charts(points, out_dir);
        manifest.insert(manifest.end(), charts.begin(), charts.end());

        bool any_failed = false;
        std::printf("%10s  %10s  %s\n", "capacity", "units", "status");
        for (const auto& p : points) {
            bool failed = !p.error.empty();
            any_failed |= failed;
            std::printf("%10g  %10lld  %s\n", p.capacity_mw, p.unit_count,
                        failed ? p.error.c_str() : "ok");
        }
        std::printf("wrote %zu files to %s\n", manifest.size(), out_dir.c_str());
        return any_failed ? kExitDomain : kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
