#include "dhsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dhsim/errors.hpp"

namespace dhsim::report {

namespace fs = std::filesystem;

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string capacity_tag(double capacity_mw) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", capacity_mw);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

double total(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

const char* kSchemaDoc = R"(# Output file schemas

All numeric values are fixed decimal with 6 places.

## hourly_<paradigm>_<capacity>.csv
One row per hour of the horizon for one paradigm (mp = market
participation, ss = self-scheduling) at one sweep capacity (total
excess-heat MW).

| column         | meaning                                            |
|----------------|----------------------------------------------------|
| timestamp      | naive local hour, YYYY-MM-DD HH:00                 |
| chp_heat       | total CHP heat output, MW                          |
| eh_generated   | total excess heat generated, MW                    |
| eh_wasted      | total excess heat vented to air, MW                |
| unsupplied     | curtailed load, MW                                 |
| market_price   | balance dual, currency/MWh                         |
| marginal_bid   | bid of the most expensive scheduled producer       |

## monthly_summary.csv
One row per (capacity, month).

| column        | meaning                                    |
|---------------|--------------------------------------------|
| capacity_mw   | sweep capacity                             |
| month         | calendar month, YYYY-MM                    |
| mp_chp_cost   | CHP generation cost, market participation  |
| ss_chp_cost   | CHP generation cost, self-scheduling       |
| suboptimality | ss_chp_cost - mp_chp_cost                  |
| mp_scheduled  | excess heat scheduled (G - W), MWh         |
| ss_scheduled  | excess heat scheduled (G - W), MWh         |
| mp_wasted     | excess heat wasted, MWh                    |
| ss_wasted     | excess heat wasted, MWh                    |
| mp_avg_price  | unweighted hourly mean market price        |
| ss_avg_price  | unweighted hourly mean market price        |

## sweep_summary.csv
One row per sweep capacity.

| column        | meaning                                 |
|---------------|-----------------------------------------|
| capacity      | total excess-heat capacity, MW          |
| mp_cost       | full-horizon CHP generation cost        |
| ss_cost       | full-horizon CHP generation cost        |
| suboptimality | ss_cost - mp_cost                       |
| mp_waste      | full-horizon wasted excess heat, MWh    |
| ss_waste      | full-horizon wasted excess heat, MWh    |
)";

// ---- minimal deterministic SVG chart helpers ----

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginL = 90, kMarginR = 30, kMarginT = 40, kMarginB = 70;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

struct Canvas {
    std::string body;

    void line(double x1, double y1, double x2, double y2, const char* stroke,
              const char* dash = nullptr) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"%s%s%s "
                      "stroke-width=\"1.5\"/>\n",
                      x1, y1, x2, y2, stroke, dash ? " stroke-dasharray=\"" : "", dash ? dash : "",
                      dash ? "\"" : "");
        body += buf;
    }
    void rect(double x, double y, double w, double h, const char* fill) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n",
                      x, y, w, h, fill);
        body += buf;
    }
    void text(double x, double y, const std::string& s, const char* anchor = "middle",
              int size = 12) {
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"%d\" "
                      "text-anchor=\"%s\">%s</text>\n",
                      x, y, size, anchor, s.c_str());
        body += buf;
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
        std::string s = "<polyline fill=\"none\" stroke=\"";
        s += stroke;
        s += "\" stroke-width=\"2\" points=\"";
        char buf[64];
        for (auto& [x, y] : pts) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
            s += buf;
        }
        s += "\"/>\n";
        body += s;
    }

    std::string finish(const std::string& title) const {
        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                      "viewBox=\"0 0 %d %d\">\n",
                      kWidth, kHeight, kWidth, kHeight);
        out += buf;
        out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        Canvas t;
        t.text(kWidth / 2.0, 24, title, "middle", 16);
        out += t.body;
        out += body;
        out += "</svg>\n";
        return out;
    }
};

struct Scale {
    double lo = 0.0, hi = 1.0;
    double px0, px1;
    double operator()(double v) const {
        double f = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px0 + f * (px1 - px0);
    }
};

Scale x_scale(double lo, double hi) { return {lo, hi, double(kMarginL), double(kWidth - kMarginR)}; }
Scale y_scale(double lo, double hi) { return {lo, hi, double(kHeight - kMarginB), double(kMarginT)}; }

void draw_axes(Canvas& c, const Scale& xs, const Scale& ys, const std::string& xlab,
               const std::string& ylab) {
    c.line(xs.px0, ys.px0, xs.px1, ys.px0, "#000");
    c.line(xs.px0, ys.px0, xs.px0, ys.px1, "#000");
    for (int k = 0; k <= 5; ++k) {
        double v = ys.lo + (ys.hi - ys.lo) * k / 5.0;
        double y = ys(v);
        c.line(xs.px0 - 4, y, xs.px0, y, "#000");
        c.text(xs.px0 - 8, y + 4, fmt("%.4g", v), "end", 11);
    }
    c.text((xs.px0 + xs.px1) / 2, kHeight - 20, xlab);
    c.text(20, (ys.px0 + ys.px1) / 2, ylab, "middle", 12);
}

void legend(Canvas& c, const std::vector<std::pair<std::string, const char*>>& entries) {
    double x = kMarginL + 10, y = kMarginT + 6;
    for (auto& [label, color] : entries) {
        c.rect(x, y - 9, 12, 12, color);
        c.text(x + 18, y + 1, label, "start", 11);
        y += 18;
    }
}

void write_svg(const fs::path& p, const std::string& content, std::vector<std::string>& manifest) {
    auto out = open_out(p);
    out << content;
    manifest.push_back(p.string());
}

}  // namespace

std::vector<std::string> write_results(const std::vector<sim::SweepPoint>& points,
                                       const TimeAxis& axis, const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::path base(out_dir);
    std::vector<std::string> manifest;

    {
        auto out = open_out(base / "output_schema.md");
        out << kSchemaDoc;
        manifest.push_back((base / "output_schema.md").string());
    }

    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        for (const auto* pair : {&p.mp, &p.ss}) {
            const ClearingResult& r = *pair;
            if (r.hours() == 0) continue;  // paradigm not run
            const char* tag = (pair == &p.mp) ? "mp" : "ss";
            fs::path file = base / ("hourly_" + std::string(tag) + "_" +
                                    capacity_tag(p.capacity_mw) + ".csv");
            auto out = open_out(file);
            out << "timestamp,chp_heat,eh_generated,eh_wasted,unsupplied,market_price,"
                   "marginal_bid\n";
            for (int t = 0; t < r.hours(); ++t) {
                double chp = 0.0, gen = 0.0, waste = 0.0;
                for (const auto& g : r.chp_heat) chp += g[t];
                for (const auto& g : r.eh_generated) gen += g[t];
                for (const auto& w : r.eh_wasted) waste += w[t];
                out << format_hour(axis.stamp(t)) << ',' << fixed6(chp) << ',' << fixed6(gen)
                    << ',' << fixed6(waste) << ',' << fixed6(r.unsupplied[t]) << ','
                    << fixed6(r.market_price[t]) << ',' << fixed6(r.marginal_bid[t]) << '\n';
            }
            manifest.push_back(file.string());
        }
    }

    {
        auto out = open_out(base / "monthly_summary.csv");
        out << "capacity_mw,month,mp_chp_cost,ss_chp_cost,suboptimality,mp_scheduled,"
               "ss_scheduled,mp_wasted,ss_wasted,mp_avg_price,ss_avg_price\n";
        for (const auto& p : points) {
            if (!p.report) continue;
            const ComparisonReport& rep = *p.report;
            for (std::size_t k = 0; k < rep.months.size(); ++k) {
                out << fixed6(p.capacity_mw) << ',' << month_key_label(rep.months[k]) << ','
                    << fixed6(rep.mp.monthly_chp_cost[k]) << ','
                    << fixed6(rep.ss.monthly_chp_cost[k]) << ','
                    << fixed6(rep.suboptimality_monthly[k]) << ','
                    << fixed6(rep.mp.monthly_scheduled_eh[k]) << ','
                    << fixed6(rep.ss.monthly_scheduled_eh[k]) << ','
                    << fixed6(rep.mp.monthly_wasted_eh[k]) << ','
                    << fixed6(rep.ss.monthly_wasted_eh[k]) << ','
                    << fixed6(rep.mp.monthly_avg_price[k]) << ','
                    << fixed6(rep.ss.monthly_avg_price[k]) << '\n';
            }
        }
        manifest.push_back((base / "monthly_summary.csv").string());
    }

    {
        auto out = open_out(base / "sweep_summary.csv");
        out << "capacity,mp_cost,ss_cost,suboptimality,mp_waste,ss_waste\n";
        for (const auto& p : points) {
            if (!p.report) continue;
            const ComparisonReport& rep = *p.report;
            out << fixed6(p.capacity_mw) << ',' << fixed6(rep.mp.total_chp_cost) << ','
                << fixed6(rep.ss.total_chp_cost) << ',' << fixed6(rep.suboptimality_total) << ','
                << fixed6(total(rep.mp.monthly_wasted_eh)) << ','
                << fixed6(total(rep.ss.monthly_wasted_eh)) << '\n';
        }
        manifest.push_back((base / "sweep_summary.csv").string());
    }

    return manifest;
}

std::vector<std::string> render_charts(const std::vector<sim::SweepPoint>& points,
                                       const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::path base(out_dir);
    std::vector<std::string> manifest;

    std::vector<const sim::SweepPoint*> ok;
    for (const auto& p : points)
        if (p.report) ok.push_back(&p);
    if (ok.empty()) return manifest;

    // 1. Full-horizon CHP cost vs capacity (two lines).
    {
        double cap_hi = 1.0, cost_hi = 1.0;
        for (auto* p : ok) {
            cap_hi = std::max(cap_hi, p->capacity_mw);
            cost_hi = std::max({cost_hi, p->report->mp.total_chp_cost,
                                p->report->ss.total_chp_cost});
        }
        Canvas c;
        auto xs = x_scale(0, cap_hi);
        auto ys = y_scale(0, cost_hi * 1.05);
        draw_axes(c, xs, ys, "installed excess-heat capacity [MW]", "CHP cost");
        std::vector<std::pair<double, double>> mp_pts, ss_pts;
        for (auto* p : ok) {
            mp_pts.push_back({xs(p->capacity_mw), ys(p->report->mp.total_chp_cost)});
            ss_pts.push_back({xs(p->capacity_mw), ys(p->report->ss.total_chp_cost)});
            c.text(xs(p->capacity_mw), ys.px0 + 16, fmt("%g", p->capacity_mw), "middle", 10);
        }
        c.polyline(mp_pts, kPalette[0]);
        c.polyline(ss_pts, kPalette[1]);
        legend(c, {{"market participation", kPalette[0]}, {"self-scheduling", kPalette[1]}});
        write_svg(base / "cost_vs_capacity.svg", c.finish("Full-horizon CHP generation cost"),
                  manifest);
    }

    const auto& months = ok.front()->report->months;
    auto month_ticks = [&](Canvas& c, const Scale& xs) {
        for (std::size_t k = 0; k < months.size(); ++k) {
            double x = xs(k + 0.5);
            c.text(x, kHeight - kMarginB + 16, month_key_label(months[k]), "middle", 9);
        }
    };

    // 2. Monthly suboptimality, grouped bars per capacity.
    {
        double hi = 1e-9;
        for (auto* p : ok)
            for (double v : p->report->suboptimality_monthly) hi = std::max(hi, std::abs(v));
        Canvas c;
        auto xs = x_scale(0, static_cast<double>(months.size()));
        auto ys = y_scale(std::min(0.0, -hi * 0.05), hi * 1.1);
        draw_axes(c, xs, ys, "month", "cost difference (ss - mp)");
        double group_w = (xs.px1 - xs.px0) / std::max<std::size_t>(1, months.size());
        double bar_w = group_w * 0.8 / ok.size();
        std::vector<std::pair<std::string, const char*>> leg;
        for (std::size_t s = 0; s < ok.size(); ++s) {
            const char* color = kPalette[s % kPaletteSize];
            leg.push_back({fmt("%g", ok[s]->capacity_mw) + " MW", color});
            for (std::size_t k = 0; k < months.size(); ++k) {
                double v = ok[s]->report->suboptimality_monthly[k];
                double x = xs(static_cast<double>(k)) + group_w * 0.1 + s * bar_w;
                double y0 = ys(0.0), y1 = ys(v);
                c.rect(x, std::min(y0, y1), bar_w, std::abs(y0 - y1), color);
            }
        }
        month_ticks(c, xs);
        legend(c, leg);
        write_svg(base / "monthly_suboptimality.svg",
                  c.finish("Monthly suboptimality of self-scheduling"), manifest);
    }

    // 3. Monthly scheduled (solid) and wasted (dashed) volumes per paradigm.
    {
        double hi = 1e-9;
        for (auto* p : ok)
            for (std::size_t k = 0; k < months.size(); ++k)
                hi = std::max({hi, p->report->mp.monthly_scheduled_eh[k],
                               p->report->ss.monthly_scheduled_eh[k],
                               p->report->mp.monthly_wasted_eh[k],
                               p->report->ss.monthly_wasted_eh[k]});
        Canvas c;
        auto xs = x_scale(0, static_cast<double>(months.size()));
        auto ys = y_scale(0, hi * 1.1);
        draw_axes(c, xs, ys, "month", "volume [MWh]");
        std::vector<std::pair<std::string, const char*>> leg;
        for (std::size_t s = 0; s < ok.size(); ++s) {
            const char* c_mp = kPalette[(2 * s) % kPaletteSize];
            const char* c_ss = kPalette[(2 * s + 1) % kPaletteSize];
            leg.push_back({fmt("%g", ok[s]->capacity_mw) + " MW mp", c_mp});
            leg.push_back({fmt("%g", ok[s]->capacity_mw) + " MW ss", c_ss});
            auto series = [&](const std::vector<double>& v) {
                std::vector<std::pair<double, double>> pts;
                for (std::size_t k = 0; k < months.size(); ++k)
                    pts.push_back({xs(k + 0.5), ys(v[k])});
                return pts;
            };
            c.polyline(series(ok[s]->report->mp.monthly_scheduled_eh), c_mp);
            c.polyline(series(ok[s]->report->ss.monthly_scheduled_eh), c_ss);
            // wasted volumes as thin dashed lines
            auto dash = [&](const std::vector<double>& v, const char* color) {
                auto pts = series(v);
                for (std::size_t k = 0; k + 1 < pts.size(); ++k)
                    c.line(pts[k].first, pts[k].second, pts[k + 1].first, pts[k + 1].second, color,
                           "4 3");
            };
            dash(ok[s]->report->mp.monthly_wasted_eh, c_mp);
            dash(ok[s]->report->ss.monthly_wasted_eh, c_ss);
        }
        month_ticks(c, xs);
        legend(c, leg);
        write_svg(base / "monthly_volumes.svg",
                  c.finish("Monthly scheduled (solid) and wasted (dashed) excess heat"), manifest);
    }

    // 4. Monthly average market prices.
    {
        double hi = 1e-9;
        for (auto* p : ok)
            for (std::size_t k = 0; k < months.size(); ++k)
                hi = std::max({hi, p->report->mp.monthly_avg_price[k],
                               p->report->ss.monthly_avg_price[k]});
        Canvas c;
        auto xs = x_scale(0, static_cast<double>(months.size()));
        auto ys = y_scale(0, hi * 1.1);
        draw_axes(c, xs, ys, "month", "avg price [currency/MWh]");
        std::vector<std::pair<std::string, const char*>> leg;
        for (std::size_t s = 0; s < ok.size(); ++s) {
            const char* c_mp = kPalette[(2 * s) % kPaletteSize];
            const char* c_ss = kPalette[(2 * s + 1) % kPaletteSize];
            leg.push_back({fmt("%g", ok[s]->capacity_mw) + " MW mp", c_mp});
            leg.push_back({fmt("%g", ok[s]->capacity_mw) + " MW ss", c_ss});
            std::vector<std::pair<double, double>> mp_pts, ss_pts;
            for (std::size_t k = 0; k < months.size(); ++k) {
                mp_pts.push_back({xs(k + 0.5), ys(ok[s]->report->mp.monthly_avg_price[k])});
                ss_pts.push_back({xs(k + 0.5), ys(ok[s]->report->ss.monthly_avg_price[k])});
            }
            c.polyline(mp_pts, c_mp);
            c.polyline(ss_pts, c_ss);
        }
        month_ticks(c, xs);
        legend(c, leg);
        write_svg(base / "monthly_prices.svg", c.finish("Monthly average market prices"), manifest);
    }

    return manifest;
}

}  // namespace dhsim::report
