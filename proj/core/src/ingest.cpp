#include "dhsim/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dhsim/errors.hpp"

namespace dhsim::ingest {

RawSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    // Tolerate UTF-8 BOM and trailing CR.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "timestamp,value")
        throw ParseError(path + ": expected header 'timestamp,value', got '" + line + "'");

    RawSeries s;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": missing comma");
        std::string ts_text = line.substr(0, comma);
        std::string val_text = line.substr(comma + 1);

        HourStamp ts;
        try {
            ts = parse_hour(ts_text);
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }

        char* endp = nullptr;
        errno = 0;
        double v = std::strtod(val_text.c_str(), &endp);
        if (endp == val_text.c_str() || *endp != '\0' || errno == ERANGE)
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed value '" +
                             val_text + "'");

        if (!s.timestamps.empty()) {
            HourStamp prev = s.timestamps.back();
            if (ts <= prev)
                throw NonMonotonicError(path + ":" + std::to_string(lineno) +
                                        ": timestamp " + format_hour(ts) +
                                        " not after " + format_hour(prev));
            if (ts != prev + 1)
                throw GapError(path + ":" + std::to_string(lineno) + ": missing hour(s) between " +
                               format_hour(prev) + " and " + format_hour(ts));
        }
        s.timestamps.push_back(ts);
        s.values.push_back(v);
    }
    if (s.values.empty()) throw ParseError(path + ": no data rows");
    return s;
}

void write_series(const RawSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write series file: " + path);
    out << "timestamp,value\n";
    char buf[64];
    for (int t = 0; t < series.length(); ++t) {
        // 17 significant digits round-trip doubles exactly.
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[t]);
        out << format_hour(series.timestamps[t]) << ',' << buf << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Aligned align(const std::vector<RawSeries>& series, int block_length) {
    if (series.empty()) throw NoOverlapError("align: no series given");
    HourStamp lo = series[0].start();
    HourStamp hi = series[0].end();
    for (const auto& s : series) {
        lo = std::max(lo, s.start());
        hi = std::min(hi, s.end());
    }
    if (hi < lo) throw NoOverlapError("align: series windows do not overlap");

    Aligned out;
    out.axis.start = lo;
    out.axis.length = static_cast<int>(hi - lo + 1);
    out.axis.block_length = block_length;
    out.values.reserve(series.size());
    for (const auto& s : series) {
        auto offset = static_cast<std::size_t>(lo - s.start());
        out.values.emplace_back(s.values.begin() + offset,
                                s.values.begin() + offset + out.axis.length);
    }
    return out;
}

}  // namespace dhsim::ingest
