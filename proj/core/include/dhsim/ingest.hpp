#pragma once

#include <string>
#include <vector>

#include "dhsim/time_axis.hpp"

namespace dhsim::ingest {

// Hourly time series as read from disk: strictly increasing hourly
// timestamps, no gaps. Gap-filling is a preprocessing concern outside
// this tool, so gaps are an error, never interpolated.
struct RawSeries {
    std::vector<HourStamp> timestamps;
    std::vector<double> values;

    int length() const { return static_cast<int>(values.size()); }
    HourStamp start() const { return timestamps.front(); }
    HourStamp end() const { return timestamps.back(); }  // inclusive
};

// Reads a CSV with header "timestamp,value". Throws ParseError, GapError,
// or NonMonotonicError.
RawSeries load_series(const std::string& path);

void write_series(const RawSeries& series, const std::string& path);

struct Aligned {
    TimeAxis axis;
    std::vector<std::vector<double>> values;  // one array per input series
};

// Restricts all series to their common window. Throws NoOverlapError when
// the intersection is empty. Aligning already-aligned series is a no-op.
Aligned align(const std::vector<RawSeries>& series, int block_length = 24);

}  // namespace dhsim::ingest
