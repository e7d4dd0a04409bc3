#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lppl {

// One daily observation. `date` is a proleptic Gregorian ordinal day number
// (0001-01-01 == 1). `value` must be finite and strictly positive; the
// positivity requirement comes from the log transform applied downstream.
struct SamplePoint {
  std::int64_t date = 0;
  double value = 0.0;
};

// Daily series on a gapless calendar grid: dates[i+1] == dates[i] + 1.
// The invariants are enforced by load_series / validate_series rather than
// by the container type itself.
using TimeSeries = std::vector<SamplePoint>;

// How load_series treats missing calendar days between two rows.
enum class GapPolicy { reject, forward_fill, linear_interp };

// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws ParseError on
// malformed text or an impossible date.
std::int64_t to_ordinal(const std::string& iso_date);

// Inverse of to_ordinal.
std::string from_ordinal(std::int64_t ordinal);

// Reads a CSV file with the exact header "date,value". Dates must be
// strictly increasing; gaps are handled per `policy`. Throws ParseError,
// DataError or GapError; diagnostics name the offending line.
TimeSeries load_series(const std::filesystem::path& path,
                       GapPolicy policy = GapPolicy::reject);

// Writes the series back in the same CSV schema. Values are formatted so
// that load_series(save_series(s)) round-trips exactly.
void save_series(const TimeSeries& series, const std::filesystem::path& path);

// Throws DataError unless the series is non-empty, on a gapless daily grid,
// and every value is finite and > 0.
void validate_series(const TimeSeries& series);

// The `length` points ending at `end_index` inclusive, in chronological
// order. The point at offset j from the window end maps to model argument
// x = j + 1 (the most recent point is x = 1). Throws RangeError if the
// window does not fit.
TimeSeries window(const TimeSeries& series, std::size_t end_index,
                  std::size_t length);

}  // namespace lppl
