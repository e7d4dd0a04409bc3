#include "lppl/series.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lppl/errors.hpp"

namespace lppl {
namespace {

// Ordinal of 1970-01-01, the std::chrono day-count epoch.
constexpr std::int64_t kEpochOrdinal = 719163;

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
  if (from + count > s.size()) return false;
  for (std::size_t i = from; i < from + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

double parse_value(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": cannot parse value '" + text + "'");
  }
  return v;
}

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' ||
                        s.back() == ' ' || s.back() == '\t')) {
    s.pop_back();
  }
  return s;
}

}  // namespace

std::int64_t to_ordinal(const std::string& iso_date) {
  if (iso_date.size() != 10 || iso_date[4] != '-' || iso_date[7] != '-' ||
      !all_digits(iso_date, 0, 4) || !all_digits(iso_date, 5, 2) ||
      !all_digits(iso_date, 8, 2)) {
    throw ParseError("malformed date '" + iso_date + "', expected YYYY-MM-DD");
  }
  int y = std::stoi(iso_date.substr(0, 4));
  unsigned mo = static_cast<unsigned>(std::stoi(iso_date.substr(5, 2)));
  unsigned d = static_cast<unsigned>(std::stoi(iso_date.substr(8, 2)));
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                  std::chrono::day{d}};
  if (!ymd.ok()) {
    throw ParseError("impossible calendar date '" + iso_date + "'");
  }
  auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
  return static_cast<std::int64_t>(days) + kEpochOrdinal;
}

std::string from_ordinal(std::int64_t ordinal) {
  std::chrono::sys_days sd{std::chrono::days{ordinal - kEpochOrdinal}};
  std::chrono::year_month_day ymd{sd};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

TimeSeries load_series(const std::filesystem::path& path, GapPolicy policy) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("'" + path.string() + "' is empty");
  }
  if (rstrip(line) != "date,value") {
    throw ParseError("line 1: expected header 'date,value', got '" +
                     rstrip(line) + "'");
  }

  TimeSeries out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = rstrip(line);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": missing comma");
    }
    std::int64_t date = 0;
    try {
      date = to_ordinal(line.substr(0, comma));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    double value = parse_value(line.substr(comma + 1), line_no);
    if (!std::isfinite(value) || value <= 0.0) {
      throw DataError("line " + std::to_string(line_no) +
                      ": value must be finite and > 0, got " +
                      std::to_string(value));
    }
    if (!out.empty()) {
      std::int64_t prev = out.back().date;
      if (date <= prev) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": dates must be strictly increasing (" +
                         from_ordinal(date) + " after " + from_ordinal(prev) +
                         ")");
      }
      std::int64_t gap = date - prev;
      if (gap > 1) {
        switch (policy) {
          case GapPolicy::reject:
            throw GapError("line " + std::to_string(line_no) + ": " +
                           std::to_string(gap - 1) + " missing day(s) between " +
                           from_ordinal(prev) + " and " + from_ordinal(date));
          case GapPolicy::forward_fill:
            for (std::int64_t d = prev + 1; d < date; ++d) {
              out.push_back({d, out.back().value});
            }
            break;
          case GapPolicy::linear_interp: {
            double v0 = out.back().value;
            for (std::int64_t d = prev + 1; d < date; ++d) {
              double t = static_cast<double>(d - prev) / static_cast<double>(gap);
              out.push_back({d, v0 + t * (value - v0)});
            }
            break;
          }
        }
      }
    }
    out.push_back({date, value});
  }
  if (out.empty()) {
    throw ParseError("'" + path.string() + "' has no data rows");
  }
  return out;
}

void save_series(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << "date,value\n";
  char buf[64];
  for (const auto& p : series) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p.value);
    (void)ec;
    out << from_ordinal(p.date) << ',' << std::string_view(buf, ptr - buf)
        << '\n';
  }
}

void validate_series(const TimeSeries& series) {
  if (series.empty()) {
    throw DataError("series is empty");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!std::isfinite(series[i].value) || series[i].value <= 0.0) {
      throw DataError("sample " + std::to_string(i) +
                      ": value must be finite and > 0");
    }
    if (i > 0 && series[i].date != series[i - 1].date + 1) {
      throw DataError("sample " + std::to_string(i) +
                      ": dates are not consecutive days");
    }
  }
}

TimeSeries window(const TimeSeries& series, std::size_t end_index,
                  std::size_t length) {
  if (end_index >= series.size()) {
    throw RangeError("end_index " + std::to_string(end_index) +
                     " out of range for series of size " +
                     std::to_string(series.size()));
  }
  if (length == 0 || length > end_index + 1) {
    throw RangeError("window length " + std::to_string(length) +
                     " does not fit before index " + std::to_string(end_index));
  }
  auto first = series.begin() + static_cast<std::ptrdiff_t>(end_index + 1 - length);
  return TimeSeries(first, first + static_cast<std::ptrdiff_t>(length));
}

}  // namespace lppl
