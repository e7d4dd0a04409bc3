#include "lppl/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lppl/errors.hpp"

namespace lppl {
namespace {

double percentile_sorted(const std::vector<double>& sorted, double p) {
  double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double percentile_of(std::vector<double> values, double p) {
  if (values.empty()) {
    throw RangeError("percentile of an empty sample");
  }
  if (!(p >= 0.0) || !(p <= 100.0)) {
    throw RangeError("percentile must be in [0, 100]");
  }
  std::sort(values.begin(), values.end());
  return percentile_sorted(values, p);
}

std::optional<Detection> detector_update(DetectorState& state,
                                         std::int64_t date, double x) {
  if (!std::isfinite(x)) {
    throw DataError("detector_update requires a finite sample");
  }
  double dev;
  if (state.samples_seen == 0) {
    dev = 0.0;
    state.baseline_mean = x;
    state.m2 = 0.0;
    state.samples_seen = 1;
  } else {
    dev = x - state.baseline_mean;
    state.samples_seen += 1;
    double delta = x - state.baseline_mean;
    state.baseline_mean += delta / static_cast<double>(state.samples_seen);
    state.m2 += delta * (x - state.baseline_mean);
  }
  double sigma = state.samples_seen >= 2
                     ? std::sqrt(state.m2 /
                                 static_cast<double>(state.samples_seen - 1))
                     : 0.0;
  double k = state.drift_factor * sigma;
  double incr = state.direction == Direction::right ? dev - k : -dev - k;
  state.statistic = std::max(0.0, state.statistic + incr);

  if (state.statistic > 0.0 && state.statistic >= state.threshold) {
    Detection d{date, state.direction, state.statistic};
    state.statistic = 0.0;
    state.baseline_mean = 0.0;
    state.m2 = 0.0;
    state.samples_seen = 0;
    return d;
  }
  return std::nullopt;
}

DualResult run_dual_detectors(const std::vector<std::int64_t>& dates,
                              const std::vector<double>& values,
                              double percentile, int warmup) {
  if (dates.size() != values.size()) {
    throw ShapeError("dates and values must have equal length");
  }
  if (warmup < 1) {
    throw RangeError("warmup must be >= 1");
  }

  DualResult out;
  DetectorState states[2] = {{Direction::left}, {Direction::right}};
  std::vector<double> sorted_hist[2];
  std::vector<double>* stats[2] = {&out.left_statistics,
                                   &out.right_statistics};
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < values.size(); ++i) {
    for (int d = 0; d < 2; ++d) {
      DetectorState& st = states[d];
      st.threshold = (i >= static_cast<std::size_t>(warmup))
                         ? percentile_sorted(sorted_hist[d], percentile)
                         : inf;
      auto det = detector_update(st, dates[i], values[i]);
      double s = det ? det->statistic : st.statistic;
      stats[d]->push_back(s);
      sorted_hist[d].insert(
          std::lower_bound(sorted_hist[d].begin(), sorted_hist[d].end(), s), s);
      if (det) out.detections.push_back(*det);
    }
  }
  return out;
}

DualResult run_dual_detectors(const TimeSeries& series, double percentile,
                              int warmup) {
  std::vector<std::int64_t> dates;
  std::vector<double> values;
  dates.reserve(series.size());
  values.reserve(series.size());
  for (const auto& p : series) {
    dates.push_back(p.date);
    values.push_back(p.value);
  }
  return run_dual_detectors(dates, values, percentile, warmup);
}

}  // namespace lppl
