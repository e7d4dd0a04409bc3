#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lppl/series.hpp"

namespace lppl {

// Shift direction a detector watches for: `right` accumulates evidence of an
// upward mean shift, `left` of a downward one.
enum class Direction { left, right };

// One-sided cumulative-sum detector with reset. The baseline mean and spread
// are re-estimated from scratch after every detection; the drift term is
// drift_factor times the running standard deviation.
struct DetectorState {
  Direction direction = Direction::right;
  double statistic = 0.0;      // >= 0; reset to 0 on trigger
  double baseline_mean = 0.0;  // running mean since the last reset
  double m2 = 0.0;             // running squared-deviation sum (Welford)
  long samples_seen = 0;       // since the last reset
  double threshold = 0.0;      // trigger level, managed by the caller
  double drift_factor = 0.5;
};

struct Detection {
  std::int64_t date = 0;
  Direction direction = Direction::right;
  double statistic = 0.0;  // value at trigger, >= threshold
};

// Feeds one sample. The deviation is measured against the mean of the
// samples seen since the last reset (zero for the first one); the statistic
// is clamped at zero. A detection fires when the statistic is positive and
// reaches state.threshold; the state is then reinitialized.
std::optional<Detection> detector_update(DetectorState& state,
                                         std::int64_t date, double x);

struct DualResult {
  std::vector<Detection> detections;       // chronological; left before right
  std::vector<double> left_statistics;     // statistic after each sample
  std::vector<double> right_statistics;
};

// Runs an independent left and right detector over the values. Each
// detector's threshold before sample i is the given percentile of its own
// statistic values from samples 0..i-1 (so detections are causal); no
// detection can fire during the first `warmup` samples.
DualResult run_dual_detectors(const std::vector<std::int64_t>& dates,
                              const std::vector<double>& values,
                              double percentile = 75.0, int warmup = 20);

DualResult run_dual_detectors(const TimeSeries& series,
                              double percentile = 75.0, int warmup = 20);

// Linear-interpolation percentile (p in [0, 100]) of a non-empty sample.
double percentile_of(std::vector<double> values, double p);

}  // namespace lppl
