#pragma once

#include <optional>
#include <vector>

#include "lppl/detector.hpp"
#include "lppl/fitter.hpp"
#include "lppl/series.hpp"

namespace lppl {

struct BacktestConfig {
  FitConstraints constraints;
  Transform transform = Transform::log;
  Thresholds thresholds;
  int gap = 3;
  int horizon = 90;
  std::size_t min_history = 101;  // must be >= max(l_range) + 1
};

// One evaluated day. `fit` is absent when no window length produced a
// feasible fit on that day.
struct DayFit {
  std::int64_t date = 0;
  std::optional<FitResult> fit;
  bool ib = false;
  int sign = 0;  // common trend sign when ib
};

struct BacktestReport {
  std::vector<IbAlert> raw_alerts;
  std::vector<IbAlert> grouped_alerts;
  std::vector<DayFit> fits;
};

// Walk-forward evaluation: for every day from min_history-1 on, fit_best is
// run on the data up to and including that day only, and the extrema-trend
// test decides whether to raise an alert. Each day's random streams are
// keyed by its anchor date, so the report is identical for any `jobs` >= 1
// and unchanged by future samples. Throws InsufficientHistoryError when the
// series is shorter than min_history and NoFeasibleFitError when every
// single day fails to fit.
BacktestReport run_backtest(const TimeSeries& series, const BacktestConfig& cfg,
                            int jobs = 1);

}  // namespace lppl
