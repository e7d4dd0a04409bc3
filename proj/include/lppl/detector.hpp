#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lppl/fitter.hpp"

namespace lppl {

// Severity of an alert, decided purely by the fit error against two
// thresholds: mse < critical is Critical, mse < monitoring is Monitoring,
// anything above is Irrelevant.
enum class EventClass { Critical, Monitoring, Irrelevant };

struct Thresholds {
  double critical = 6e-5;
  double monitoring = 10e-5;
};

// Component blamed for the incipient failure, derived from the predicted
// post-breakdown trend direction.
enum class RootCause { SuctionValveOrSealing, DischargeValve };

struct Extremum {
  std::size_t index = 0;  // chronological sample index within the curve
  double value = 0.0;
};

struct Extrema {
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
};

struct ExtremaTrends {
  std::size_t n_max = 0;
  std::size_t n_min = 0;
  std::optional<double> t_max;  // defined only when n_max > 2
  std::optional<double> t_min;  // defined only when n_min > 2
};

enum class NotIbReason {
  none,
  too_few_maxima,
  too_few_minima,
  opposite_trends,
  zero_trend,
};

// Outcome of the extrema-trend test: the anchor day is an initial-breakdown
// point when the fitted curve has more than two maxima and more than two
// minima and both extrema sequences trend in the same nonzero direction.
// The series is then expected to move opposite to common_sign afterwards.
struct IbDecision {
  bool is_ib = false;
  int common_sign = 0;  // +1 or -1 when is_ib
  NotIbReason reason = NotIbReason::none;
  ExtremaTrends trends;
};

struct FailureWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
};

struct IbAlert {
  std::int64_t date = 0;
  double mse = 0.0;
  int l_max = 0;
  EventClass cls = EventClass::Irrelevant;
  FailureWindow window;
  RootCause root_cause = RootCause::SuctionValveOrSealing;
  int group_id = -1;  // assigned by group_alerts; -1 on raw alerts
};

// Strict interior extrema: samples[i] qualifies only when it is greater
// (resp. smaller) than both neighbours. Plateau members and endpoints never
// qualify.
Extrema find_extrema(const std::vector<double>& samples);

// OLS slope of value against sample index over the count-1 extrema closest
// to the window end (the oldest one is dropped). Throws
// InsufficientExtremaError when fewer than three extrema are given.
double trend_slope(const std::vector<Extremum>& extrema);

// Applies the extrema-trend test to the fitted curve of `fit`.
IbDecision is_ib_point(const FitResult& fit);

EventClass classify(double mse, const Thresholds& t = {});

// Days [n + l_max/2, n + horizon] in which the breakdown is predicted to
// complete. Throws InvalidWindowError unless horizon > l_max/2 (integer
// division); requires l_max >= 2 so the window starts after day n.
FailureWindow failure_window(std::int64_t n, int l_max, int horizon = 90);

// A rising pre-breakdown trend (+1) predicts a falling signal afterwards,
// which points at the suction valve or sealing; a falling trend (-1)
// predicts a rising signal, pointing at the discharge valve.
RootCause predict_root_cause(int common_sign);

// Merges runs of alerts whose consecutive dates are at most `gap` days
// apart. Each group is represented by its first alert with mse replaced by
// the group mean; group_id numbers the groups from 0. When `reclassify` is
// given, the representative's class is recomputed from the mean mse.
// Input must be sorted by date (OrderError otherwise). Idempotent.
std::vector<IbAlert> group_alerts(
    const std::vector<IbAlert>& alerts, int gap = 3,
    const std::optional<Thresholds>& reclassify = std::nullopt);

}  // namespace lppl
