#include "lppl/detector.hpp"

#include <cmath>
#include <string>

#include "lppl/errors.hpp"

namespace lppl {

Extrema find_extrema(const std::vector<double>& samples) {
  Extrema out;
  if (samples.size() < 3) return out;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    if (samples[i] > samples[i - 1] && samples[i] > samples[i + 1]) {
      out.maxima.push_back({i, samples[i]});
    } else if (samples[i] < samples[i - 1] && samples[i] < samples[i + 1]) {
      out.minima.push_back({i, samples[i]});
    }
  }
  return out;
}

double trend_slope(const std::vector<Extremum>& extrema) {
  if (extrema.size() <= 2) {
    throw InsufficientExtremaError(
        "trend requires more than two extrema, got " +
        std::to_string(extrema.size()));
  }
  // Drop the extremum farthest from the window end (the first one:
  // find_extrema reports in chronological order).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = extrema.size() - 1;
  for (std::size_t i = 1; i < extrema.size(); ++i) {
    double x = static_cast<double>(extrema[i].index);
    double y = extrema[i].value;
    sx += x;
    sy += y;
  }
  double mx = sx / static_cast<double>(n);
  double my = sy / static_cast<double>(n);
  for (std::size_t i = 1; i < extrema.size(); ++i) {
    double dx = static_cast<double>(extrema[i].index) - mx;
    sxx += dx * dx;
    sxy += dx * (extrema[i].value - my);
  }
  return sxy / sxx;
}

namespace {
int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
}  // namespace

IbDecision is_ib_point(const FitResult& fit) {
  IbDecision d;
  Extrema ex = find_extrema(curve(fit.params));
  d.trends.n_max = ex.maxima.size();
  d.trends.n_min = ex.minima.size();
  if (ex.maxima.size() <= 2) {
    d.reason = NotIbReason::too_few_maxima;
    return d;
  }
  if (ex.minima.size() <= 2) {
    d.reason = NotIbReason::too_few_minima;
    return d;
  }
  double t_max = trend_slope(ex.maxima);
  double t_min = trend_slope(ex.minima);
  d.trends.t_max = t_max;
  d.trends.t_min = t_min;
  int s_max = sign_of(t_max);
  int s_min = sign_of(t_min);
  if (s_max == 0 || s_min == 0) {
    d.reason = NotIbReason::zero_trend;
    return d;
  }
  if (s_max != s_min) {
    d.reason = NotIbReason::opposite_trends;
    return d;
  }
  d.is_ib = true;
  d.common_sign = s_max;
  return d;
}

EventClass classify(double mse, const Thresholds& t) {
  if (!(t.critical > 0.0) || !(t.monitoring > t.critical)) {
    throw RangeError("thresholds must satisfy 0 < critical < monitoring");
  }
  if (!(mse >= 0.0)) {
    throw DomainError("mse must be non-negative");
  }
  if (mse < t.critical) return EventClass::Critical;
  if (mse < t.monitoring) return EventClass::Monitoring;
  return EventClass::Irrelevant;
}

FailureWindow failure_window(std::int64_t n, int l_max, int horizon) {
  if (l_max < 2) {
    throw InvalidWindowError("failure_window requires l_max >= 2, got " +
                             std::to_string(l_max));
  }
  int lead = l_max / 2;
  if (horizon <= lead) {
    throw InvalidWindowError("horizon " + std::to_string(horizon) +
                             " does not reach past the window start offset " +
                             std::to_string(lead));
  }
  return {n + lead, n + horizon};
}

RootCause predict_root_cause(int common_sign) {
  if (common_sign == 1) return RootCause::SuctionValveOrSealing;
  if (common_sign == -1) return RootCause::DischargeValve;
  throw DomainError("common_sign must be +1 or -1, got " +
                    std::to_string(common_sign));
}

std::vector<IbAlert> group_alerts(const std::vector<IbAlert>& alerts, int gap,
                                  const std::optional<Thresholds>& reclassify) {
  if (gap < 0) {
    throw RangeError("gap must be >= 0");
  }
  for (std::size_t i = 1; i < alerts.size(); ++i) {
    if (alerts[i].date < alerts[i - 1].date) {
      throw OrderError("alerts must be sorted by date");
    }
  }

  std::vector<IbAlert> out;
  std::size_t i = 0;
  while (i < alerts.size()) {
    IbAlert rep = alerts[i];
    double mse_sum = alerts[i].mse;
    std::size_t members = 1;
    std::size_t j = i + 1;
    while (j < alerts.size() && alerts[j].date - alerts[j - 1].date <= gap) {
      mse_sum += alerts[j].mse;
      ++members;
      ++j;
    }
    rep.mse = mse_sum / static_cast<double>(members);
    rep.group_id = static_cast<int>(out.size());
    if (reclassify) {
      rep.cls = classify(rep.mse, *reclassify);
    }
    out.push_back(rep);
    i = j;
  }
  return out;
}

}  // namespace lppl
