#include "lppl/backtest.hpp"

#include <atomic>
#include <string>
#include <thread>

#include "lppl/errors.hpp"

namespace lppl {
namespace {

struct DayOutcome {
  DayFit day;
  std::optional<IbAlert> alert;
};

DayOutcome evaluate_day(const TimeSeries& series, std::size_t end_index,
                        const BacktestConfig& cfg) {
  DayOutcome out;
  out.day.date = series[end_index].date;
  FitResult fit;
  try {
    fit = fit_best(series, end_index, cfg.constraints, cfg.transform);
  } catch (const NoFeasibleFitError&) {
    return out;
  }
  out.day.fit = fit;
  IbDecision dec = is_ib_point(fit);
  if (!dec.is_ib) return out;

  out.day.ib = true;
  out.day.sign = dec.common_sign;
  IbAlert alert;
  alert.date = out.day.date;
  alert.mse = fit.mse;
  alert.l_max = fit.params.l_max;
  alert.cls = classify(fit.mse, cfg.thresholds);
  alert.window = failure_window(alert.date, alert.l_max, cfg.horizon);
  alert.root_cause = predict_root_cause(dec.common_sign);
  out.alert = alert;
  return out;
}

}  // namespace

BacktestReport run_backtest(const TimeSeries& series, const BacktestConfig& cfg,
                            int jobs) {
  validate_series(series);
  if (cfg.min_history <
      static_cast<std::size_t>(cfg.constraints.l_range.second) + 1) {
    throw RangeError("min_history must be >= max(l_range) + 1");
  }
  if (jobs < 1) {
    throw RangeError("jobs must be >= 1");
  }
  if (series.size() < cfg.min_history) {
    throw InsufficientHistoryError(
        "series has " + std::to_string(series.size()) + " days, needs " +
        std::to_string(cfg.min_history));
  }

  const std::size_t first = cfg.min_history - 1;
  const std::size_t days = series.size() - first;
  std::vector<DayOutcome> outcomes(days);

  auto worker = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next.fetch_add(1); i < days; i = next.fetch_add(1)) {
      outcomes[i] = evaluate_day(series, first + i, cfg);
    }
  };

  if (jobs == 1 || days == 1) {
    std::atomic<std::size_t> next{0};
    worker(next);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), days);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker, std::ref(next));
    }
    for (auto& t : pool) t.join();
  }

  BacktestReport report;
  report.fits.reserve(days);
  bool any_feasible = false;
  for (auto& o : outcomes) {
    any_feasible = any_feasible || o.day.fit.has_value();
    if (o.alert) report.raw_alerts.push_back(*o.alert);
    report.fits.push_back(std::move(o.day));
  }
  if (!any_feasible) {
    throw NoFeasibleFitError("no feasible fit on any evaluated day");
  }
  report.grouped_alerts = group_alerts(report.raw_alerts, cfg.gap, cfg.thresholds);
  return report;
}

}  // namespace lppl
