#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "lppl/backtest.hpp"
#include "lppl/detector.hpp"
#include "lppl/errors.hpp"
#include "lppl/rng.hpp"
#include "lppl/series.hpp"
#include "lppl/synthetic.hpp"

using namespace lppl;

namespace {

// Degrading series small enough for repeated walk-forward runs: 55 noise
// days, then a 60-day oscillating decline.
SynthResult test_series(std::uint64_t seed) {
  LpplParams p{60, 5.0, -0.4, 0.45, 0.15, 0.1, 6.0};
  SynthSpec spec{p, 1e-3, 0.03, 55, 0, seed};
  return gen_lppl_series(spec);
}

BacktestConfig test_config(std::uint64_t seed) {
  BacktestConfig cfg;
  cfg.constraints.l_range = {31, 60};
  cfg.constraints.n_starts = 4;
  cfg.constraints.max_iters = 80;
  cfg.constraints.seed = seed;
  cfg.min_history = 61;
  return cfg;
}

TimeSeries constant_series(double value, std::size_t n) {
  TimeSeries s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = {700000 + static_cast<std::int64_t>(i), value};
  }
  return s;
}

bool same_alert(const IbAlert& a, const IbAlert& b) {
  return a.date == b.date && a.mse == b.mse && a.l_max == b.l_max &&
         a.cls == b.cls && a.window.start == b.window.start &&
         a.window.end == b.window.end && a.root_cause == b.root_cause &&
         a.group_id == b.group_id;
}

}  // namespace

TEST_CASE("run_backtest walks forward from min_history") {
  SynthResult r = test_series(11);
  BacktestConfig cfg = test_config(3);
  BacktestReport rep = run_backtest(r.series, cfg);

  REQUIRE(rep.fits.size() == r.series.size() - cfg.min_history + 1);
  CHECK(rep.fits.front().date == r.series[cfg.min_history - 1].date);
  CHECK(rep.fits.back().date == r.series.back().date);
  for (std::size_t i = 1; i < rep.fits.size(); ++i) {
    CHECK(rep.fits[i].date == rep.fits[i - 1].date + 1);
  }

  // The decline is in the window for every evaluated day, so alerts fire.
  CHECK(!rep.raw_alerts.empty());
  for (std::size_t i = 1; i < rep.raw_alerts.size(); ++i) {
    CHECK(rep.raw_alerts[i].date > rep.raw_alerts[i - 1].date);
  }
}

TEST_CASE("run_backtest alerts are consistent with their day fits") {
  SynthResult r = test_series(12);
  BacktestConfig cfg = test_config(5);
  BacktestReport rep = run_backtest(r.series, cfg);
  REQUIRE(!rep.raw_alerts.empty());

  for (const IbAlert& a : rep.raw_alerts) {
    CHECK(a.group_id == -1);
    const DayFit* day = nullptr;
    for (const auto& f : rep.fits) {
      if (f.date == a.date) day = &f;
    }
    REQUIRE(day != nullptr);
    CHECK(day->ib);
    REQUIRE(day->fit.has_value());
    CHECK(a.mse == day->fit->mse);
    CHECK(a.l_max == day->fit->params.l_max);
    CHECK(classify(a.mse, cfg.thresholds) == a.cls);
    CHECK(a.window.start == a.date + a.l_max / 2);
    CHECK(a.window.end == a.date + cfg.horizon);
    CHECK(a.root_cause == predict_root_cause(day->sign));

    // The stored mse is reproducible from the stored parameters.
    std::size_t end_idx = static_cast<std::size_t>(a.date - r.series[0].date);
    TimeSeries win = window(r.series, end_idx,
                            static_cast<std::size_t>(a.l_max));
    CHECK(fit_mse(day->fit->params, win, cfg.transform) ==
          doctest::Approx(a.mse).epsilon(1e-12));
  }

  // Grouping the raw alerts reproduces the reported groups.
  std::vector<IbAlert> regrouped =
      group_alerts(rep.raw_alerts, cfg.gap, cfg.thresholds);
  REQUIRE(regrouped.size() == rep.grouped_alerts.size());
  for (std::size_t i = 0; i < regrouped.size(); ++i) {
    CHECK(same_alert(regrouped[i], rep.grouped_alerts[i]));
  }
}

TEST_CASE("run_backtest ignores future samples") {
  SynthResult r = test_series(13);
  BacktestConfig cfg = test_config(7);
  BacktestReport full = run_backtest(r.series, cfg);

  std::size_t cut = cfg.min_history + 20;
  TimeSeries head(r.series.begin(), r.series.begin() + cut);
  BacktestReport part = run_backtest(head, cfg);

  REQUIRE(part.fits.size() == cut - cfg.min_history + 1);
  for (std::size_t i = 0; i < part.fits.size(); ++i) {
    const DayFit& a = part.fits[i];
    const DayFit& b = full.fits[i];
    CHECK(a.date == b.date);
    CHECK(a.ib == b.ib);
    CHECK(a.sign == b.sign);
    REQUIRE(a.fit.has_value() == b.fit.has_value());
    if (a.fit) {
      CHECK(a.fit->mse == b.fit->mse);
      CHECK(std::memcmp(&a.fit->params, &b.fit->params,
                        sizeof a.fit->params) == 0);
    }
  }
  std::int64_t last_date = head.back().date;
  std::size_t k = 0;
  for (const auto& al : full.raw_alerts) {
    if (al.date <= last_date) {
      REQUIRE(k < part.raw_alerts.size());
      CHECK(same_alert(part.raw_alerts[k], al));
      ++k;
    }
  }
  CHECK(k == part.raw_alerts.size());
}

TEST_CASE("run_backtest is independent of the job count") {
  SynthResult r = test_series(14);
  BacktestConfig cfg = test_config(9);
  BacktestReport serial = run_backtest(r.series, cfg, 1);
  BacktestReport parallel = run_backtest(r.series, cfg, 4);

  REQUIRE(serial.fits.size() == parallel.fits.size());
  for (std::size_t i = 0; i < serial.fits.size(); ++i) {
    CHECK(serial.fits[i].date == parallel.fits[i].date);
    CHECK(serial.fits[i].ib == parallel.fits[i].ib);
    REQUIRE(serial.fits[i].fit.has_value() ==
            parallel.fits[i].fit.has_value());
    if (serial.fits[i].fit) {
      CHECK(serial.fits[i].fit->mse == parallel.fits[i].fit->mse);
    }
  }
  REQUIRE(serial.raw_alerts.size() == parallel.raw_alerts.size());
  for (std::size_t i = 0; i < serial.raw_alerts.size(); ++i) {
    CHECK(same_alert(serial.raw_alerts[i], parallel.raw_alerts[i]));
  }
}

TEST_CASE("run_backtest enforces history and config preconditions") {
  SynthResult r = test_series(15);
  BacktestConfig cfg = test_config(1);

  TimeSeries short_series(r.series.begin(), r.series.begin() + 60);
  CHECK_THROWS_AS(run_backtest(short_series, cfg), InsufficientHistoryError);

  TimeSeries exact(r.series.begin(), r.series.begin() + 61);
  BacktestReport rep = run_backtest(exact, cfg);
  CHECK(rep.fits.size() == 1);
  CHECK(rep.fits[0].date == exact.back().date);

  BacktestConfig bad = cfg;
  bad.min_history = 60;  // below max window length + 1
  CHECK_THROWS_AS(run_backtest(r.series, bad), RangeError);
  CHECK_THROWS_AS(run_backtest(r.series, cfg, 0), RangeError);

  TimeSeries gappy = r.series;
  gappy[5].date += 1;
  CHECK_THROWS_AS(run_backtest(gappy, cfg), DataError);
}

TEST_CASE("run_backtest reports when no day admits a feasible fit") {
  // Values far below 1 put the log-level deep in negative territory, so the
  // positivity constraint on A rejects every candidate. The wide margin keeps
  // m away from 0, where x^m turns into a second intercept that could absorb
  // an arbitrarily negative level.
  SplitRng rng(501);
  TimeSeries s = constant_series(0.1, 101);
  for (auto& p : s) p.value *= std::exp(0.01 * rng.normal());
  BacktestConfig cfg;
  cfg.constraints.l_range = {31, 40};
  cfg.constraints.n_starts = 2;
  cfg.constraints.max_iters = 40;
  cfg.constraints.margin = 0.05;
  CHECK_THROWS_AS(run_backtest(s, cfg), NoFeasibleFitError);
}
