#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "lppl/backtest.hpp"
#include "lppl/changepoint.hpp"
#include "lppl/errors.hpp"
#include "lppl/evaluation.hpp"
#include "lppl/io.hpp"
#include "lppl/synthetic.hpp"

namespace fs = std::filesystem;
using namespace lppl;

namespace {

struct FitOptions {
  std::string input;
  std::string gap_policy = "reject";
  std::string transform = "log";
  BacktestConfig cfg;
};

void add_fit_options(CLI::App* cmd, FitOptions& o) {
  cmd->add_option("--input", o.input, "input CSV (date,value)")->required();
  cmd->add_option("--gap-policy", o.gap_policy,
                  "missing-day policy: reject, forward_fill, linear_interp")
      ->check(CLI::IsMember({"reject", "forward_fill", "linear_interp"}))
      ->capture_default_str();
  cmd->add_option("--transform", o.transform, "value transform: log, identity")
      ->check(CLI::IsMember({"log", "identity"}))
      ->capture_default_str();
  auto& c = o.cfg.constraints;
  cmd->add_option("--l-min", c.l_range.first, "smallest window length")
      ->capture_default_str();
  cmd->add_option("--l-max", c.l_range.second, "largest window length")
      ->capture_default_str();
  cmd->add_option("--m-min", c.m_range.first, "lower bound of exponent m")
      ->capture_default_str();
  cmd->add_option("--m-max", c.m_range.second, "upper bound of exponent m")
      ->capture_default_str();
  cmd->add_option("--omega-min", c.omega_range.first, "lower bound of omega")
      ->capture_default_str();
  cmd->add_option("--omega-max", c.omega_range.second, "upper bound of omega")
      ->capture_default_str();
  cmd->add_option("--starts", c.n_starts, "optimizer restarts per window")
      ->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters, "optimizer iteration cap")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "master random seed")
      ->envname("LPPL_PM_SEED")
      ->capture_default_str();
  cmd->add_option("--critical", o.cfg.thresholds.critical,
                  "mse below this is Critical")
      ->capture_default_str();
  cmd->add_option("--monitoring", o.cfg.thresholds.monitoring,
                  "mse below this (and above critical) is Monitoring")
      ->capture_default_str();
}

GapPolicy parse_gap_policy(const std::string& s) {
  if (s == "forward_fill") return GapPolicy::forward_fill;
  if (s == "linear_interp") return GapPolicy::linear_interp;
  return GapPolicy::reject;
}

Transform parse_transform(const std::string& s) {
  return s == "identity" ? Transform::identity : Transform::log;
}

void print_fit(const FitResult& fit, const IbDecision& dec,
               const Thresholds& thresholds, std::int64_t date) {
  std::printf("date: %s\n", from_ordinal(date).c_str());
  std::printf("l_max: %d\n", fit.params.l_max);
  std::printf("mse: %s\n", format_double(fit.mse).c_str());
  std::printf("class: %s\n", to_string(classify(fit.mse, thresholds)).c_str());
  std::printf("A: %s  B: %s  m: %s\n", format_double(fit.params.A).c_str(),
              format_double(fit.params.B).c_str(),
              format_double(fit.params.m).c_str());
  std::printf("C1: %s  C2: %s  omega: %s\n",
              format_double(fit.params.C1).c_str(),
              format_double(fit.params.C2).c_str(),
              format_double(fit.params.omega).c_str());
  std::printf("maxima: %zu  minima: %zu\n", dec.trends.n_max, dec.trends.n_min);
  if (dec.is_ib) {
    std::printf("initial breakdown: yes (trend sign %+d, root cause %s)\n",
                dec.common_sign,
                to_string(predict_root_cause(dec.common_sign)).c_str());
  } else {
    const char* why = "";
    switch (dec.reason) {
      case NotIbReason::too_few_maxima: why = "too few maxima"; break;
      case NotIbReason::too_few_minima: why = "too few minima"; break;
      case NotIbReason::opposite_trends: why = "opposite extrema trends"; break;
      case NotIbReason::zero_trend: why = "flat extrema trend"; break;
      case NotIbReason::none: why = "n/a"; break;
    }
    std::printf("initial breakdown: no (%s)\n", why);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised early-failure detection for daily sensor series"};
  app.require_subcommand(1);

  FitOptions bt;
  std::string bt_outdir = ".";
  int bt_gap = 3, bt_horizon = 90, bt_jobs = 1;
  std::size_t bt_min_history = 101;
  auto* cmd_bt = app.add_subcommand("backtest",
                                    "walk-forward detection over a series");
  add_fit_options(cmd_bt, bt);
  cmd_bt->add_option("--output-dir", bt_outdir,
                     "directory for alerts.json, fits.csv, plot.csv")
      ->capture_default_str();
  cmd_bt->add_option("--gap", bt_gap, "merge alerts at most this many days apart")
      ->capture_default_str();
  cmd_bt->add_option("--horizon", bt_horizon, "failure-window length in days")
      ->capture_default_str();
  cmd_bt->add_option("--min-history", bt_min_history,
                     "days required before the first evaluation")
      ->capture_default_str();
  cmd_bt->add_option("--jobs", bt_jobs, "worker threads (results identical)")
      ->capture_default_str();

  FitOptions ft;
  std::string ft_date;
  auto* cmd_fit = app.add_subcommand("fit", "fit the model at one anchor day");
  add_fit_options(cmd_fit, ft);
  cmd_fit->add_option("--date", ft_date,
                      "anchor date (YYYY-MM-DD, default: last day)");

  SynthSpec sy{{80, 5.0, -0.4, 0.45, 0.15, 0.1, 6.0}, 0.001, 0.03, 150, 0, 42};
  std::string sy_output, sy_sidecar, sy_start = "2019-08-23";
  auto* cmd_sy = app.add_subcommand("synth", "generate a synthetic series");
  cmd_sy->add_option("--output", sy_output, "output CSV path")->required();
  cmd_sy->add_option("--sidecar", sy_sidecar,
                     "ground-truth JSON path (default: <output>.json)");
  cmd_sy->add_option("--l-max", sy.params.l_max, "power-law segment length")
      ->capture_default_str();
  cmd_sy->add_option("--A", sy.params.A, "level")->capture_default_str();
  cmd_sy->add_option("--B", sy.params.B, "power-law amplitude")
      ->capture_default_str();
  cmd_sy->add_option("--m", sy.params.m, "power-law exponent")
      ->capture_default_str();
  cmd_sy->add_option("--C1", sy.params.C1, "cosine amplitude")
      ->capture_default_str();
  cmd_sy->add_option("--C2", sy.params.C2, "sine amplitude")
      ->capture_default_str();
  cmd_sy->add_option("--omega", sy.params.omega, "angular log-frequency")
      ->capture_default_str();
  cmd_sy->add_option("--noise-sigma", sy.noise_sigma,
                     "log-space noise on the power-law segment")
      ->capture_default_str();
  cmd_sy->add_option("--prefix-sigma", sy.prefix_sigma,
                     "log-space noise on the prefix")
      ->capture_default_str();
  cmd_sy->add_option("--prefix", sy.prefix, "stationary prefix length in days")
      ->capture_default_str();
  cmd_sy->add_option("--seed", sy.seed, "random seed")
      ->envname("LPPL_PM_SEED")
      ->capture_default_str();
  cmd_sy->add_option("--start-date", sy_start, "first calendar day")
      ->capture_default_str();

  std::string bl_input, bl_output = "detections.csv";
  double bl_percentile = 75.0;
  int bl_warmup = 20;
  bool bl_negate = false;
  std::string bl_gap_policy = "reject";
  auto* cmd_bl = app.add_subcommand("baseline",
                                    "dual one-sided changepoint detector");
  cmd_bl->add_option("--input", bl_input, "input CSV (date,value)")->required();
  cmd_bl->add_option("--output", bl_output, "detections CSV path")
      ->capture_default_str();
  cmd_bl->add_option("--percentile", bl_percentile,
                     "threshold percentile of the statistic history")
      ->capture_default_str();
  cmd_bl->add_option("--warmup", bl_warmup, "samples before triggering")
      ->capture_default_str();
  cmd_bl->add_option("--gap-policy", bl_gap_policy,
                     "missing-day policy: reject, forward_fill, linear_interp")
      ->check(CLI::IsMember({"reject", "forward_fill", "linear_interp"}))
      ->capture_default_str();
  cmd_bl->add_flag("--negate", bl_negate,
                   "negate values first (swaps detector directions)");

  std::string ev_alerts, ev_events;
  auto* cmd_ev = app.add_subcommand("evaluate",
                                    "score alerts against ground truth");
  cmd_ev->add_option("--alerts", ev_alerts, "alerts.json path")->required();
  cmd_ev->add_option("--events", ev_events, "ground-truth CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_bt) {
      TimeSeries series = load_series(bt.input, parse_gap_policy(bt.gap_policy));
      BacktestConfig cfg = bt.cfg;
      cfg.transform = parse_transform(bt.transform);
      cfg.gap = bt_gap;
      cfg.horizon = bt_horizon;
      cfg.min_history = bt_min_history;
      BacktestReport report = run_backtest(series, cfg, bt_jobs);
      fs::path dir = bt_outdir;
      fs::create_directories(dir);
      write_alerts_json(report.grouped_alerts, dir / "alerts.json");
      write_fits_csv(report.fits, dir / "fits.csv");
      write_plot_csv(series, report.grouped_alerts, dir / "plot.csv");
      std::printf("%zu day(s) evaluated, %zu alert(s), %zu group(s)\n",
                  report.fits.size(), report.raw_alerts.size(),
                  report.grouped_alerts.size());
      std::printf("wrote %s, %s, %s\n", (dir / "alerts.json").c_str(),
                  (dir / "fits.csv").c_str(), (dir / "plot.csv").c_str());
    } else if (*cmd_fit) {
      TimeSeries series = load_series(ft.input, parse_gap_policy(ft.gap_policy));
      std::size_t end_index = series.size() - 1;
      if (!ft_date.empty()) {
        std::int64_t want = to_ordinal(ft_date);
        if (want < series.front().date || want > series.back().date) {
          throw RangeError("--date " + ft_date + " outside the series");
        }
        end_index = static_cast<std::size_t>(want - series.front().date);
      }
      FitResult fit = fit_best(series, end_index, ft.cfg.constraints,
                               parse_transform(ft.transform));
      print_fit(fit, is_ib_point(fit), ft.cfg.thresholds,
                series[end_index].date);
    } else if (*cmd_sy) {
      sy.start_date = to_ordinal(sy_start);
      SynthResult result = gen_lppl_series(sy);
      save_series(result.series, sy_output);
      fs::path sidecar = sy_sidecar.empty() ? fs::path(sy_output + ".json")
                                            : fs::path(sy_sidecar);
      write_synth_sidecar(sy, result, sidecar);
      std::printf("wrote %zu day(s) to %s (breakdown day %s), sidecar %s\n",
                  result.series.size(), sy_output.c_str(),
                  from_ordinal(result.ib_day).c_str(), sidecar.c_str());
    } else if (*cmd_bl) {
      TimeSeries series = load_series(bl_input, parse_gap_policy(bl_gap_policy));
      std::vector<std::int64_t> dates;
      std::vector<double> values;
      for (const auto& p : series) {
        dates.push_back(p.date);
        values.push_back(bl_negate ? -p.value : p.value);
      }
      DualResult result =
          run_dual_detectors(dates, values, bl_percentile, bl_warmup);
      write_detections_csv(result.detections, bl_output);
      std::size_t lefts = 0;
      for (const auto& d : result.detections) {
        if (d.direction == Direction::left) ++lefts;
      }
      std::printf("%zu detection(s): %zu left, %zu right; wrote %s\n",
                  result.detections.size(), lefts,
                  result.detections.size() - lefts, bl_output.c_str());
    } else if (*cmd_ev) {
      auto alerts = read_alerts_json(ev_alerts);
      auto events = load_events(ev_events);
      Kpi kpi = precision_recall(match_alerts(alerts, events));
      std::printf("TP=%d FP=%d FN=%d precision=", kpi.tp, kpi.fp, kpi.fn);
      if (kpi.precision) {
        std::printf("%.3f", *kpi.precision);
      } else {
        std::printf("n/a");
      }
      std::printf(" recall=");
      if (kpi.recall) {
        std::printf("%.3f\n", *kpi.recall);
      } else {
        std::printf("n/a\n");
      }
    }
  } catch (const NoFeasibleFitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
