#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lppl/backtest.hpp"
#include "lppl/changepoint.hpp"
#include "lppl/detector.hpp"
#include "lppl/synthetic.hpp"

namespace lppl {

// Shortest round-trip decimal form of a double (deterministic).
std::string format_double(double v);

std::string to_string(EventClass c);
std::string to_string(RootCause rc);
std::string to_string(Direction d);
EventClass event_class_from_string(const std::string& s);
RootCause root_cause_from_string(const std::string& s);

// alerts.json: {"alerts": [{date, mse, l_max, class, window: {start, end},
// root_cause, group_id}, ...]} with ISO dates.
void write_alerts_json(const std::vector<IbAlert>& alerts,
                       const std::filesystem::path& path);
std::vector<IbAlert> read_alerts_json(const std::filesystem::path& path);

// fits.csv: date,mse,l_max,ib_flag. Days without a feasible fit keep the
// mse and l_max columns empty.
void write_fits_csv(const std::vector<DayFit>& fits,
                    const std::filesystem::path& path);

// plot.csv: date,value,alert. The alert column carries the class name of a
// grouped alert raised on that date, else stays empty.
void write_plot_csv(const TimeSeries& series,
                    const std::vector<IbAlert>& grouped_alerts,
                    const std::filesystem::path& path);

// Detections CSV: date,direction,statistic.
void write_detections_csv(const std::vector<Detection>& detections,
                          const std::filesystem::path& path);

// Sidecar for a generated series: {"ib_day": ISO, "params": {...}, "seed": n}.
void write_synth_sidecar(const SynthSpec& spec, const SynthResult& result,
                         const std::filesystem::path& path);

}  // namespace lppl
