#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lppl/detector.hpp"

namespace lppl {

enum class EventKind { maintenance, expert_observation };

// What the ground truth blames. Other matches no prediction.
enum class Diagnosis { SuctionValveOrSealing, DischargeValve, Other };

struct GroundTruthEvent {
  EventKind kind = EventKind::maintenance;
  std::int64_t start = 0;
  std::optional<std::int64_t> end;  // present only for expert observations
  Diagnosis diagnosis = Diagnosis::Other;
  std::string note;
};

enum class Label { TP, FP, FN };

struct MatchLabel {
  Label label = Label::FP;
  std::optional<IbAlert> alert;          // absent for FN
  std::optional<GroundTruthEvent> event; // absent for FP
};

// Matches alerts against ground truth. An event matches an alert when some
// day of the event (its date, or any day of the observation interval) falls
// inside the alert's failure window and the diagnosis equals the predicted
// root cause. Each event is assigned to the matching alert whose window
// starts earliest; an alert with at least one assigned event is a TP,
// otherwise an FP, and an unassigned event is an FN. Both inputs must be
// sorted by date (OrderError otherwise). Output lists the alerts in order
// followed by the FN events.
std::vector<MatchLabel> match_alerts(const std::vector<IbAlert>& alerts,
                                     const std::vector<GroundTruthEvent>& events);

struct Kpi {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::optional<double> precision;  // absent when tp + fp == 0
  std::optional<double> recall;     // absent when tp + fn == 0
};

Kpi precision_recall(const std::vector<MatchLabel>& labels);

// Reads a ground-truth CSV with header "kind,start,end,diagnosis,note".
// kind is maintenance or expert_observation; end must be empty for
// maintenance rows and a date >= start otherwise; the note field may be
// double-quoted to carry commas.
std::vector<GroundTruthEvent> load_events(const std::filesystem::path& path);

}  // namespace lppl
