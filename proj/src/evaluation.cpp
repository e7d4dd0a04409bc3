#include "lppl/evaluation.hpp"

#include <algorithm>
#include <fstream>

#include "lppl/errors.hpp"
#include "lppl/series.hpp"

namespace lppl {
namespace {

bool diagnosis_matches(Diagnosis d, RootCause rc) {
  switch (d) {
    case Diagnosis::SuctionValveOrSealing:
      return rc == RootCause::SuctionValveOrSealing;
    case Diagnosis::DischargeValve:
      return rc == RootCause::DischargeValve;
    case Diagnosis::Other:
      return false;
  }
  return false;
}

// Splits one CSV line honouring double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(cur);
  return fields;
}

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

}  // namespace

std::vector<MatchLabel> match_alerts(const std::vector<IbAlert>& alerts,
                                     const std::vector<GroundTruthEvent>& events) {
  for (std::size_t i = 1; i < alerts.size(); ++i) {
    if (alerts[i].date < alerts[i - 1].date) {
      throw OrderError("alerts must be sorted by date");
    }
  }
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].start < events[i - 1].start) {
      throw OrderError("events must be sorted by date");
    }
  }

  // first matched event per alert, by event order
  std::vector<std::optional<std::size_t>> matched_event(alerts.size());
  std::vector<bool> event_assigned(events.size(), false);

  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& ev = events[e];
    std::int64_t ev_first = ev.start;
    std::int64_t ev_last = ev.end.value_or(ev.start);
    std::optional<std::size_t> best;
    for (std::size_t a = 0; a < alerts.size(); ++a) {
      const auto& al = alerts[a];
      if (!diagnosis_matches(ev.diagnosis, al.root_cause)) continue;
      if (ev_last < al.window.start || ev_first > al.window.end) continue;
      if (!best || al.window.start < alerts[*best].window.start ||
          (al.window.start == alerts[*best].window.start &&
           al.date < alerts[*best].date)) {
        best = a;
      }
    }
    if (best) {
      event_assigned[e] = true;
      if (!matched_event[*best]) matched_event[*best] = e;
    }
  }

  std::vector<MatchLabel> out;
  for (std::size_t a = 0; a < alerts.size(); ++a) {
    MatchLabel l;
    l.alert = alerts[a];
    if (matched_event[a]) {
      l.label = Label::TP;
      l.event = events[*matched_event[a]];
    } else {
      l.label = Label::FP;
    }
    out.push_back(std::move(l));
  }
  for (std::size_t e = 0; e < events.size(); ++e) {
    if (!event_assigned[e]) {
      MatchLabel l;
      l.label = Label::FN;
      l.event = events[e];
      out.push_back(std::move(l));
    }
  }
  return out;
}

Kpi precision_recall(const std::vector<MatchLabel>& labels) {
  Kpi k;
  for (const auto& l : labels) {
    switch (l.label) {
      case Label::TP: ++k.tp; break;
      case Label::FP: ++k.fp; break;
      case Label::FN: ++k.fn; break;
    }
  }
  if (k.tp + k.fp > 0) {
    k.precision = double(k.tp) / double(k.tp + k.fp);
  }
  if (k.tp + k.fn > 0) {
    k.recall = double(k.tp) / double(k.tp + k.fn);
  }
  return k;
}

std::vector<GroundTruthEvent> load_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line) || rstrip(line) != "kind,start,end,diagnosis,note") {
    throw ParseError("expected header 'kind,start,end,diagnosis,note'");
  }

  std::vector<GroundTruthEvent> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = rstrip(line);
    if (line.empty()) continue;
    auto f = split_csv(line, line_no);
    if (f.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                       std::to_string(f.size()));
    }
    GroundTruthEvent ev;
    if (f[0] == "maintenance") {
      ev.kind = EventKind::maintenance;
    } else if (f[0] == "expert_observation") {
      ev.kind = EventKind::expert_observation;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown kind '" + f[0] + "'");
    }
    ev.start = to_ordinal(f[1]);
    if (ev.kind == EventKind::maintenance) {
      if (!f[2].empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": maintenance rows must have an empty end date");
      }
    } else {
      if (f[2].empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expert_observation rows need an end date");
      }
      ev.end = to_ordinal(f[2]);
      if (*ev.end < ev.start) {
        throw DataError("line " + std::to_string(line_no) + ": end before start");
      }
    }
    if (f[3] == "SuctionValveOrSealing") {
      ev.diagnosis = Diagnosis::SuctionValveOrSealing;
    } else if (f[3] == "DischargeValve") {
      ev.diagnosis = Diagnosis::DischargeValve;
    } else if (f[3] == "Other") {
      ev.diagnosis = Diagnosis::Other;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown diagnosis '" +
                       f[3] + "'");
    }
    ev.note = f[4];
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace lppl
