#include "lppl/io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "lppl/errors.hpp"

namespace lppl {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string to_string(EventClass c) {
  switch (c) {
    case EventClass::Critical: return "Critical";
    case EventClass::Monitoring: return "Monitoring";
    case EventClass::Irrelevant: return "Irrelevant";
  }
  return "Irrelevant";
}

std::string to_string(RootCause rc) {
  return rc == RootCause::SuctionValveOrSealing ? "SuctionValveOrSealing"
                                                : "DischargeValve";
}

std::string to_string(Direction d) {
  return d == Direction::left ? "left" : "right";
}

EventClass event_class_from_string(const std::string& s) {
  if (s == "Critical") return EventClass::Critical;
  if (s == "Monitoring") return EventClass::Monitoring;
  if (s == "Irrelevant") return EventClass::Irrelevant;
  throw ParseError("unknown class '" + s + "'");
}

RootCause root_cause_from_string(const std::string& s) {
  if (s == "SuctionValveOrSealing") return RootCause::SuctionValveOrSealing;
  if (s == "DischargeValve") return RootCause::DischargeValve;
  throw ParseError("unknown root cause '" + s + "'");
}

void write_alerts_json(const std::vector<IbAlert>& alerts,
                       const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["alerts"] = nlohmann::json::array();
  for (const auto& a : alerts) {
    doc["alerts"].push_back({
        {"date", from_ordinal(a.date)},
        {"mse", a.mse},
        {"l_max", a.l_max},
        {"class", to_string(a.cls)},
        {"window",
         {{"start", from_ordinal(a.window.start)},
          {"end", from_ordinal(a.window.end)}}},
        {"root_cause", to_string(a.root_cause)},
        {"group_id", a.group_id},
    });
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << doc.dump(2) << '\n';
}

std::vector<IbAlert> read_alerts_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  std::vector<IbAlert> out;
  try {
    for (const auto& j : doc.at("alerts")) {
      IbAlert a;
      a.date = to_ordinal(j.at("date").get<std::string>());
      a.mse = j.at("mse").get<double>();
      a.l_max = j.at("l_max").get<int>();
      a.cls = event_class_from_string(j.at("class").get<std::string>());
      a.window.start = to_ordinal(j.at("window").at("start").get<std::string>());
      a.window.end = to_ordinal(j.at("window").at("end").get<std::string>());
      a.root_cause = root_cause_from_string(j.at("root_cause").get<std::string>());
      a.group_id = j.value("group_id", -1);
      out.push_back(a);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return out;
}

void write_fits_csv(const std::vector<DayFit>& fits,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << "date,mse,l_max,ib_flag\n";
  for (const auto& f : fits) {
    out << from_ordinal(f.date) << ',';
    if (f.fit) {
      out << format_double(f.fit->mse) << ',' << f.fit->params.l_max;
    } else {
      out << ',';
    }
    out << ',' << (f.ib ? 1 : 0) << '\n';
  }
}

void write_plot_csv(const TimeSeries& series,
                    const std::vector<IbAlert>& grouped_alerts,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << "date,value,alert\n";
  std::size_t next_alert = 0;
  for (const auto& p : series) {
    out << from_ordinal(p.date) << ',' << format_double(p.value) << ',';
    while (next_alert < grouped_alerts.size() &&
           grouped_alerts[next_alert].date < p.date) {
      ++next_alert;
    }
    if (next_alert < grouped_alerts.size() &&
        grouped_alerts[next_alert].date == p.date) {
      out << to_string(grouped_alerts[next_alert].cls);
    }
    out << '\n';
  }
}

void write_detections_csv(const std::vector<Detection>& detections,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << "date,direction,statistic\n";
  for (const auto& d : detections) {
    out << from_ordinal(d.date) << ',' << to_string(d.direction) << ','
        << format_double(d.statistic) << '\n';
  }
}

void write_synth_sidecar(const SynthSpec& spec, const SynthResult& result,
                         const std::filesystem::path& path) {
  nlohmann::json doc{
      {"ib_day", from_ordinal(result.ib_day)},
      {"params",
       {{"l_max", spec.params.l_max},
        {"A", spec.params.A},
        {"B", spec.params.B},
        {"m", spec.params.m},
        {"C1", spec.params.C1},
        {"C2", spec.params.C2},
        {"omega", spec.params.omega},
        {"noise_sigma", spec.noise_sigma},
        {"prefix_sigma", spec.prefix_sigma},
        {"prefix", spec.prefix}}},
      {"seed", spec.seed},
  };
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << doc.dump(2) << '\n';
}

}  // namespace lppl
