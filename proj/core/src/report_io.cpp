#include "pfs/report_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pfs {

using nlohmann::json;

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string monitor_to_csv(const MonitorReport& report) {
  std::ostringstream os;
  os << "channel,value\n";
  for (const auto& [name, value] : report.channels)
    os << name << "," << csv_number(value) << "\n";
  return os.str();
}

std::string monitor_to_json(const MonitorReport& report) {
  json channels = json::object();
  for (const auto& [name, value] : report.channels) channels[name] = value;
  json j;
  j["channels"] = channels;
  j["times"] = report.times;
  j["energy_trace"] = report.energy_trace;
  return j.dump(2) + "\n";
}

std::string energy_trace_to_csv(const MonitorReport& report) {
  std::ostringstream os;
  os << "t,free_energy\n";
  for (size_t k = 0; k < report.times.size(); ++k)
    os << csv_number(report.times[k]) << ","
       << csv_number(k < report.energy_trace.size() ? report.energy_trace[k]
                                                    : 0.0)
       << "\n";
  return os.str();
}

std::string rate_report_to_csv(const RateReport& report) {
  std::set<std::string> columns;
  for (const auto& level : report.levels)
    for (const auto& [name, value] : level) columns.insert(name);
  std::ostringstream os;
  os << report.parameter;
  for (const auto& name : columns) os << "," << name;
  os << "\n";
  for (size_t i = 0; i < report.values.size(); ++i) {
    os << csv_number(report.values[i]);
    for (const auto& name : columns) {
      auto it = report.levels[i].find(name);
      os << ",";
      if (it != report.levels[i].end()) os << csv_number(it->second);
    }
    os << "\n";
  }
  return os.str();
}

std::string rate_report_to_json(const RateReport& report) {
  json j;
  j["parameter"] = report.parameter;
  j["values"] = report.values;
  json levels = json::array();
  for (const auto& level : report.levels) {
    json row = json::object();
    for (const auto& [name, value] : level) row[name] = value;
    levels.push_back(row);
  }
  j["levels"] = levels;
  j["slopes"] = report.slopes;
  j["fit_residuals"] = report.fit_residuals;
  j["reference"] = report.reference;
  j["failures"] = report.failures;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace pfs
