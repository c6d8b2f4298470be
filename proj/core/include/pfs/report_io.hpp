#pragma once

#include "pfs/asymptotics.hpp"
#include "pfs/diagnostics.hpp"

#include <string>

namespace pfs {

/// Scientific notation with 17 significant digits; round-trip exact for
/// 64-bit floats.
std::string csv_number(double v);

/// One row per registry channel: name,value.
std::string monitor_to_csv(const MonitorReport& report);
std::string monitor_to_json(const MonitorReport& report);

/// t,energy rows of the free-energy trace.
std::string energy_trace_to_csv(const MonitorReport& report);

/// One row per ladder level; the header names every channel column.
std::string rate_report_to_csv(const RateReport& report);
std::string rate_report_to_json(const RateReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pfs
