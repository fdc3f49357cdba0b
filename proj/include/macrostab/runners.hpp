#pragma once

#include <exception>
#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "macrostab/scenario.hpp"

namespace macrostab {

inline constexpr const char* kVersion = "0.1.0";

// One experiment's structured section plus plot-ready CSV tables keyed by
// table name.
struct Report {
  nlohmann::json body;
  std::map<std::string, std::string> csv;
};

Report run_classify(const Scenario& scenario);
Report run_cluster(const Scenario& scenario);
Report run_measure(const Scenario& scenario);
Report run_decohere(const Scenario& scenario);
Report run_ground(const Scenario& scenario);
Report run_symmetry_breaking(const Scenario& scenario);

inline constexpr const char* kMeasureFamilyRule =
    "max deviation <= epsilon_measure at each of the two largest sizes";

// Validates, then runs every experiment in declaration order. The report holds
// the scenario echo, one section per experiment, the cluster/measurement
// correspondence when both ran, and a provenance block. CSV tables are
// returned through `csv` with names "<experiment>" or "<experiment>_<table>".
Report run_scenario(const Scenario& scenario);

// Writes report.json-style output and CSV files (<dir>/<scenario>_<table>.csv).
void write_report(const Report& report, const std::filesystem::path& path);
void write_csv_tables(const Report& report, const std::string& scenario_name,
                      const std::filesystem::path& dir);

// 0 success, 2 validation/argument/format, 3 numerical, 4 size/capability,
// 1 anything else.
int exit_code_for(const std::exception& error) noexcept;

}  // namespace macrostab
