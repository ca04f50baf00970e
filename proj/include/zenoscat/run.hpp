#pragma once

#include "zenoscat/config.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace zenoscat {

inline constexpr const char* kVersion = "1.0.0";

struct RunRecord {
    std::string mode;
    std::string config_echo;   // serialize_config of the resolved config
    double wall_seconds = 0.0;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> files; // name -> contents, in emission order

    const std::string* file(const std::string& name) const;
    // one JSON object, no trailing newline
    std::string jsonl() const;
};

// Dispatch on config.mode. Nothing is written to disk.
RunRecord run(const RunConfig& config);

// Write the side tables into config.out_dir and append the record to run_record.jsonl.
void write_outputs(const RunRecord& record, const std::string& out_dir);

// G_f(E_out) = sigma_f(B0) from a static scan, sorted by exit energy; rows with E_out <= 0 dropped.
TransitionProbabilityTable g_table_from_scan(const std::vector<ScanRow>& rows, int f,
                                             GInterpolation interp = GInterpolation::linear);

// B0 grid of the scan section
std::vector<double> scan_fields(const ScanConfig& scan);

} // namespace zenoscat
