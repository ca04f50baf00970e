#pragma once

#include "zenoscat/gtable.hpp"
#include "zenoscat/optimizer.hpp"
#include "zenoscat/units.hpp"
#include "zenoscat/workflow.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zenoscat {

struct ScanConfig {
    double B0_min = 100.0; // G
    double B0_max = 500.0; // G
    int B0_steps = 41;
    bool log_spacing = false;
    std::vector<double> E_in_values; // K, incident-energy scan in threshold-scan mode
    double fit_E_min = 1e-5;         // K
    double fit_E_max = 1e-3;         // K
    bool operator==(const ScanConfig&) const = default;
};

struct KKConfig {
    std::string G0_path;
    std::string Gm1_path;
    GInterpolation interpolation = GInterpolation::linear;
    double t_max = 0.0; // decay trace length in units of 1/(rate_scale G); 0 disables the trace
    int t_steps = 50;
    double rate_scale = 1.0;
    bool operator==(const KKConfig&) const = default;
};

struct RetrieveConfig {
    double omega_B = 0.0;            // K
    std::vector<double> amplitudes;  // G, single-harmonic trial ladder
    double lambda_floor = 1e-3;
    double energy_tolerance = 1e-7;  // K
    bool operator==(const RetrieveConfig&) const = default;
};

struct RunConfig {
    std::string mode = "floquet-run";
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir = ".";
    ModelSystem model = ModelSystem::reference();
    PulseTrain pulse{180.0, 150.0 * units::mhz, {}};
    ScanConfig scan;
    KKConfig kk;
    RetrieveConfig retrieve;
    GaConfig ga;
    int target = -1; // channel suppressed by the optimizer
    bool operator==(const RunConfig&) const = default;
};

// key = value lines with [section] headers; '#' starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

const std::vector<std::string>& run_modes();

} // namespace zenoscat
