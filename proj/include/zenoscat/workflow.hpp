#pragma once

#include "zenoscat/potential.hpp"
#include "zenoscat/scattering.hpp"

#include <string>
#include <vector>

namespace zenoscat {

struct BasisConfig {
    int N_max = 4;
    int n_max = -1; // < 0: sized from the modulation spectrum
    int l_max = 4;
    int parity = 0; // rotor parity; partial waves share it (s-wave incident on even N)
    int M_total = 1;
    bool operator==(const BasisConfig&) const = default;
};

// Everything that defines a collision apart from the pulse.
struct ModelSystem {
    MolecularConstants molecule = MolecularConstants::oxygen17();
    std::vector<RadialTerm> terms;
    BasisConfig basis;
    double mu = 0.0;   // amu
    double E_in = 1e-6; // K
    ChannelLabel incident{0, 1, 1};
    RadialGrid grid;
    bool operator==(const ModelSystem&) const = default;

    // 3He + 17O2 on the bundled model surface with the desk-scale basis (N_max = l_max = 2).
    static ModelSystem reference();
};

double reduced_mass_he3_o17() noexcept;

// Floquet window needed to hold the q = 2 sidebands of the pulse (tail weight < 1e-6), plus a margin.
int auto_floquet_window(const PulseTrain& pulse, double h_eff, int margin = 2);

std::shared_ptr<const CouplingMatrixProvider> make_provider(const ModelSystem& model, const PulseTrain& pulse);

ScatteringResult floquet_run(const ModelSystem& model, const PulseTrain& pulse);
ScatteringResult static_run(const ModelSystem& model, double B0);

struct ScanRow {
    double B0 = 0.0;
    double E_in = 0.0;
    double E_out0 = 0.0, sigma0 = 0.0;
    double E_out_m1 = 0.0, sigma_m1 = 0.0;
    double sigma_el = 0.0;
    double unitarity_defect = 0.0;
};

std::vector<ScanRow> static_scan(const ModelSystem& model, const std::vector<double>& B0, int threads = 1);
std::vector<ScanRow> incident_energy_scan(const ModelSystem& model, double B0, const std::vector<double>& E_in,
                                          int threads = 1);
std::string scan_csv(const std::vector<ScanRow>& rows);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

// Least-squares line through (log x, log y) for x in [x_min, x_max].
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double x_min, double x_max);

struct ThresholdScan {
    std::vector<ScanRow> rows;
    SlopeFit slope0, slope_m1;
};

// Static runs over B0; G_f(E_out) = sigma_f with slopes fitted over E_out in [E_min, E_max].
ThresholdScan threshold_scan(const ModelSystem& model, const std::vector<double>& B0, double E_min, double E_max,
                             int threads = 1);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);

} // namespace zenoscat
