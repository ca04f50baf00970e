#pragma once

#include "zenoscat/gtable.hpp"
#include "zenoscat/kk.hpp"
#include "zenoscat/scattering.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zenoscat {

// Exit channel f = M_J of the N = 0 exit state (0 or -1); modulation charge q = 1 - f.
int channel_charge(int f);

struct TrialRun {
    PulseTrain pulse;
    std::map<int, std::map<int, double>> sigma; // f -> K -> sigma_{f,K}
    std::map<int, std::map<int, double>> E_out; // f -> K -> exit energy, K
    std::map<int, ModulationSpectrum> spectra;  // f -> spectrum with charge 1 - f
};

struct TrialRunSet {
    std::vector<TrialRun> runs;
};

struct RetrievalOptions {
    double lambda_floor = 1e-3;       // minimum |lambda_{f,-K}|^2 for an estimate
    double energy_tolerance = 1e-7;   // K, estimates closer than this share a grid point
    double spread_warning = 0.10;     // relative spread of merged estimates
    std::optional<std::vector<double>> grid; // requested exit energies
};

struct RetrievalResult {
    TransitionProbabilityTable table;
    std::vector<int> estimates;  // number of merged estimates per grid point
    std::vector<std::string> warnings;
};

// G_f(E) = sum sigma_{f,K} / sum |lambda_{f,-K}|^2 over the estimates landing at E.
RetrievalResult retrieve_G(const TrialRunSet& trials, int f, const RetrievalOptions& options = {});

// Trial record from a Floquet scattering result; exit channel f is the N = 0, J = 1, M_J = f ladder.
TrialRun trial_from_scattering(const PulseTrain& pulse, const ScatteringResult& result, double h_eff,
                               const std::vector<int>& channels = {0, -1});

// Trial record generated by the effective model: sigma_{f,K} = |lambda_{f,-K}|^2 G_f(q h B0 - K omega).
TrialRun forward_trial(const PulseTrain& pulse, const std::map<int, TransitionProbabilityTable>& G, double h_eff);

// Single-harmonic pulses a cos(omega t) for each amplitude, plus the static pulse first.
std::vector<PulseTrain> trial_pulse_ladder(double B0, double omega_B, const std::vector<double>& amplitudes);

} // namespace zenoscat
