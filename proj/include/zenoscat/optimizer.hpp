#pragma once

#include "zenoscat/kk.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zenoscat {

struct GaConfig {
    int population = 64;
    int generations = 200;
    int n_harmonics = 6;
    double omega_min_mhz = 50.0;  // omega_B / 2 pi
    double omega_max_mhz = 500.0;
    double amplitude_max = 1000.0; // G, |a_n| bound
    double mutation_scale = 0.05;  // Gaussian sigma as fraction of bound width
    double mutation_probability = 0.2;
    double crossover_rate = 0.9;
    double blend_alpha = 0.5;      // BLX-alpha
    int tournament = 3;
    int elitism = 2;
    std::uint64_t seed = 1;
    int threads = 1;

    void validate() const;
    bool operator==(const GaConfig&) const = default;
};

// Overlap of channel f's spectrum with G_f; smaller means more suppressed.
double objective(const PulseTrain& pulse, const TransitionProbabilityTable& G, int f, double h_eff);

struct GaGeneration {
    int generation = 0;
    double best = 0.0;
    double mean = 0.0; // over feasible individuals
    int infeasible = 0;
    std::vector<double> best_parameters; // omega_B/2pi in MHz, then a_1..a_n in G
};

struct GaResult {
    PulseTrain best;
    double best_objective = 0.0;
    double static_objective = 0.0;
    std::vector<GaGeneration> history;
    BranchingPrediction prediction;
    BranchingPrediction static_prediction;
    int target = 0;
    std::uint64_t seed = 0;

    // suppression of the target relative to the other channel
    double selectivity() const;
    double static_selectivity() const;
    std::string history_jsonl() const;
};

PulseTrain pulse_from_parameters(double B0, const std::vector<double>& x);

GaResult ga_optimize(const GaConfig& config, const TransitionProbabilityTable& G0,
                     const TransitionProbabilityTable& Gm1, double B0, int target, double h_eff);

} // namespace zenoscat
