#pragma once

#include "zenoscat/floquet.hpp"
#include "zenoscat/gtable.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace zenoscat {

// Fourier coefficients of eps_q(t) = exp(-i q h_eff int_0^t B_osc) = sum_K lambda_K exp(-i K omega_B t).
struct ModulationSpectrum {
    int charge = 1;
    int K_max = 0; // window is [-K_max, K_max]
    std::vector<std::complex<double>> lambda; // index K + K_max
    double omega_B = 0.0;
    double B0 = 0.0;
    double h_eff = 0.0;
    double tail_mass = 0.0; // weight outside the stored window

    std::complex<double> at(int K) const;
    double weight(int K) const { return std::norm(at(K)); }
    // E = q h_eff B0 + K omega_B
    double support(int K) const { return charge * h_eff * B0 + K * omega_B; }
    double total_weight() const;
    std::string to_csv() const; // K,re_lambda,im_lambda,abs2_lambda,E_support_K
};

// Discrete measure F(E) = sum_K |lambda_K|^2 delta(E - E_K).
struct SpectralFunction {
    std::vector<double> E;
    std::vector<double> weight;
};

SpectralFunction spectral_function(const ModulationSpectrum& spectrum);

inline constexpr int kDefaultSamples = 4096;

// K_window <= 0 selects the smallest window holding all but 1e-12 of the weight.
ModulationSpectrum modulation_coefficients(const PulseTrain& pulse, int charge, double h_eff, int K_window = 0,
                                           int samples = kDefaultSamples);

// sum_K |lambda_K|^2 G(q h_eff B0 + K omega_B)
double spectral_overlap(const ModulationSpectrum& spectrum, const TransitionProbabilityTable& G);

struct BranchingPrediction {
    double sigma0 = 0.0;
    double sigma_m1 = 0.0;
    double ratio = 0.0; // sigma0 / sigma_m1
};

BranchingPrediction predict_branching(const PulseTrain& pulse, const TransitionProbabilityTable& G0,
                                      const TransitionProbabilityTable& Gm1, double h_eff);

struct DecayTrace {
    std::vector<double> times;
    std::vector<double> survival;                      // |c_1(t)|^2
    std::map<int, std::vector<double>> population0;    // K -> |c_{0,K}(t)|^2
    std::map<int, std::vector<double>> population_m1;  // L -> |c_{-1,L}(t)|^2
    double rate0 = 0.0, rate_m1 = 0.0;
    std::vector<std::string> warnings;
    std::string to_csv() const;
};

// Rates R_f = 2 pi rate_scale sum_K |lambda_{f,-K}|^2 G_f(E_out), with channel populations
// integrated from the rate equations: |c_{f,K}|^2 = (R_{f,K}/R)(1 - exp(-R t)).
DecayTrace decay_trace(const PulseTrain& pulse, const TransitionProbabilityTable& G0,
                       const TransitionProbabilityTable& Gm1, double h_eff, const std::vector<double>& times,
                       double rate_scale = 1.0);

} // namespace zenoscat
