#include "zenoscat/kk.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"
#include "zenoscat/units.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace zenoscat {

std::complex<double> ModulationSpectrum::at(int K) const {
    if (K < -K_max || K > K_max) return {0.0, 0.0};
    return lambda[static_cast<std::size_t>(K + K_max)];
}

double ModulationSpectrum::total_weight() const {
    double s = 0.0;
    for (const auto& l : lambda) s += std::norm(l);
    return s;
}

std::string ModulationSpectrum::to_csv() const {
    std::ostringstream os;
    os << "K,re_lambda,im_lambda,abs2_lambda,E_support_K\n";
    for (int K = -K_max; K <= K_max; ++K) {
        const auto l = at(K);
        os << K << ',' << fmt12(l.real()) << ',' << fmt12(l.imag()) << ',' << fmt12(std::norm(l)) << ','
           << fmt12(support(K)) << '\n';
    }
    return os.str();
}

SpectralFunction spectral_function(const ModulationSpectrum& s) {
    SpectralFunction f;
    for (int K = -s.K_max; K <= s.K_max; ++K) {
        f.E.push_back(s.support(K));
        f.weight.push_back(s.weight(K));
    }
    return f;
}

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// lambda_K = (1/M) sum_j eps(t_j) exp(+2 pi i j K / M)
std::vector<std::complex<double>> fourier_lambda(const PulseTrain& pulse, int charge, double h_eff, int M) {
    auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
    if (!buf) throw std::bad_alloc();
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(M, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (int j = 0; j < M; ++j) {
        double phi = 0.0;
        for (const auto& h : pulse.harmonics) {
            if (h.amplitude == 0.0) continue;
            const double z = charge * h_eff * h.amplitude / (h.n * pulse.omega_B);
            // reduce n j mod M before scaling keeps the phase argument exact
            const long long r = (static_cast<long long>(h.n) * j) % M;
            phi += z * std::sin(2.0 * units::pi * static_cast<double>(r) / M);
        }
        buf[j][0] = std::cos(phi);
        buf[j][1] = -std::sin(phi);
    }
    fftw_execute(plan);
    std::vector<std::complex<double>> out(M);
    for (int j = 0; j < M; ++j) out[j] = {buf[j][0] / M, buf[j][1] / M};
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return out;
}

} // namespace

ModulationSpectrum modulation_coefficients(const PulseTrain& pulse, int charge, double h_eff, int K_window,
                                           int samples) {
    pulse.validate();
    if (charge < 1) throw std::invalid_argument("modulation charge must be >= 1");
    if (!(h_eff > 0.0)) throw std::invalid_argument("h_eff must be positive");
    if (samples < 16) throw std::invalid_argument("too few samples per period");

    const int M = samples;
    const auto raw = fourier_lambda(pulse, charge, h_eff, M);
    auto coef = [&](int K) { return raw[static_cast<std::size_t>((K % M + M) % M)]; };

    // weight near the Nyquist index signals aliasing
    double alias = 0.0;
    for (int K = M / 2 - M / 8; K <= M / 2; ++K) alias += std::norm(coef(K)) + (K < M / 2 ? std::norm(coef(-K)) : 0.0);
    if (alias > 1e-13) {
        std::ostringstream os;
        os << "modulation spectrum reaches the sampling limit (weight " << alias << " near |K| = " << M / 2
           << "); increase samples per period";
        throw NumericalError(os.str());
    }

    const int Khalf = M / 2 - 1;
    auto outside = [&](int Kw) {
        double s = 0.0;
        for (int K = Kw + 1; K <= Khalf; ++K) s += std::norm(coef(K)) + std::norm(coef(-K));
        if (M % 2 == 0) s += std::norm(coef(M / 2));
        return s;
    };

    ModulationSpectrum spec;
    spec.charge = charge;
    spec.omega_B = pulse.omega_B;
    spec.B0 = pulse.B0;
    spec.h_eff = h_eff;
    int Kw = K_window;
    if (Kw <= 0) {
        Kw = 1;
        while (Kw < Khalf && (outside(Kw) > 1e-12 || std::abs(coef(Kw)) > 1e-8 || std::abs(coef(-Kw)) > 1e-8)) ++Kw;
    }
    if (Kw > Khalf) throw std::invalid_argument("modulation window exceeds half the sample count");
    spec.K_max = Kw;
    spec.tail_mass = outside(Kw);
    if (spec.tail_mass > 1e-6) {
        std::ostringstream os;
        os << "modulation window |K| <= " << Kw << " misses spectral weight " << spec.tail_mass
           << "; use a larger window";
        throw NumericalError(os.str());
    }
    spec.lambda.resize(static_cast<std::size_t>(2 * Kw + 1));
    for (int K = -Kw; K <= Kw; ++K) spec.lambda[static_cast<std::size_t>(K + Kw)] = coef(K);
    return spec;
}

double spectral_overlap(const ModulationSpectrum& spectrum, const TransitionProbabilityTable& G) {
    double s = 0.0;
    for (int K = -spectrum.K_max; K <= spectrum.K_max; ++K) {
        const double w = spectrum.weight(K);
        if (w == 0.0) continue;
        const double E = spectrum.support(K);
        const auto g = G.value(E);
        if (!g) {
            if (w > 1e-6) {
                std::ostringstream os;
                os << "spectral support at E = " << fmt12(E) << " K (K = " << K << ", weight " << w
                   << ") lies beyond the G grid (max " << fmt12(G.E_max()) << " K)";
                throw NumericalError(os.str());
            }
            continue;
        }
        s += w * *g;
    }
    return s;
}

BranchingPrediction predict_branching(const PulseTrain& pulse, const TransitionProbabilityTable& G0,
                                      const TransitionProbabilityTable& Gm1, double h_eff) {
    BranchingPrediction p;
    p.sigma0 = spectral_overlap(modulation_coefficients(pulse, 1, h_eff), G0);
    p.sigma_m1 = spectral_overlap(modulation_coefficients(pulse, 2, h_eff), Gm1);
    p.ratio = p.sigma_m1 > 0.0 ? p.sigma0 / p.sigma_m1 : std::numeric_limits<double>::infinity();
    return p;
}

namespace {

// exit-label resolved rates 2 pi kappa |lambda_{-K}|^2 G(q h B0 - K omega)
std::map<int, double> channel_rates(const ModulationSpectrum& s, const TransitionProbabilityTable& G, double kappa) {
    std::map<int, double> r;
    for (int K = -s.K_max; K <= s.K_max; ++K) {
        const double w = s.weight(-K);
        if (w == 0.0) continue;
        const double E = s.support(-K);
        const auto g = G.value(E);
        if (!g) {
            if (w > 1e-6)
                throw NumericalError("decay trace: support at E = " + fmt12(E) + " K lies beyond the G grid");
            continue;
        }
        const double rate = 2.0 * units::pi * kappa * w * *g;
        if (rate > 0.0) r[K] = rate;
    }
    return r;
}

} // namespace

DecayTrace decay_trace(const PulseTrain& pulse, const TransitionProbabilityTable& G0,
                       const TransitionProbabilityTable& Gm1, double h_eff, const std::vector<double>& times,
                       double rate_scale) {
    const auto r0 = channel_rates(modulation_coefficients(pulse, 1, h_eff), G0, rate_scale);
    const auto r1 = channel_rates(modulation_coefficients(pulse, 2, h_eff), Gm1, rate_scale);
    DecayTrace d;
    d.times = times;
    for (const auto& [K, r] : r0) d.rate0 += r;
    for (const auto& [K, r] : r1) d.rate_m1 += r;
    const double R = d.rate0 + d.rate_m1;
    for (const auto& [K, r] : r0) d.population0[K].reserve(times.size());
    for (const auto& [K, r] : r1) d.population_m1[K].reserve(times.size());
    double tmax = 0.0;
    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("decay trace: negative time");
        tmax = std::max(tmax, t);
        const double surv = std::exp(-R * t);
        d.survival.push_back(surv);
        // (1 - e^{-Rt})/R, with the R -> 0 limit t
        const double g = R > 0.0 ? -std::expm1(-R * t) / R : t;
        for (const auto& [K, r] : r0) d.population0[K].push_back(r * g);
        for (const auto& [K, r] : r1) d.population_m1[K].push_back(r * g);
    }
    if (R * tmax > 0.1) {
        std::ostringstream os;
        os << "R t reaches " << R * tmax << " > 0.1; outside the weak-coupling regime of the effective model";
        d.warnings.push_back(os.str());
    }
    return d;
}

std::string DecayTrace::to_csv() const {
    std::ostringstream os;
    os << "t,survival";
    for (const auto& [K, v] : population0) os << ",c0_K" << K;
    for (const auto& [K, v] : population_m1) os << ",cm1_L" << K;
    os << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << fmt12(times[i]) << ',' << fmt12(survival[i]);
        for (const auto& [K, v] : population0) os << ',' << fmt12(v[i]);
        for (const auto& [K, v] : population_m1) os << ',' << fmt12(v[i]);
        os << '\n';
    }
    return os.str();
}

} // namespace zenoscat
