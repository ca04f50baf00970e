#include "zenoscat/retrieval.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zenoscat {

int channel_charge(int f) {
    if (f > 0) throw std::invalid_argument("exit channel index must be <= 0");
    return 1 - f;
}

namespace {

struct Estimate {
    double E, sigma, weight;
};

} // namespace

RetrievalResult retrieve_G(const TrialRunSet& trials, int f, const RetrievalOptions& opt) {
    std::vector<Estimate> est;
    std::vector<double> statics; // static-trial exit energies and sigma
    std::optional<std::pair<double, double>> reference;
    for (const auto& run : trials.runs) {
        auto sit = run.sigma.find(f);
        auto spit = run.spectra.find(f);
        if (sit == run.sigma.end() || spit == run.spectra.end()) continue;
        const auto& spec = spit->second;
        if (spec.charge != channel_charge(f))
            throw ConfigError("trial spectrum charge does not match exit channel " + std::to_string(f));
        const auto eit = run.E_out.find(f);
        for (const auto& [K, sigma] : sit->second) {
            const double w = spec.weight(-K);
            if (!(w > opt.lambda_floor)) continue;
            double E = spec.support(-K);
            if (eit != run.E_out.end()) {
                auto e = eit->second.find(K);
                if (e != eit->second.end()) E = e->second;
            }
            est.push_back({E, sigma, w});
            if (run.pulse.is_static() && K == 0 && !reference) reference = std::make_pair(E, sigma);
        }
    }
    if (est.empty()) throw NumericalError("no trial estimates above the lambda floor for channel " + std::to_string(f));

    std::stable_sort(est.begin(), est.end(), [](const Estimate& a, const Estimate& b) { return a.E < b.E; });
    struct Cluster {
        double E_sum = 0.0, sigma = 0.0, weight = 0.0, gmin = 0.0, gmax = 0.0;
        int count = 0;
        double E() const { return E_sum / count; }
    };
    std::vector<Cluster> clusters;
    for (const auto& e : est) {
        const double g = e.sigma / e.weight;
        if (clusters.empty() || e.E - clusters.back().E() > opt.energy_tolerance) {
            clusters.push_back({});
            clusters.back().gmin = clusters.back().gmax = g;
        }
        auto& c = clusters.back();
        c.E_sum += e.E;
        c.sigma += e.sigma;
        c.weight += e.weight;
        c.gmin = std::min(c.gmin, g);
        c.gmax = std::max(c.gmax, g);
        ++c.count;
    }

    RetrievalResult res;
    std::vector<double> E, G;
    auto emit = [&](const Cluster& c, double at) {
        E.push_back(at);
        G.push_back(at <= 0.0 ? 0.0 : c.sigma / c.weight);
        res.estimates.push_back(c.count);
        if (c.count > 1 && c.gmax > 0.0 && (c.gmax - c.gmin) > opt.spread_warning * c.gmax) {
            std::ostringstream os;
            os << "channel " << f << ": estimates at E_out = " << fmt12(at) << " K spread from " << fmt12(c.gmin)
               << " to " << fmt12(c.gmax);
            res.warnings.push_back(os.str());
        }
    };
    if (opt.grid) {
        std::vector<double> missing;
        for (double Eg : *opt.grid) {
            auto it = std::min_element(clusters.begin(), clusters.end(), [&](const Cluster& a, const Cluster& b) {
                return std::abs(a.E() - Eg) < std::abs(b.E() - Eg);
            });
            if (std::abs(it->E() - Eg) > opt.energy_tolerance) {
                missing.push_back(Eg);
                continue;
            }
            emit(*it, Eg);
        }
        if (!missing.empty()) {
            std::ostringstream os;
            os << "retrieval grid for channel " << f << " has no estimate at E_out =";
            for (double m : missing) os << ' ' << fmt12(m);
            os << " K; add trial pulses covering these energies";
            throw NumericalError(os.str());
        }
    } else {
        for (const auto& c : clusters) emit(c, c.E());
    }
    res.table = TransitionProbabilityTable(f, std::move(E), std::move(G));
    res.table.reference = reference;
    return res;
}

TrialRun trial_from_scattering(const PulseTrain& pulse, const ScatteringResult& result, double h_eff,
                               const std::vector<int>& channels) {
    TrialRun t;
    t.pulse = pulse;
    for (int f : channels) {
        const int q = channel_charge(f);
        t.spectra.emplace(f, modulation_coefficients(pulse, q, h_eff));
        auto& sig = t.sigma[f];
        auto& eo = t.E_out[f];
        for (const auto& [label, e] : result.exits) {
            if (label.alpha != ChannelLabel{0, 1, f}) continue;
            sig[label.K] = e.sigma;
            eo[label.K] = e.E_out;
        }
    }
    return t;
}

TrialRun forward_trial(const PulseTrain& pulse, const std::map<int, TransitionProbabilityTable>& G, double h_eff) {
    TrialRun t;
    t.pulse = pulse;
    for (const auto& [f, table] : G) {
        auto spec = modulation_coefficients(pulse, channel_charge(f), h_eff);
        for (int K = -spec.K_max; K <= spec.K_max; ++K) {
            const double E = spec.support(-K);
            const auto g = table.value(E);
            if (!g) continue;
            t.sigma[f][K] = spec.weight(-K) * *g;
            t.E_out[f][K] = E;
        }
        t.spectra.emplace(f, std::move(spec));
    }
    return t;
}

std::vector<PulseTrain> trial_pulse_ladder(double B0, double omega_B, const std::vector<double>& amplitudes) {
    std::vector<PulseTrain> out;
    out.push_back({B0, omega_B, {}});
    for (double a : amplitudes) out.push_back({B0, omega_B, {{1, a}}});
    return out;
}

} // namespace zenoscat
