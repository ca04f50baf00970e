#include "zenoscat/optimizer.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"
#include "zenoscat/parallel.hpp"
#include "zenoscat/retrieval.hpp"
#include "zenoscat/units.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace zenoscat {

void GaConfig::validate() const {
    if (population < 4) throw ConfigError("GA population must be at least 4");
    if (generations < 1) throw ConfigError("GA needs at least one generation");
    if (n_harmonics < 1) throw ConfigError("GA needs at least one harmonic");
    if (!(omega_min_mhz > 0.0) || !(omega_max_mhz > omega_min_mhz) || !std::isfinite(omega_max_mhz))
        throw ConfigError("GA frequency bounds must satisfy 0 < min < max < inf");
    if (!(amplitude_max >= 0.0) || !std::isfinite(amplitude_max)) throw ConfigError("GA amplitude bound must be finite");
    if (!(mutation_scale >= 0.0)) throw ConfigError("mutation_scale must be non-negative");
    if (mutation_probability < 0.0 || mutation_probability > 1.0) throw ConfigError("mutation_probability not in [0, 1]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw ConfigError("crossover_rate not in [0, 1]");
    if (tournament < 1) throw ConfigError("tournament size must be >= 1");
    if (elitism < 0 || elitism >= population) throw ConfigError("elitism must lie in [0, population)");
}

double objective(const PulseTrain& pulse, const TransitionProbabilityTable& G, int f, double h_eff) {
    return spectral_overlap(modulation_coefficients(pulse, channel_charge(f), h_eff), G);
}

double GaResult::selectivity() const {
    return target == 0 ? prediction.sigma_m1 / prediction.sigma0 : prediction.sigma0 / prediction.sigma_m1;
}

double GaResult::static_selectivity() const {
    return target == 0 ? static_prediction.sigma_m1 / static_prediction.sigma0
                       : static_prediction.sigma0 / static_prediction.sigma_m1;
}

std::string GaResult::history_jsonl() const {
    std::ostringstream os;
    for (const auto& g : history) {
        nlohmann::ordered_json j;
        j["generation"] = g.generation;
        j["seed"] = seed;
        j["best"] = fmt12(g.best);
        j["mean"] = fmt12(g.mean);
        j["infeasible"] = g.infeasible;
        std::vector<std::string> p;
        for (double x : g.best_parameters) p.push_back(fmt12(x));
        j["best_parameters"] = p;
        os << j.dump() << '\n';
    }
    return os.str();
}

PulseTrain pulse_from_parameters(double B0, const std::vector<double>& x) {
    PulseTrain p;
    p.B0 = B0;
    p.omega_B = units::omega_from_mhz(x.at(0));
    for (std::size_t n = 1; n < x.size(); ++n) p.harmonics.push_back({static_cast<int>(n), x[n]});
    return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// independent stream for (seed, generation, individual)
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t individual) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (generation + 0x632be59bd9b4e019ULL));
    s = splitmix64(s ^ (individual + 0x85157af5ULL));
    return std::mt19937_64(s);
}

} // namespace

GaResult ga_optimize(const GaConfig& cfg, const TransitionProbabilityTable& G0, const TransitionProbabilityTable& Gm1,
                     double B0, int target, double h_eff) {
    cfg.validate();
    if (target != 0 && target != -1) throw ConfigError("GA target channel must be 0 or -1");
    const auto& G = target == 0 ? G0 : Gm1;
    const std::size_t dim = static_cast<std::size_t>(cfg.n_harmonics) + 1;
    std::vector<double> lo(dim, -cfg.amplitude_max), hi(dim, cfg.amplitude_max);
    lo[0] = cfg.omega_min_mhz;
    hi[0] = cfg.omega_max_mhz;

    const auto P = static_cast<std::size_t>(cfg.population);
    std::vector<std::vector<double>> pop(P, std::vector<double>(dim));
    // individual 0 is the static pulse at mid frequency; the rest are uniform draws
    pop[0][0] = 0.5 * (lo[0] + hi[0]);
    for (std::size_t i = 1; i < P; ++i) {
        auto rng = stream(cfg.seed, 0, i);
        for (std::size_t d = 0; d < dim; ++d) pop[i][d] = std::uniform_real_distribution<double>(lo[d], hi[d])(rng);
    }

    auto fitness_of = [&](const std::vector<double>& x) {
        try {
            const double v = objective(pulse_from_parameters(B0, x), G, target, h_eff);
            return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    GaResult res;
    res.target = target;
    res.seed = cfg.seed;
    std::vector<double> fit(P);
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();

    for (int gen = 0; gen < cfg.generations; ++gen) {
        parallel_for(P, cfg.threads, [&](std::size_t i) { fit[i] = fitness_of(pop[i]); });

        std::vector<std::size_t> order(P);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });
        if (fit[order[0]] < best_f || best_x.empty()) {
            best_f = fit[order[0]];
            best_x = pop[order[0]];
        }
        GaGeneration h;
        h.generation = gen;
        h.best = best_f;
        double sum = 0.0;
        int feasible = 0;
        for (double f : fit) {
            if (std::isfinite(f)) {
                sum += f;
                ++feasible;
            }
        }
        h.infeasible = static_cast<int>(P) - feasible;
        h.mean = feasible > 0 ? sum / feasible : std::numeric_limits<double>::infinity();
        h.best_parameters = best_x;
        res.history.push_back(std::move(h));

        if (gen + 1 == cfg.generations) break;

        std::vector<std::vector<double>> next(P);
        for (std::size_t e = 0; e < static_cast<std::size_t>(cfg.elitism); ++e) next[e] = pop[order[e]];
        for (std::size_t i = static_cast<std::size_t>(cfg.elitism); i < P; ++i) {
            auto rng = stream(cfg.seed, static_cast<std::uint64_t>(gen) + 1, i);
            std::uniform_int_distribution<std::size_t> pick(0, P - 1);
            auto tournament = [&] {
                std::size_t w = pick(rng);
                for (int t = 1; t < cfg.tournament; ++t) {
                    const std::size_t c = pick(rng);
                    if (fit[c] < fit[w] || (fit[c] == fit[w] && c < w)) w = c;
                }
                return w;
            };
            const auto& a = pop[tournament()];
            const auto& b = pop[tournament()];
            std::vector<double> child = a;
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            if (u01(rng) < cfg.crossover_rate) {
                for (std::size_t d = 0; d < dim; ++d) {
                    const double cmin = std::min(a[d], b[d]), cmax = std::max(a[d], b[d]);
                    const double span = cmax - cmin;
                    child[d] = std::uniform_real_distribution<double>(cmin - cfg.blend_alpha * span,
                                                                      cmax + cfg.blend_alpha * span)(rng);
                }
            }
            for (std::size_t d = 0; d < dim; ++d) {
                if (u01(rng) < cfg.mutation_probability)
                    child[d] += std::normal_distribution<double>(0.0, cfg.mutation_scale * (hi[d] - lo[d]))(rng);
                child[d] = std::clamp(child[d], lo[d], hi[d]);
            }
            next[i] = std::move(child);
        }
        pop = std::move(next);
    }

    res.best = pulse_from_parameters(B0, best_x);
    res.best_objective = best_f;
    PulseTrain stat{B0, res.best.omega_B, {}};
    res.static_objective = objective(stat, G, target, h_eff);
    res.prediction = predict_branching(res.best, G0, Gm1, h_eff);
    res.static_prediction = predict_branching(stat, G0, Gm1, h_eff);
    return res;
}

} // namespace zenoscat
