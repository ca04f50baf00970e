#include "zenoscat/kk.hpp"
#include "zenoscat/optimizer.hpp"
#include "zenoscat/units.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace zenoscat;

namespace {

constexpr double kHeff = 1.2202e-4;

// valley of depth 1e-3 at E_v on a flat background
TransitionProbabilityTable valley(int f, double Ev, double width) {
    std::vector<double> E, G;
    for (int i = 1; i <= 1500; ++i) {
        E.push_back(i * 4e-4);
        const double x = (E.back() - Ev) / width;
        G.push_back(1.0 - (1.0 - 1e-3) * std::exp(-x * x));
    }
    return TransitionProbabilityTable(f, E, G);
}

GaConfig small_config(std::uint64_t seed) {
    GaConfig c;
    c.population = 24;
    c.generations = 30;
    c.n_harmonics = 3;
    c.amplitude_max = 150.0;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("parameter decoding") {
    const auto p = pulse_from_parameters(180.0, {150.0, 10.0, -5.0});
    CHECK(p.B0 == 180.0);
    CHECK(p.omega_B == doctest::Approx(units::omega_from_mhz(150.0)));
    REQUIRE(p.harmonics.size() == 2);
    CHECK(p.harmonics[1].n == 2);
    CHECK(p.harmonics[1].amplitude == -5.0);
}

TEST_CASE("objective is the spectral overlap of the target channel") {
    const auto G = valley(-1, 0.05, 0.004);
    const PulseTrain p{180.0, units::omega_from_mhz(120.0), {{1, 40.0}}};
    CHECK(objective(p, G, -1, kHeff) == doctest::Approx(spectral_overlap(modulation_coefficients(p, 2, kHeff), G)));
}

TEST_CASE("GA is deterministic, monotone and never worse than the static pulse") {
    const auto G0 = valley(0, 0.2, 0.01);
    const auto Gm1 = valley(-1, 0.06, 0.004);
    const auto a = ga_optimize(small_config(1), G0, Gm1, 180.0, -1, kHeff);
    const auto b = ga_optimize(small_config(1), G0, Gm1, 180.0, -1, kHeff);
    CHECK(a.history_jsonl() == b.history_jsonl());
    CHECK(a.best == b.best);
    auto t = small_config(1);
    t.threads = 3;
    CHECK(ga_optimize(t, G0, Gm1, 180.0, -1, kHeff).history_jsonl() == a.history_jsonl());
    const auto c = ga_optimize(small_config(2), G0, Gm1, 180.0, -1, kHeff);
    CHECK(c.history_jsonl() != a.history_jsonl());
    for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i].best <= a.history[i - 1].best);
    CHECK(a.best_objective <= a.static_objective);
    CHECK(a.best_objective == doctest::Approx(objective(a.best, Gm1, -1, kHeff)));
    CHECK(a.history.size() == 30);
}

TEST_CASE("GA beats random search with the same evaluation budget") {
    const auto G0 = valley(0, 0.2, 0.01);
    const auto Gm1 = valley(-1, 0.06, 0.004);
    const auto cfg = small_config(3);
    const auto ga = ga_optimize(cfg, G0, Gm1, 180.0, -1, kHeff);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> fw(cfg.omega_min_mhz, cfg.omega_max_mhz),
        fa(-cfg.amplitude_max, cfg.amplitude_max);
    double best = 1e300;
    const int budget = cfg.population * cfg.generations;
    for (int i = 0; i < budget; ++i) {
        std::vector<double> x{fw(rng)};
        for (int h = 0; h < cfg.n_harmonics; ++h) x.push_back(fa(rng));
        try {
            best = std::min(best, objective(pulse_from_parameters(180.0, x), Gm1, -1, kHeff));
        } catch (const std::exception&) {
        }
    }
    CHECK(ga.best_objective <= best);
}

TEST_CASE("configuration validation") {
    GaConfig c;
    c.population = 2;
    CHECK_THROWS(c.validate());
    c = GaConfig{};
    c.omega_max_mhz = c.omega_min_mhz;
    CHECK_THROWS(c.validate());
    c = GaConfig{};
    c.elitism = c.population;
    CHECK_THROWS(c.validate());
}
