#include "zenoscat/errors.hpp"
#include "zenoscat/retrieval.hpp"
#include "zenoscat/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace zenoscat;

namespace {

constexpr double kHeff = 1.2202e-4;

TransitionProbabilityTable smooth_table(int f) {
    std::vector<double> E, G;
    for (int i = 1; i <= 2000; ++i) {
        E.push_back(i * 2.5e-4);
        const double e = E.back();
        G.push_back(std::pow(e, 2.5) * (1.0 + 0.5 * std::sin(60.0 * e + f)) + 1e-9);
    }
    return TransitionProbabilityTable(f, E, G);
}

} // namespace

TEST_CASE("forward-model trial sets invert to the generating tables") {
    const std::map<int, TransitionProbabilityTable> truth{{0, smooth_table(0)}, {-1, smooth_table(-1)}};
    const double w = units::omega_from_mhz(147.46);
    TrialRunSet set;
    for (const auto& p : trial_pulse_ladder(320.0, w, {40.0, 80.0, 120.0, 160.0, 200.0, 240.0}))
        set.runs.push_back(forward_trial(p, truth, kHeff));
    for (int f : {0, -1}) {
        const auto res = retrieve_G(set, f);
        REQUIRE(res.table.energies().size() > 10);
        double worst = 0.0;
        int merged = 0;
        for (std::size_t i = 0; i < res.table.energies().size(); ++i) {
            const double E = res.table.energies()[i];
            const double g = truth.at(f)(E);
            worst = std::max(worst, std::abs(res.table.values()[i] - g) / g);
            if (res.estimates[i] > 1) ++merged;
        }
        CHECK(worst < 1e-6);
        CHECK(merged > 0);
        CHECK(res.warnings.empty());
        REQUIRE(res.table.reference.has_value());
        CHECK(res.table.reference->first == doctest::Approx(channel_charge(f) * kHeff * 320.0));
    }
}

TEST_CASE("requested grid points without estimates are reported") {
    const std::map<int, TransitionProbabilityTable> truth{{0, smooth_table(0)}};
    const double w = units::omega_from_mhz(150.0);
    TrialRunSet set;
    for (const auto& p : trial_pulse_ladder(320.0, w, {60.0})) set.runs.push_back(forward_trial(p, truth, kHeff));
    RetrievalOptions opt;
    opt.grid = std::vector<double>{kHeff * 320.0, kHeff * 320.0 + w, 0.123456};
    CHECK_THROWS_AS(retrieve_G(set, 0, opt), NumericalError);
    opt.grid = std::vector<double>{kHeff * 320.0, kHeff * 320.0 + w};
    const auto res = retrieve_G(set, 0, opt);
    CHECK(res.table.energies().size() == 2);
}

TEST_CASE("inconsistent estimates raise a spread warning") {
    const std::map<int, TransitionProbabilityTable> truth{{0, smooth_table(0)}};
    const double w = units::omega_from_mhz(150.0);
    TrialRunSet set;
    for (const auto& p : trial_pulse_ladder(320.0, w, {60.0, 120.0})) set.runs.push_back(forward_trial(p, truth, kHeff));
    set.runs[1].sigma[0][0] *= 1.5;
    const auto res = retrieve_G(set, 0);
    CHECK_FALSE(res.warnings.empty());
}

TEST_CASE("channel charge") {
    CHECK(channel_charge(0) == 1);
    CHECK(channel_charge(-1) == 2);
    CHECK_THROWS(channel_charge(1));
}
