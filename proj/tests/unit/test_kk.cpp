#include "zenoscat/errors.hpp"
#include "zenoscat/kk.hpp"
#include "zenoscat/units.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace zenoscat;

namespace {
constexpr double kHeff = 1.2202e-4;
}

TEST_CASE("single-harmonic modulation coefficients are Bessel functions") {
    const double w = units::omega_from_mhz(147.46);
    for (double a : {10.0, 184.4, 900.0})
        for (int q : {1, 2}) {
            PulseTrain p{320.0, w, {{1, a}}};
            const int win = std::max(20, modulation_coefficients(p, q, kHeff).K_max);
            const auto s = modulation_coefficients(p, q, kHeff, win);
            const double z = q * kHeff * a / w;
            for (int K = -20; K <= 20; ++K) {
                CAPTURE(K);
                CHECK(std::abs(s.at(K) - std::cyl_bessel_j(std::abs(K), z) * ((K < 0 && K % 2) ? -1.0 : 1.0)) < 1e-8);
            }
        }
}

TEST_CASE("Parseval holds for random pulse trains") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> f(50.0, 500.0), amp(-300.0, 300.0);
    std::uniform_int_distribution<int> nh(1, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        PulseTrain p{200.0, units::omega_from_mhz(f(rng)), {}};
        const int n = nh(rng);
        for (int h = 1; h <= n; ++h) p.harmonics.push_back({h, amp(rng)});
        for (int q : {1, 2}) {
            const auto s = modulation_coefficients(p, q, kHeff);
            worst = std::max(worst, std::abs(s.total_weight() + s.tail_mass - 1.0));
            CHECK(s.tail_mass < 1e-12);
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("cosine drives give real coefficients with lambda_-K = (-1)^K lambda_K for odd harmonics") {
    const double w = units::omega_from_mhz(211.0);
    for (const auto& harmonics :
         {std::vector<Harmonic>{{1, 120.0}}, std::vector<Harmonic>{{1, 80.0}, {3, -45.0}, {5, 20.0}},
          std::vector<Harmonic>{{1, 80.0}, {2, 60.0}}})
        for (int q : {1, 2}) {
            const auto s = modulation_coefficients(PulseTrain{300.0, w, harmonics}, q, kHeff);
            bool odd_only = true;
            for (const auto& h : harmonics) odd_only = odd_only && h.n % 2 == 1;
            for (int K = -10; K <= 10; ++K) {
                CAPTURE(K);
                CHECK(std::abs(s.at(K).imag()) < 1e-12);
                if (odd_only) CHECK(std::abs(s.at(-K) - (K % 2 ? -1.0 : 1.0) * s.at(K)) < 1e-12);
            }
        }
}

TEST_CASE("static pulse has a single line at q h B0") {
    PulseTrain p{250.0, units::omega_from_mhz(100.0), {}};
    const auto s = modulation_coefficients(p, 2, kHeff);
    CHECK(s.weight(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.support(0) == doctest::Approx(2 * kHeff * 250.0));
    const auto F = spectral_function(s);
    double tot = 0.0;
    for (double x : F.weight) tot += x;
    CHECK(tot == doctest::Approx(1.0));
}

TEST_CASE("spectral overlap equals the Bessel-weighted sum") {
    const double w = units::omega_from_mhz(150.0);
    PulseTrain p{320.0, w, {{1, 120.0}}};
    std::vector<double> E, G;
    for (int i = 1; i <= 1000; ++i) {
        E.push_back(i * 5e-4);
        G.push_back(std::exp(-std::pow((E.back() - 0.06) / 0.03, 2)) + 0.1);
    }
    TransitionProbabilityTable t(0, E, G);
    const auto s = modulation_coefficients(p, 1, kHeff);
    double ref = 0.0;
    const double z = kHeff * 120.0 / w;
    for (int K = -25; K <= 25; ++K) {
        const double Ek = kHeff * 320.0 + K * w;
        const double lam = std::cyl_bessel_j(std::abs(K), z);
        if (Ek > 0.0) ref += lam * lam * t(Ek);
    }
    CHECK(spectral_overlap(s, t) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("branching prediction and decay trace conserve probability") {
    const double w = units::omega_from_mhz(150.0);
    PulseTrain p{180.0, w, {{1, 50.0}, {2, 20.0}}};
    std::vector<double> E, G0, G1;
    for (int i = 1; i <= 300; ++i) {
        E.push_back(i * 1e-3);
        G0.push_back(1.0 + std::sin(E.back() * 40.0) * 0.5);
        G1.push_back(2.0 + std::cos(E.back() * 30.0));
    }
    TransitionProbabilityTable t0(0, E, G0), t1(-1, E, G1);
    const auto b = predict_branching(p, t0, t1, kHeff);
    CHECK(b.sigma0 == doctest::Approx(spectral_overlap(modulation_coefficients(p, 1, kHeff), t0)));
    CHECK(b.sigma_m1 == doctest::Approx(spectral_overlap(modulation_coefficients(p, 2, kHeff), t1)));
    CHECK(b.ratio == doctest::Approx(b.sigma0 / b.sigma_m1));
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(i * 0.05);
    const auto tr = decay_trace(p, t0, t1, kHeff, times, 1.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double tot = tr.survival[i];
        for (const auto& [K, v] : tr.population0) tot += v[i];
        for (const auto& [K, v] : tr.population_m1) tot += v[i];
        CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(tr.survival.back() == doctest::Approx(std::exp(-(tr.rate0 + tr.rate_m1) * times.back())).epsilon(1e-12));
}

TEST_CASE("spectrum reaching beyond the G grid is an error") {
    PulseTrain p{180.0, units::omega_from_mhz(150.0), {{1, 400.0}}};
    TransitionProbabilityTable t(0, {0.01, 0.02, 0.03}, {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(spectral_overlap(modulation_coefficients(p, 1, kHeff), t), NumericalError);
}
