#include "zenoscat/errors.hpp"
#include "zenoscat/scattering.hpp"
#include "zenoscat/units.hpp"
#include "zenoscat/workflow.hpp"

#include <doctest.h>

#include <cmath>

using namespace zenoscat;

namespace {

constexpr double kMass = 2.7703;

RadialProblem single_channel(int l, double E, std::function<double(double)> V, std::vector<double> breaks = {}) {
    RadialProblem p;
    p.n = 1;
    p.mass = kMass;
    p.energy = E;
    p.threshold = {0.0};
    p.l = {l};
    p.potential = [V](double R, Eigen::MatrixXd& M) {
        M.resize(1, 1);
        M(0, 0) = V(R);
    };
    p.breakpoints = std::move(breaks);
    return p;
}

// Riccati function x f_l(x) and its x-derivative
std::pair<double, double> ric(int l, double x, bool regular) {
    const double f = regular ? std::sph_bessel(l, x) : std::sph_neumann(l, x);
    const double f1 = regular ? std::sph_bessel(l + 1, x) : std::sph_neumann(l + 1, x);
    return {x * f, (l + 1) * f - x * f1};
}

double square_well_K(int l, double E, double V0, double a) {
    const double c = kMass / units::hbar2_over_2amu;
    const double k = std::sqrt(c * E), kap = std::sqrt(c * (E + V0));
    const auto [ji, dji] = ric(l, kap * a, true);
    const double L = kap * dji / ji;
    const auto [j, dj] = ric(l, k * a, true);
    const auto [y, dy] = ric(l, k * a, false);
    return (k * dj - L * j) / (k * dy - L * y);
}

} // namespace

TEST_CASE("square well phase shifts match the analytic result") {
    const double V0 = 8.0, a = 3.0;
    for (int l = 0; l <= 2; ++l)
        for (double E : {1e-4, 0.05, 2.0}) {
            auto p = single_channel(l, E, [&](double R) { return R < a ? -V0 : 0.0; }, {a});
            RadialGrid g;
            g.R_min = 1e-4;
            g.R_max = 12.0;
            g.step_factor = 0.002;
            g.h_max = 0.01;
            const auto m = match_riccati(p, propagate(p, g));
            REQUIRE(m.open.size() == 1);
            const double ref = square_well_K(l, E, V0, a);
            CAPTURE(l);
            CAPTURE(E);
            CHECK(std::abs(m.K(0, 0) - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("free motion gives a vanishing K matrix") {
    for (int l = 0; l <= 3; ++l) {
        auto p = single_channel(l, 0.3, [](double) { return 0.0; });
        RadialGrid g;
        g.R_min = 1e-3;
        g.R_max = 20.0;
        g.step_factor = 0.002;
        g.h_max = 0.01;
        const auto m = match_riccati(p, propagate(p, g));
        CHECK(std::abs(m.K(0, 0)) < 1e-10);
    }
}

TEST_CASE("zero interaction on the Floquet channel basis gives T = 0") {
    auto model = ModelSystem::reference();
    model.terms = {RadialTerm::make_lj(0, 0.0, 0.0), RadialTerm::make_lj(2, 0.0, 0.0)};
    model.grid.R_min = 1e-3;
    model.grid.R_max = 30.0;
    PulseTrain p{300.0, units::omega_from_mhz(150.0), {{1, 20.0}}};
    model.basis.n_max = 2;
    const auto r = floquet_run(model, p);
    CHECK(r.T.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Riccati functions have unit Wronskian and the closed log-derivatives are exact") {
    for (int l = 0; l <= 4; ++l)
        for (double k : {1e-3, 0.2, 3.0})
            for (double R : {5.0, 40.0}) {
                const auto v = riccati_open(l, k, R);
                CHECK(v.J * v.dN - v.dJ * v.N == doctest::Approx(1.0).epsilon(1e-10));
            }
    for (int l = 0; l <= 4; ++l)
        for (double kap : {0.05, 0.7, 4.0}) {
            const double R = 9.0, x = kap * R, h = 1e-5;
            auto lg = [&](auto f) { return kap * (std::log(f(x + h)) - std::log(f(x - h))) / (2 * h); };
            const double nu = l + 0.5;
            const double grow = lg([&](double z) { return std::sqrt(z) * std::cyl_bessel_i(nu, z); });
            const double dec = lg([&](double z) { return std::sqrt(z) * std::cyl_bessel_k(nu, z); });
            const auto [g, d] = closed_log_derivatives(l, kap, R);
            CHECK(g == doctest::Approx(grow).epsilon(1e-8));
            CHECK(d == doctest::Approx(dec).epsilon(1e-8));
        }
    const auto [g, d] = closed_log_derivatives(2, 1.0, 900.0);
    CHECK(g == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(d == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("coupled model system: unitary S, symmetric T, converged grid") {
    auto model = ModelSystem::reference();
    model.grid.check_convergence = true;
    model.grid.convergence_tol = 1e-5;
    const auto r = static_run(model, 180.0);
    CHECK(r.unitarity_defect < 1e-6);
    CHECK(r.symmetry_defect < 1e-8);
    CHECK(r.convergence_delta >= 0.0);
    CHECK(r.convergence_delta < 1e-5);
    CHECK(r.sigma({0, 1, 0}, 0) > 0.0);
    CHECK(r.sigma({0, 1, -1}, 0) > 0.0);
    CHECK(r.sigma({0, 1, 0}, 1) == 0.0);
}

TEST_CASE("threshold channels are rejected") {
    auto p = single_channel(0, 0.0, [](double) { return 0.0; });
    RadialGrid g;
    g.R_max = 10.0;
    CHECK_THROWS_AS(match_riccati(p, propagate(p, g)), NumericalError);
}

TEST_CASE("halved grid doubles the step count") {
    RadialGrid g;
    const auto h = g.halved();
    CHECK(h.step_factor == doctest::Approx(0.5 * g.step_factor));
}
