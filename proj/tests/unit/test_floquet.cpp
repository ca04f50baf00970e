#include "../oracles.hpp"
#include "zenoscat/floquet.hpp"
#include "zenoscat/units.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

using namespace zenoscat;

namespace {

struct Uncoupled {
    int N, MN, MS;
};

// H_rot + gamma N.S + (2/3) lambda (3 S_z'^2 - S^2) + 2 mu0 B S_z built in |N M_N>|S M_S> with explicit
// spin-1 matrices and quadrature for the rotor matrix elements of C^2_q.
Eigen::MatrixXd uncoupled_hamiltonian(const MolecularConstants& c, int N_max, double B, std::vector<Uncoupled>& basis) {
    basis.clear();
    for (int N = 0; N <= N_max; N += 2)
        for (int MN = -N; MN <= N; ++MN)
            for (int MS = -1; MS <= 1; ++MS) basis.push_back({N, MN, MS});
    const int n = static_cast<int>(basis.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    auto lad = [](int j, int m, int d) { return std::sqrt(double(j * (j + 1) - m * (m + d))); };
    // spin tensor T^2_q between |1 ms> states
    auto spin_T2 = [&](int q, int msp, int ms) {
        Eigen::Matrix3d Sz = Eigen::Matrix3d::Zero(), Sp = Eigen::Matrix3d::Zero();
        for (int m = -1; m <= 1; ++m) Sz(1 - m, 1 - m) = m;
        for (int m = -1; m < 1; ++m) Sp(1 - (m + 1), 1 - m) = lad(1, m, 1);
        const Eigen::Matrix3d Sm = Sp.transpose();
        Eigen::Matrix3d T;
        switch (q) {
        case 0: T = (3.0 * Sz * Sz - 2.0 * Eigen::Matrix3d::Identity()) / std::sqrt(6.0); break;
        case 1: T = -0.5 * (Sp * Sz + Sz * Sp); break;
        case -1: T = 0.5 * (Sm * Sz + Sz * Sm); break;
        case 2: T = 0.5 * Sp * Sp; break;
        default: T = 0.5 * Sm * Sm; break;
        }
        return T(1 - msp, 1 - ms);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& b = basis[i];
            const auto& k = basis[j];
            double v = 0.0;
            if (b.N == k.N) {
                if (b.MN == k.MN && b.MS == k.MS) v += c.B_e * k.N * (k.N + 1) + 2.0 * c.mu0 * B * k.MS + c.gamma * k.MN * k.MS;
                if (b.MN == k.MN + 1 && b.MS == k.MS - 1) v += 0.5 * c.gamma * lad(k.N, k.MN, 1) * lad(1, k.MS, -1);
                if (b.MN == k.MN - 1 && b.MS == k.MS + 1) v += 0.5 * c.gamma * lad(k.N, k.MN, -1) * lad(1, k.MS, 1);
            }
            for (int q = -2; q <= 2; ++q) {
                if (b.MS != k.MS + q) continue;
                const double C = std::sqrt(4.0 * M_PI / 5.0) * oracle::gaunt_quadrature(b.N, b.MN, 2, -q, k.N, k.MN);
                v += (2.0 / 3.0) * c.lambda_ss * std::sqrt(6.0) * ((q % 2) ? -1.0 : 1.0) * C * spin_T2(q, b.MS, k.MS);
            }
            H(i, j) = v;
        }
    return H;
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("coupled-basis rotor Hamiltonian matches an uncoupled-basis construction") {
    const auto c = MolecularConstants::oxygen17();
    for (double B : {0.0, 180.0, 2000.0, 30000.0}) {
        std::vector<Uncoupled> ub;
        const Eigen::MatrixXd Hu = uncoupled_hamiltonian(c, 2, B, ub);
        CHECK((Hu - Hu.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        const auto a = sorted_eigenvalues(static_hamiltonian(internal_states(2, 0), c, B));
        const auto b = sorted_eigenvalues(Hu);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12).scale(10.0));
    }
}

TEST_CASE("N = 0, J = 1 Zeeman levels split as 2 mu0 B M_J") {
    auto c = MolecularConstants::oxygen17();
    const auto H = static_hamiltonian(internal_states(0, 0), c, 250.0);
    REQUIRE(H.rows() == 3);
    for (int i = 0; i < 3; ++i) CHECK(H(i, i) == doctest::Approx(2.0 * c.mu0 * 250.0 * (1 - i)).epsilon(1e-14));
    CHECK(H(0, 1) == 0.0);
}

TEST_CASE("Floquet matrix is exactly symmetric") {
    const auto c = MolecularConstants::oxygen17();
    PulseTrain p{300.0, units::omega_from_mhz(150.0), {{1, 40.0}, {2, -15.0}, {3, 5.0}}};
    const auto basis = floquet_basis(internal_states(2, 0), 3);
    const auto H = build_floquet_matrix(basis, c, p);
    CHECK(H == H.transpose());
}

TEST_CASE("static pulse: quasi-energies are Zeeman eigenvalues shifted by K omega") {
    const auto c = MolecularConstants::oxygen17();
    const double w = units::omega_from_mhz(150.0);
    PulseTrain p{320.0, w, {}};
    const auto fb = floquet_eigenbasis(c, p, 2, 2);
    const auto E = sorted_eigenvalues(static_hamiltonian(internal_states(2, 0), c, 320.0));
    double worst = 0.0;
    for (std::size_t e = 0; e < fb.size(); ++e) {
        double best = 1e300;
        for (double x : E) best = std::min(best, std::abs(fb.eps[e] - fb.ladder[e].K * w - x));
        worst = std::max(worst, best);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("ladder spacing equals omega_B under modulation") {
    const auto c = MolecularConstants::oxygen17();
    const double w = units::omega_from_mhz(147.46);
    PulseTrain p{320.0, w, {{1, 60.0}, {2, 20.0}}};
    const int n_max = 16;
    const auto fb = floquet_eigenbasis(c, p, 2, n_max);
    REQUIRE(fb.size() == internal_states(2, 0).size() * (2 * n_max + 1));
    double worst = 0.0;
    int pairs = 0;
    for (const auto& s : internal_states(2, 0)) {
        const ChannelLabel a{s.N, s.J, s.M_J};
        for (int K = -4; K < 4; ++K) {
            worst = std::max(worst, std::abs(fb.quasi_energy(a, K + 1) - fb.quasi_energy(a, K) - w));
            ++pairs;
        }
    }
    CHECK(pairs > 0);
    CHECK(worst < 1e-8);
}

TEST_CASE("single-level Floquet states carry Bessel amplitudes") {
    // N = 0 only: each M_J level is an isolated two-level-free oscillator E(t) = 2 mu0 M (B0 + a cos wt)
    const auto c = MolecularConstants::oxygen17();
    const double w = units::omega_from_mhz(100.0);
    const double a = 30.0;
    PulseTrain p{200.0, w, {{1, a}}};
    const int n_max = 24;
    const auto fb = floquet_eigenbasis(c, p, 0, n_max);
    for (int M : {1, -1}) {
        const double x = 2.0 * c.mu0 * M * a / w;
        for (int K = -3; K <= 3; ++K) {
            const int e = fb.find({0, 1, M}, K);
            REQUIRE(e >= 0);
            CHECK(fb.eps[e] == doctest::Approx(2.0 * c.mu0 * M * 200.0 + K * w).epsilon(1e-12));
            double worst = 0.0;
            for (std::size_t j = 0; j < fb.states.size(); ++j) {
                if (fb.states[j].M_J != M) continue;
                const int m = fb.states[j].n - K;
                worst = std::max(worst, std::abs(std::abs(fb.W(e, j)) - std::abs(std::cyl_bessel_j(std::abs(m), std::abs(x)))));
            }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("pulse validation") {
    PulseTrain p{100.0, 0.0, {}};
    CHECK_THROWS(p.validate());
    p.omega_B = 1e-3;
    p.harmonics = {{1, 2.0}, {1, 3.0}};
    CHECK_THROWS(p.validate());
    p.harmonics = {{1, 2.0}, {3, 0.0}};
    CHECK_NOTHROW(p.validate());
    CHECK(p.max_harmonic() == 1);
    CHECK(p.field(0.0) == doctest::Approx(102.0));
    CHECK(fourier_field_components(p, -1) == doctest::Approx(1.0));
}
