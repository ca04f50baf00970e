#pragma once

#include "zenoscat/potential.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace zenoscat {

// psi'' = W(R) psi with W = (2 mu / hbar^2)(V(R) + diag(threshold) - E) + l(l+1)/R^2
struct RadialProblem {
    std::size_t n = 0;
    double mass = 1.0;                 // amu
    double energy = 0.0;               // total energy, K
    std::vector<double> threshold;     // K
    std::vector<int> l;
    std::function<void(double, Eigen::MatrixXd&)> potential; // K, n x n
    std::vector<double> breakpoints;   // radii where V may be discontinuous
};

struct RadialGrid {
    double R_min = 2.5;          // A
    double R_max = 0.0;          // A; <= 0 selects the radius where |V| < 1e-9 K
    double step_factor = 0.02;   // local phase advance per step
    double ref_energy = 0.5;     // K, kinetic scale entering the step rule
    double h_min = 1e-7;         // A
    double h_max = 0.5;          // A
    double fixed_step = 0.0;     // A; > 0 disables the adaptive rule
    bool check_convergence = false;
    double convergence_tol = 1e-6;
    bool operator==(const RadialGrid&) const = default;

    RadialGrid halved() const;
};

struct Propagation {
    double R = 0.0;
    Eigen::MatrixXd Y; // log-derivative psi' psi^-1 at R
    std::size_t pairs = 0;
};

// Johnson log-derivative propagation, one Simpson pair at a time.
Propagation propagate(const RadialProblem& problem, const RadialGrid& grid);

struct Matching {
    std::vector<int> open;     // indices of open channels
    std::vector<double> k;     // wavenumbers of open channels, 1/A
    Eigen::MatrixXd K;         // open-open reaction matrix
};

// Matches to Riccati-Bessel functions (open) and modified spherical Bessel functions (closed).
Matching match_riccati(const RadialProblem& problem, const Propagation& prop);

struct CollisionSystem {
    double mu = 0.0;   // amu
    double E_in = 0.0; // K
    ChannelLabel incident{0, 1, 1};
    std::shared_ptr<const CouplingMatrixProvider> provider;

    int incident_channel() const;
    double E_F() const;
    RadialProblem problem() const;
};

struct ExitChannel {
    LadderIndex label;
    double E_out = 0.0; // K
    double k = 0.0;     // 1/A
    double sigma = 0.0; // A^2, summed over l', m_l'
    auto operator<=>(const ExitChannel&) const = default;
};

struct ScatteringResult {
    std::vector<Channel> open;      // open channels in T/S ordering
    std::vector<double> k_open;
    Eigen::MatrixXcd T, S;
    int incident = -1;              // index of the incident channel within open
    std::map<LadderIndex, ExitChannel> exits;
    double unitarity_defect = 0.0;  // max |S^dag S - 1|
    double symmetry_defect = 0.0;   // max |T - T^T|
    double R_max = 0.0;
    std::size_t pairs = 0;
    double convergence_delta = -1.0; // max |dK| against the halved grid, < 0 if not checked

    double sigma(const ChannelLabel& alpha, int K) const;
    double sigma_total_inelastic() const;
};

ScatteringResult match_boundary(const Propagation& prop, const CollisionSystem& system);

// Propagation plus matching; resolves the automatic matching radius and the optional halved-step check.
ScatteringResult scatter(const CollisionSystem& system, const RadialGrid& grid);

// Riccati functions used by the matching, exposed for tests.
struct RiccatiValues {
    double J, dJ, N, dN;
};
RiccatiValues riccati_open(int l, double k, double R);
// Log-derivatives of the growing and decaying closed-channel solutions.
std::pair<double, double> closed_log_derivatives(int l, double kappa, double R);

} // namespace zenoscat
