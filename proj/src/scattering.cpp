#include "zenoscat/scattering.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace zenoscat {

RadialGrid RadialGrid::halved() const {
    RadialGrid g = *this;
    g.step_factor *= 0.5;
    g.h_min *= 0.5;
    g.h_max *= 0.5;
    g.fixed_step *= 0.5;
    g.check_convergence = false;
    return g;
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct WEvaluator {
    const RadialProblem& p;
    double c; // 2 mu / hbar^2 in 1/(K A^2)

    explicit WEvaluator(const RadialProblem& prob) : p(prob), c(prob.mass / units::hbar2_over_2amu) {}

    void operator()(double R, Eigen::MatrixXd& W) const {
        p.potential(R, W);
        W *= c;
        const double r2 = 1.0 / (R * R);
        for (std::size_t i = 0; i < p.n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            W(ii, ii) += c * (p.threshold[i] - p.energy) + p.l[i] * (p.l[i] + 1) * r2;
        }
    }

    // largest local (potential + centrifugal) scale, excluding asymptotic thresholds
    double local_scale(const Eigen::MatrixXd& W) const {
        double s = 0.0;
        for (std::size_t i = 0; i < p.n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            s = std::max(s, std::abs(W(ii, ii) - c * (p.threshold[i] - p.energy)));
        }
        return s;
    }
};

} // namespace

Propagation propagate(const RadialProblem& problem, const RadialGrid& grid) {
    if (problem.n == 0) throw std::invalid_argument("propagate: empty problem");
    if (problem.threshold.size() != problem.n || problem.l.size() != problem.n)
        throw std::invalid_argument("propagate: channel arrays do not match problem size");
    if (!(grid.R_min > 0.0) || !(grid.R_max > grid.R_min))
        throw ConfigError("radial grid requires 0 < R_min < R_max");

    const auto n = static_cast<Eigen::Index>(problem.n);
    const WEvaluator Wf(problem);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

    std::vector<double> stops;
    for (double b : problem.breakpoints)
        if (b > grid.R_min && b < grid.R_max) stops.push_back(b);
    std::sort(stops.begin(), stops.end());
    stops.push_back(grid.R_max);

    Eigen::MatrixXd Wa(n, n), Wm(n, n), Wb(n, n), Y(n, n);
    Wf(std::nextafter(grid.R_min, inf), Wa);
    Y.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double regular = (problem.l[i] + 1) / grid.R_min;
        Y(i, i) = std::max(regular, std::sqrt(std::max(Wa(i, i), 0.0)));
    }

    const double kref2 = Wf.c * grid.ref_energy;
    double R = grid.R_min;
    std::size_t pairs = 0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    for (double stop : stops) {
        while (R < stop) {
            const double a = R;
            Wf(std::nextafter(a, inf), Wa);
            double h;
            if (grid.fixed_step > 0.0) {
                h = grid.fixed_step;
            } else {
                h = grid.step_factor / std::sqrt(Wf.local_scale(Wa) + kref2);
                h = std::clamp(h, grid.h_min, grid.h_max);
            }
            const double dist = stop - a;
            const double remaining = std::ceil(dist / (2.0 * h));
            if (remaining <= 2.0) h = dist / (2.0 * remaining);
            const bool last = (remaining <= 1.0);
            const double b = last ? stop : a + 2.0 * h;

            Wf(a + h, Wm);
            Wf(std::nextafter(b, -inf), Wb);

            Y.noalias() += (h / 3.0) * Wa;
            lu.compute(I + h * Y);
            Y = lu.solve(Y);
            lu.compute(I - (h * h / 6.0) * Wm);
            Y.noalias() += (4.0 * h / 3.0) * lu.solve(Wm);
            lu.compute(I + h * Y);
            Y = lu.solve(Y);
            Y.noalias() += (h / 3.0) * Wb;
            Y = (0.5 * (Y + Y.transpose())).eval();

            if (!Y.allFinite()) {
                std::ostringstream os;
                os << "log-derivative propagation produced non-finite values at R = " << b << " A";
                throw NumericalError(os.str());
            }
            R = b;
            ++pairs;
        }
    }
    return {R, std::move(Y), pairs};
}

RiccatiValues riccati_open(int l, double k, double R) {
    const double x = k * R;
    const double j = std::sph_bessel(l, x), j1 = std::sph_bessel(l + 1, x);
    const double y = std::sph_neumann(l, x), y1 = std::sph_neumann(l + 1, x);
    const double sk = std::sqrt(k);
    // d/dx [x f_l(x)] = (l+1) f_l - x f_{l+1}
    return {x * j / sk, sk * ((l + 1) * j - x * j1), x * y / sk, sk * ((l + 1) * y - x * y1)};
}

std::pair<double, double> closed_log_derivatives(int l, double kappa, double R) {
    const double x = kappa * R;
    // exact finite series: x k_l(x) ~ e^{-x} P(x), P = sum_j c_j (2x)^-j
    double P = 0.0, dP = 0.0, Q = 0.0, dQ = 0.0;
    double c = 1.0;
    for (int j = 0; j <= l; ++j) {
        if (j > 0) c *= double(l + j) * (l - j + 1) / j; // (l+j)!/(j!(l-j)!)
        const double t = c * std::pow(2.0 * x, -j);
        P += t;
        dP -= j * t / x;
        const double s = (j % 2 == 0) ? t : -t;
        Q += s;
        dQ -= j * s / x;
    }
    const double decaying = kappa * (-1.0 + dP / P);
    double growing;
    if (x < 600.0) {
        const double nu = l + 0.5;
        growing = kappa * ((l + 1) / x + std::cyl_bessel_i(nu + 1.0, x) / std::cyl_bessel_i(nu, x));
    } else {
        growing = kappa * (1.0 + dQ / Q);
    }
    return {growing, decaying};
}

Matching match_riccati(const RadialProblem& problem, const Propagation& prop) {
    const auto n = static_cast<Eigen::Index>(problem.n);
    const double c = problem.mass / units::hbar2_over_2amu;
    Eigen::VectorXd J(n), dJ(n), N(n), dN(n);
    Matching m;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double k2 = c * (problem.energy - problem.threshold[i]);
        if (std::abs(k2) < 1e-12) {
            std::ostringstream os;
            os << "channel " << i << " sits at its threshold (k^2 = " << k2
               << " A^-2); shift E_in to separate open and closed channels";
            throw NumericalError(os.str());
        }
        const int l = problem.l[i];
        if (k2 > 0.0) {
            const double k = std::sqrt(k2);
            const auto r = riccati_open(l, k, prop.R);
            J(i) = r.J;
            dJ(i) = r.dJ;
            N(i) = r.N;
            dN(i) = r.dN;
            m.open.push_back(static_cast<int>(i));
            m.k.push_back(k);
        } else {
            const auto [g, d] = closed_log_derivatives(l, std::sqrt(-k2), prop.R);
            J(i) = 1.0;
            dJ(i) = g;
            N(i) = 1.0;
            dN(i) = d;
        }
    }
    const Eigen::MatrixXd A = prop.Y * N.asDiagonal() - Eigen::MatrixXd(dN.asDiagonal());
    const auto no = static_cast<Eigen::Index>(m.open.size());
    Eigen::MatrixXd B(n, no);
    for (Eigen::Index q = 0; q < no; ++q) {
        const auto o = m.open[q];
        B.col(q) = prop.Y.col(o) * J(o);
        B(o, q) -= dJ(o);
    }
    const Eigen::MatrixXd Kt = A.partialPivLu().solve(B);
    m.K.resize(no, no);
    for (Eigen::Index p = 0; p < no; ++p)
        for (Eigen::Index q = 0; q < no; ++q) m.K(p, q) = Kt(m.open[p], q);
    if (!m.K.allFinite()) throw NumericalError("boundary matching produced a non-finite K matrix");
    return m;
}

int CollisionSystem::incident_channel() const {
    if (!provider) throw std::logic_error("collision system without coupling provider");
    const int c = provider->find(incident, 0, 0);
    if (c < 0)
        throw ConfigError("incident channel " + incident.str() + " with K=0, l=0 is not in the basis for M=" +
                          std::to_string(provider->M_total()));
    return c;
}

double CollisionSystem::E_F() const {
    return E_in + provider->channels()[incident_channel()].eps;
}

RadialProblem CollisionSystem::problem() const {
    if (!(mu > 0.0)) throw ConfigError("reduced mass must be positive");
    if (!(E_in > 0.0)) throw ConfigError("E_in must be positive");
    RadialProblem p;
    const auto& ch = provider->channels();
    p.n = ch.size();
    p.mass = mu;
    p.energy = E_F();
    for (const auto& c : ch) {
        p.threshold.push_back(c.eps);
        p.l.push_back(c.l);
    }
    auto prov = provider;
    p.potential = [prov](double R, Eigen::MatrixXd& V) { prov->coupling_matrix(R, V); };
    return p;
}

double ScatteringResult::sigma(const ChannelLabel& alpha, int K) const {
    auto it = exits.find({alpha, K});
    return it == exits.end() ? 0.0 : it->second.sigma;
}

double ScatteringResult::sigma_total_inelastic() const {
    double s = 0.0;
    const auto& inc = open[incident].label;
    for (const auto& [label, e] : exits)
        if (!(label == inc)) s += e.sigma;
    return s;
}

namespace {

ScatteringResult assemble(const Matching& m, const Propagation& prop, const CollisionSystem& system) {
    const auto& ch = system.provider->channels();
    const int inc = system.incident_channel();
    const auto no = static_cast<Eigen::Index>(m.open.size());
    ScatteringResult r;
    r.R_max = prop.R;
    r.pairs = prop.pairs;
    for (Eigen::Index q = 0; q < no; ++q) {
        r.open.push_back(ch[m.open[q]]);
        if (m.open[q] == inc) r.incident = static_cast<int>(q);
    }
    if (r.incident < 0) throw NumericalError("incident channel is closed");
    r.k_open = m.k;

    const std::complex<double> i1(0.0, 1.0);
    const Eigen::MatrixXcd Kc = m.K.cast<std::complex<double>>();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(no, no);
    const Eigen::MatrixXcd lhs = I - i1 * Kc;
    r.S = (I + i1 * Kc) * lhs.inverse();
    r.T = I - r.S;
    r.unitarity_defect = (r.S.adjoint() * r.S - I).cwiseAbs().maxCoeff();
    r.symmetry_defect = (r.T - r.T.transpose()).cwiseAbs().maxCoeff();

    const double kin = m.k[r.incident];
    const double E_F = system.E_F();
    for (Eigen::Index q = 0; q < no; ++q) {
        const auto& c = r.open[q];
        auto& e = r.exits[c.label];
        e.label = c.label;
        e.E_out = E_F - c.eps;
        e.k = m.k[q];
        e.sigma += units::pi / (kin * kin) * std::norm(r.T(q, r.incident));
    }
    return r;
}

} // namespace

ScatteringResult match_boundary(const Propagation& prop, const CollisionSystem& system) {
    const auto p = system.problem();
    return assemble(match_riccati(p, prop), prop, system);
}

ScatteringResult scatter(const CollisionSystem& system, const RadialGrid& grid_in) {
    RadialGrid grid = grid_in;
    if (!(grid.R_max > 0.0)) grid.R_max = auto_matching_radius(*system.provider, 1e-9, grid.R_min + 1.0);
    const auto problem = system.problem();
    const auto prop = propagate(problem, grid);
    const auto m = match_riccati(problem, prop);
    auto result = assemble(m, prop, system);
    if (grid.check_convergence) {
        const auto fine = match_riccati(problem, propagate(problem, grid.halved()));
        const double scale = std::max(1.0, m.K.cwiseAbs().maxCoeff());
        result.convergence_delta = (fine.K - m.K).cwiseAbs().maxCoeff() / scale;
        if (result.convergence_delta > grid.convergence_tol) {
            std::ostringstream os;
            os << "radial propagation not converged: halving the step changes K by " << result.convergence_delta
               << " (tolerance " << grid.convergence_tol << ", " << prop.pairs << " Simpson pairs); reduce step_factor";
            throw NumericalError(os.str());
        }
    }
    return result;
}

} // namespace zenoscat
