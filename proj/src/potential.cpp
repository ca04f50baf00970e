#include "zenoscat/potential.hpp"

#include "zenoscat/angular.hpp"
#include "zenoscat/errors.hpp"

#include <boost/math/interpolators/makima.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace zenoscat {

TabulatedRadial::TabulatedRadial(std::vector<double> R, std::vector<double> V, std::string source)
    : R_(std::move(R)), V_(std::move(V)), source_(std::move(source)) {
    if (R_.size() != V_.size()) throw ConfigError("radial table: column length mismatch");
    if (R_.size() < 4) throw ConfigError("radial table needs at least 4 nodes");
    for (std::size_t i = 0; i < R_.size(); ++i) {
        if (!(R_[i] > 0.0)) throw ConfigError("radial table: R must be positive");
        if (i > 0 && !(R_[i] > R_[i - 1])) throw ConfigError("radial table: R must be strictly increasing");
    }
    auto x = R_;
    auto y = V_;
    auto spline = std::make_shared<boost::math::interpolators::makima<std::vector<double>>>(std::move(x), std::move(y));
    spline_ = std::make_shared<const std::function<double(double)>>([spline](double r) { return (*spline)(r); });
}

TabulatedRadial TabulatedRadial::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open radial table '" + path + "'");
    std::vector<double> R, V;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double r, v;
        if (!(ls >> r)) continue;
        if (!(ls >> v)) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns (R, V)");
        R.push_back(r);
        V.push_back(v);
    }
    return TabulatedRadial(std::move(R), std::move(V), path);
}

double TabulatedRadial::operator()(double R) const {
    if (!spline_) throw std::logic_error("empty radial table");
    if (R < R_.front()) throw std::domain_error("R below the first node of radial table");
    if (R > R_.back()) return V_.back() * std::pow(R_.back() / R, 6);
    return (*spline_)(R);
}

double RadialTerm::value(double R) const {
    if (!(R > 0.0)) throw std::domain_error("radial term evaluated at R <= 0");
    switch (form) {
    case Form::lennard_jones: {
        const double r6 = 1.0 / (R * R * R * R * R * R);
        return lj.C12 * r6 * r6 - lj.C6 * r6;
    }
    case Form::exp_disp: return ed.A * std::exp(-ed.beta * R) - ed.C6 / std::pow(R, 6);
    case Form::tabulated: return table(R);
    }
    return 0.0;
}

RadialTerm RadialTerm::make_lj(int lambda, double C12, double C6) {
    RadialTerm t;
    t.lambda = lambda;
    t.form = Form::lennard_jones;
    t.lj = {C12, C6};
    return t;
}

RadialTerm RadialTerm::make_exp_disp(int lambda, double A, double beta, double C6) {
    RadialTerm t;
    t.lambda = lambda;
    t.form = Form::exp_disp;
    t.ed = {A, beta, C6};
    return t;
}

RadialTerm RadialTerm::make_table(int lambda, TabulatedRadial table) {
    RadialTerm t;
    t.lambda = lambda;
    t.form = Form::tabulated;
    t.table = std::move(table);
    return t;
}

double potential_value(const std::vector<RadialTerm>& terms, double R, double theta) {
    if (!(R > 0.0)) throw std::domain_error("potential_value: R <= 0");
    const double x = std::clamp(std::cos(theta), -1.0, 1.0);
    double v = 0.0;
    for (const auto& t : terms) v += t.value(R) * legendre_p(t.lambda, x);
    return v;
}

namespace {
double sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }
} // namespace

double angular_coupling(int lp, int mlp, int Np, int MNp, int l, int ml, int N, int MN, int lambda) {
    if (MNp + mlp != MN + ml) return 0.0;
    if ((Np + N + lambda) % 2 != 0 || (lp + l + lambda) % 2 != 0) return 0.0;
    const double a = wigner_3j(Np, lambda, N, 0, 0, 0);
    if (a == 0.0) return 0.0;
    const double b = wigner_3j(lp, lambda, l, 0, 0, 0);
    if (b == 0.0) return 0.0;
    const int mu = mlp - ml;
    const double c = wigner_3j(Np, lambda, N, -MNp, -mu, MN);
    if (c == 0.0) return 0.0;
    const double d = wigner_3j(lp, lambda, l, -mlp, mu, ml);
    if (d == 0.0) return 0.0;
    return sign(mu + MNp + mlp) * std::sqrt(double(2 * Np + 1) * (2 * N + 1) * (2 * lp + 1) * (2 * l + 1)) * a * b * c *
           d;
}

double angular_coupling_coupled(const InternalState& bra, int lp, int mlp, const InternalState& ket, int l, int ml,
                                int lambda) {
    if (bra.S != ket.S) return 0.0;
    if (bra.M_J + mlp != ket.M_J + ml) return 0.0;
    const int S = ket.S;
    double v = 0.0;
    for (int MS = -S; MS <= S; ++MS) {
        const int MNp = bra.M_J - MS, MN = ket.M_J - MS;
        if (std::abs(MNp) > bra.N || std::abs(MN) > ket.N) continue;
        const double c1 = clebsch_gordan(bra.N, MNp, S, MS, bra.J, bra.M_J);
        if (c1 == 0.0) continue;
        const double c2 = clebsch_gordan(ket.N, MN, S, MS, ket.J, ket.M_J);
        if (c2 == 0.0) continue;
        v += c1 * c2 * angular_coupling(lp, mlp, bra.N, MNp, l, ml, ket.N, MN, lambda);
    }
    return v;
}

CouplingMatrixProvider::CouplingMatrixProvider(FloquetEigenbasis basis, int l_max, int M_total,
                                               std::vector<RadialTerm> terms, int l_parity)
    : basis_(std::move(basis)), M_(M_total), terms_(std::move(terms)) {
    if (l_max < 0) throw ConfigError("l_max must be non-negative");
    for (const auto& t : terms_) {
        if (t.lambda < 0) throw ConfigError("negative Legendre order in potential term");
        lambdas_.push_back(t.lambda);
    }

    const auto& states = basis_.states;
    const auto nprim_states = static_cast<Eigen::Index>(states.size());

    // primitive channels (state p, l)
    struct Prim {
        Eigen::Index p;
        int l, m;
    };
    std::vector<Prim> prim;
    std::map<std::pair<Eigen::Index, int>, Eigen::Index> prim_index;
    for (int l = l_parity % 2; l <= l_max; l += 2)
        for (Eigen::Index p = 0; p < nprim_states; ++p) {
            const int m = M_ - states[p].M_J;
            if (std::abs(m) > l) continue;
            prim_index[{p, l}] = static_cast<Eigen::Index>(prim.size());
            prim.push_back({p, l, m});
        }

    // channels (eigenstate e, l), ordered by l then eigenstate energy
    for (int l = l_parity % 2; l <= l_max; l += 2)
        for (std::size_t e = 0; e < basis_.size(); ++e) {
            const int m = M_ - basis_.M_J[e];
            if (std::abs(m) > l) continue;
            channels_.push_back({static_cast<int>(e), basis_.ladder[e], l, m, basis_.eps[e]});
        }

    const auto np = static_cast<Eigen::Index>(prim.size());
    const auto nc = static_cast<Eigen::Index>(channels_.size());
    U_ = Eigen::MatrixXd::Zero(np, nc);
    for (Eigen::Index c = 0; c < nc; ++c) {
        const auto& ch = channels_[c];
        for (Eigen::Index p = 0; p < nprim_states; ++p) {
            const double w = basis_.W(ch.eigen, p);
            if (w == 0.0) continue;
            auto it = prim_index.find({p, ch.l});
            if (it == prim_index.end()) continue; // M_J differs, weight must vanish
            U_(it->second, c) = w;
        }
    }

    std::map<std::tuple<int, int, int, int, int, int, int, int, int>, double> cache;
    for (const auto& t : terms_) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(np, np);
        for (Eigen::Index i = 0; i < np; ++i)
            for (Eigen::Index j = i; j < np; ++j) {
                const auto& a = states[prim[i].p];
                const auto& b = states[prim[j].p];
                if (a.n != b.n) continue;
                const auto key = std::make_tuple(t.lambda, a.N, a.J, a.M_J, prim[i].l, b.N, b.J, b.M_J, prim[j].l);
                auto it = cache.find(key);
                double v;
                if (it != cache.end()) {
                    v = it->second;
                } else {
                    v = angular_coupling_coupled(a.internal(), prim[i].l, prim[i].m, b.internal(), prim[j].l,
                                                 prim[j].m, t.lambda);
                    cache.emplace(key, v);
                }
                A(i, j) = v;
                A(j, i) = v;
            }
        Eigen::MatrixXd Ac = U_.transpose() * A * U_;
        // symmetrize rounding; entries across M blocks are structurally zero
        Ac = 0.5 * (Ac + Ac.transpose()).eval();
        for (Eigen::Index i = 0; i < nc; ++i)
            for (Eigen::Index j = 0; j < nc; ++j) {
                if (basis_.M_J[channels_[i].eigen] + channels_[i].m_l != basis_.M_J[channels_[j].eigen] + channels_[j].m_l)
                    Ac(i, j) = 0.0;
            }
        A_prim_.push_back(std::move(A));
        A_.push_back(std::move(Ac));
    }
}

void CouplingMatrixProvider::coupling_matrix(double R, Eigen::MatrixXd& out) const {
    if (!(R > 0.0)) throw std::domain_error("coupling_matrix: R <= 0");
    const auto nc = static_cast<Eigen::Index>(channels_.size());
    out.setZero(nc, nc);
    for (std::size_t t = 0; t < terms_.size(); ++t) out.noalias() += terms_[t].value(R) * A_[t];
}

Eigen::MatrixXd CouplingMatrixProvider::coupling_matrix(double R) const {
    Eigen::MatrixXd out;
    coupling_matrix(R, out);
    return out;
}

Eigen::MatrixXd CouplingMatrixProvider::primitive_coupling_matrix(double R) const {
    if (!(R > 0.0)) throw std::domain_error("coupling_matrix: R <= 0");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(U_.rows(), U_.rows());
    for (std::size_t t = 0; t < terms_.size(); ++t) out += terms_[t].value(R) * A_prim_[t];
    return out;
}

int CouplingMatrixProvider::find(const ChannelLabel& alpha, int K, int l) const {
    for (std::size_t c = 0; c < channels_.size(); ++c)
        if (channels_[c].label.alpha == alpha && channels_[c].label.K == K && channels_[c].l == l)
            return static_cast<int>(c);
    return -1;
}

double auto_matching_radius(const CouplingMatrixProvider& provider, double tol, double R_start, double R_limit) {
    std::vector<double> scale;
    for (std::size_t t = 0; t < provider.terms().size(); ++t)
        scale.push_back(provider.angular_matrix(t).cwiseAbs().maxCoeff());
    auto worst = [&](double R) {
        double w = 0.0;
        for (std::size_t t = 0; t < scale.size(); ++t)
            w = std::max(w, std::abs(provider.terms()[t].value(R)) * scale[t]);
        return w;
    };
    double R = R_start;
    while (R < R_limit) {
        // require the bound over the next 10 A as well (skips nodes of V_lambda)
        bool ok = true;
        for (double r = R; r <= R + 10.0; r += 0.5)
            if (worst(r) >= tol) {
                ok = false;
                break;
            }
        if (ok) return R;
        R += 0.5;
    }
    throw NumericalError("no matching radius below " + std::to_string(R_limit) + " A with |V| < tolerance");
}

} // namespace zenoscat
