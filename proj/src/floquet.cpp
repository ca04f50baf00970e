#include "zenoscat/floquet.hpp"

#include "zenoscat/angular.hpp"
#include "zenoscat/errors.hpp"
#include "zenoscat/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace zenoscat {

MolecularConstants MolecularConstants::oxygen17() {
    constexpr double mass_ratio = (15.9949146 / 2.0) / (16.9991317 / 2.0);
    MolecularConstants c;
    c.B_e = 1.437682 * mass_ratio * units::cm_inverse;
    c.gamma = -0.008446 * mass_ratio * units::cm_inverse;
    c.lambda_ss = 1.984751 * units::cm_inverse;
    c.S = 1;
    c.mu0 = units::bohr_magneton;
    c.h_eff = 1.2202e-4;
    return c;
}

void MolecularConstants::validate() const {
    if (!(B_e > 0.0)) throw ConfigError("rotational constant B_e must be positive");
    if (S != 1) throw ConfigError("only S = 1 (3-Sigma) molecules are supported");
    if (!(mu0 > 0.0)) throw ConfigError("Bohr magneton mu0 must be positive");
    if (!(h_eff > 0.0)) throw ConfigError("h_eff must be positive");
}

void PulseTrain::validate() const {
    if (!(omega_B > 0.0)) throw ConfigError("omega_B must be positive");
    std::set<int> seen;
    for (const auto& h : harmonics) {
        if (h.n < 1) throw ConfigError("harmonic index must be a positive integer");
        if (!seen.insert(h.n).second) throw ConfigError("duplicate harmonic index " + std::to_string(h.n));
        if (!std::isfinite(h.amplitude)) throw ConfigError("non-finite harmonic amplitude");
    }
}

bool PulseTrain::is_static() const {
    return std::all_of(harmonics.begin(), harmonics.end(), [](const Harmonic& h) { return h.amplitude == 0.0; });
}

int PulseTrain::max_harmonic() const {
    int m = 0;
    for (const auto& h : harmonics)
        if (h.amplitude != 0.0) m = std::max(m, h.n);
    return m;
}

double PulseTrain::amplitude(int n) const {
    for (const auto& h : harmonics)
        if (h.n == n) return h.amplitude;
    return 0.0;
}

double PulseTrain::field(double t_over_period) const {
    double b = B0;
    for (const auto& h : harmonics) b += h.amplitude * std::cos(2.0 * units::pi * h.n * t_over_period);
    return b;
}

double fourier_field_components(const PulseTrain& pulse, int k) {
    if (k == 0) return pulse.B0;
    return 0.5 * pulse.amplitude(std::abs(k));
}

std::vector<InternalState> internal_states(int N_max, int parity, int S) {
    std::vector<InternalState> out;
    for (int N = parity % 2; N <= N_max; N += 2)
        for (int J = std::abs(N - S); J <= N + S; ++J)
            for (int M = J; M >= -J; --M) out.push_back({N, S, J, M});
    return out;
}

std::vector<FloquetBasisState> floquet_basis(const std::vector<InternalState>& internal, int n_max) {
    std::vector<FloquetBasisState> out;
    out.reserve(internal.size() * (2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n)
        for (const auto& s : internal) out.push_back({s.N, s.S, s.J, s.M_J, n});
    return out;
}

namespace {

double sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Field-free part of <N' S J' M'|H|N S J M>.
double field_free(const InternalState& b, const InternalState& k, const MolecularConstants& c) {
    if (b.M_J != k.M_J || b.J != k.J) return 0.0;
    const int S = c.S, J = b.J;
    double v = 0.0;
    if (b.N == k.N) {
        const int N = b.N;
        v += c.B_e * N * (N + 1);
        if (N > 0)
            v += c.gamma * sign(N + J + S) * std::sqrt(double(N) * (N + 1) * (2 * N + 1) * S * (S + 1) * (2 * S + 1)) *
                 wigner_6j(S, N, J, N, S, 1);
    }
    const int N = k.N, Np = b.N;
    const double t3 = wigner_3j(N, 2, Np, 0, 0, 0);
    if (t3 != 0.0) {
        v += 2.0 * std::sqrt(30.0) / 3.0 * c.lambda_ss * sign(J + Np + N + S) *
             std::sqrt(double(2 * N + 1) * (2 * Np + 1)) * t3 * wigner_6j(S, Np, J, N, S, 2);
    }
    return v;
}

// <N S J' M| 2 mu0 S_z |N S J M> per Gauss of field
double zeeman_unit(const InternalState& b, const InternalState& k, const MolecularConstants& c) {
    if (b.N != k.N || b.M_J != k.M_J) return 0.0;
    const int N = b.N, S = c.S, M = b.M_J, J = b.J, Jp = k.J;
    const double t3 = wigner_3j(J, 1, Jp, -M, 0, M);
    if (t3 == 0.0) return 0.0;
    return 2.0 * c.mu0 * sign(N + S - M + 1) * std::sqrt(double(S) * (S + 1) * (2 * S + 1) * (2 * J + 1) * (2 * Jp + 1)) *
           t3 * wigner_6j(S, Jp, N, J, S, 1);
}

} // namespace

double h_as_element(const FloquetBasisState& bra, const FloquetBasisState& ket, const MolecularConstants& consts,
                    const PulseTrain& pulse) {
    if (bra.S != ket.S) throw std::invalid_argument("h_as_element: spin mismatch");
    const int dn = bra.n - ket.n;
    double v = 0.0;
    if (dn == 0) v += field_free(bra.internal(), ket.internal(), consts);
    const double Bk = fourier_field_components(pulse, dn);
    if (Bk != 0.0) v += Bk * zeeman_unit(bra.internal(), ket.internal(), consts);
    return v;
}

Eigen::MatrixXd static_hamiltonian(const std::vector<InternalState>& internal, const MolecularConstants& consts,
                                   double B) {
    const auto n = static_cast<Eigen::Index>(internal.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = field_free(internal[i], internal[j], consts) + B * zeeman_unit(internal[i], internal[j], consts);
            H(i, j) = v;
            H(j, i) = v;
        }
    return H;
}

Eigen::MatrixXd build_floquet_matrix(const std::vector<FloquetBasisState>& basis, const MolecularConstants& consts,
                                     const PulseTrain& pulse) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = h_as_element(basis[i], basis[j], consts, pulse);
            H(i, j) = v;
            H(j, i) = v;
        }
        H(i, i) += basis[i].n * pulse.omega_B;
    }
    return H;
}

std::string ChannelLabel::str() const {
    std::ostringstream os;
    os << "N=" << N << ",J=" << J << ",M_J=" << M_J;
    return os.str();
}

int FloquetEigenbasis::find(const ChannelLabel& alpha, int K) const {
    for (std::size_t e = 0; e < ladder.size(); ++e)
        if (ladder[e].alpha == alpha && ladder[e].K == K) return static_cast<int>(e);
    return -1;
}

double FloquetEigenbasis::quasi_energy(const ChannelLabel& alpha, int K) const {
    const int e = find(alpha, K);
    if (e < 0) throw std::out_of_range("no Floquet state " + alpha.str() + " K=" + std::to_string(K));
    return eps[e];
}

FloquetEigenbasis diagonalize_asymptotic(const Eigen::MatrixXd& matrix, const std::vector<FloquetBasisState>& basis,
                                         double omega_B) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    if (matrix.rows() != dim || matrix.cols() != dim) throw std::invalid_argument("matrix/basis size mismatch");

    // connected components of the sparsity graph
    std::vector<int> comp(dim, -1);
    int ncomp = 0;
    for (Eigen::Index s = 0; s < dim; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<Eigen::Index> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            for (Eigen::Index j = 0; j < dim; ++j)
                if (comp[j] < 0 && (matrix(i, j) != 0.0 || matrix(j, i) != 0.0)) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }

    int n_max = 0;
    for (const auto& b : basis) n_max = std::max(n_max, std::abs(b.n));

    struct Eig {
        double value;
        Eigen::VectorXd vec;
    };
    std::vector<Eig> all;
    all.reserve(dim);
    for (int c = 0; c < ncomp; ++c) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < dim; ++i)
            if (comp[i] == c) idx.push_back(i);
        const auto m = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd block(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) block(a, b) = matrix(idx[a], idx[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        if (es.info() != Eigen::Success) throw NumericalError("Floquet block diagonalization failed");
        for (Eigen::Index k = 0; k < m; ++k) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
            Eigen::Index amax = 0;
            for (Eigen::Index a = 0; a < m; ++a) {
                v(idx[a]) = es.eigenvectors()(a, k);
                if (std::abs(es.eigenvectors()(a, k)) > std::abs(es.eigenvectors()(amax, k))) amax = a;
            }
            if (es.eigenvectors()(amax, k) < 0.0) v = -v;
            all.push_back({es.eigenvalues()(k), std::move(v)});
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Eig& a, const Eig& b) { return a.value < b.value; });

    FloquetEigenbasis out;
    out.states = basis;
    out.omega_B = omega_B;
    out.n_max = n_max;
    out.W.resize(dim, dim);
    out.eps.resize(dim);
    out.ladder.resize(dim);
    out.M_J.resize(dim);

    // dominant internal state of each eigenstate
    std::map<ChannelLabel, std::vector<std::size_t>> groups;
    for (std::size_t e = 0; e < all.size(); ++e) {
        out.W.row(static_cast<Eigen::Index>(e)) = all[e].vec.transpose();
        out.eps[e] = all[e].value;
        std::map<ChannelLabel, double> weight;
        for (Eigen::Index p = 0; p < dim; ++p) {
            const double w2 = all[e].vec(p) * all[e].vec(p);
            if (w2 != 0.0) weight[{basis[p].N, basis[p].J, basis[p].M_J}] += w2;
        }
        auto best = std::max_element(weight.begin(), weight.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        if (best->second < 0.5) {
            std::ostringstream os;
            os << "Floquet eigenstate at " << all[e].value << " K has no dominant internal state (max weight "
               << best->second << "); increase n_max or N_max";
            throw NumericalError(os.str());
        }
        out.M_J[e] = best->first.M_J;
        out.ladder[e].alpha = best->first;
        groups[best->first].push_back(e);
    }

    // within each channel the ladder is ordered in energy: K = -n_max .. n_max
    const std::size_t per_ladder = static_cast<std::size_t>(2 * n_max + 1);
    for (const auto& [alpha, members] : groups) {
        if (members.size() != per_ladder) {
            std::ostringstream os;
            os << "channel " << alpha.str() << " collects " << members.size() << " Floquet states instead of "
               << per_ladder << "; ladders cannot be disambiguated, increase n_max";
            throw NumericalError(os.str());
        }
        for (std::size_t r = 0; r < members.size(); ++r) {
            const auto e = members[r];
            const int K = static_cast<int>(r) - n_max;
            out.ladder[e].K = K;
            // Fourier centroid must agree away from the window edges
            if (std::abs(K) <= n_max / 2) {
                double centroid = 0.0;
                for (Eigen::Index p = 0; p < dim; ++p) centroid += basis[p].n * all[e].vec(p) * all[e].vec(p);
                if (std::abs(centroid - K) >= 0.5) {
                    std::ostringstream os;
                    os << "ladder of " << alpha.str() << " is not ordered by Fourier index near K=" << K
                       << " (centroid " << centroid << "); increase n_max";
                    throw NumericalError(os.str());
                }
            }
        }
    }
    return out;
}

FloquetEigenbasis floquet_eigenbasis(const MolecularConstants& consts, const PulseTrain& pulse, int N_max, int n_max,
                                     int parity) {
    pulse.validate();
    const auto basis = floquet_basis(internal_states(N_max, parity, consts.S), n_max);
    return diagonalize_asymptotic(build_floquet_matrix(basis, consts, pulse), basis, pulse.omega_B);
}

} // namespace zenoscat
