#pragma once

#include "zenoscat/floquet.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace zenoscat {

struct LennardJones {
    double C12 = 0.0; // K A^12
    double C6 = 0.0;  // K A^6
    bool operator==(const LennardJones&) const = default;
};

// A exp(-beta R) - C6 / R^6
struct ExpDisp {
    double A = 0.0;    // K
    double beta = 0.0; // 1/A
    double C6 = 0.0;   // K A^6
    bool operator==(const ExpDisp&) const = default;
};

// Two-column table (R in A, V in K) interpolated with a modified Akima cubic.
// Beyond the last node the term continues as V_last (R_last/R)^6.
class TabulatedRadial {
public:
    TabulatedRadial() = default;
    TabulatedRadial(std::vector<double> R, std::vector<double> V, std::string source = {});
    static TabulatedRadial load(const std::string& path);
    double operator()(double R) const;
    const std::string& source() const { return source_; }
    const std::vector<double>& R() const { return R_; }
    const std::vector<double>& V() const { return V_; }
    bool operator==(const TabulatedRadial& o) const { return R_ == o.R_ && V_ == o.V_ && source_ == o.source_; }

private:
    std::vector<double> R_, V_;
    std::string source_;
    std::shared_ptr<const std::function<double(double)>> spline_;
};

struct RadialTerm {
    enum class Form { lennard_jones, exp_disp, tabulated };
    int lambda = 0;
    Form form = Form::lennard_jones;
    LennardJones lj;
    ExpDisp ed;
    TabulatedRadial table;

    double value(double R) const;
    bool operator==(const RadialTerm&) const = default;

    static RadialTerm make_lj(int lambda, double C12, double C6);
    static RadialTerm make_exp_disp(int lambda, double A, double beta, double C6);
    static RadialTerm make_table(int lambda, TabulatedRadial t);
};

// sum_lambda V_lambda(R) P_lambda(cos theta)
double potential_value(const std::vector<RadialTerm>& terms, double R, double theta);

// <N' M_N'| <l' m_l'| P_lambda(cos theta) |l m_l> |N M_N> for a rigid rotor and an atom.
double angular_coupling(int lp, int mlp, int Np, int MNp, int l, int ml, int N, int MN, int lambda);

// Same bracket between coupled rotor-spin states |N S J M_J> (spin is a spectator).
double angular_coupling_coupled(const InternalState& bra, int lp, int mlp, const InternalState& ket, int l, int ml,
                                int lambda);

struct Channel {
    int eigen = 0;      // row of the Floquet eigenbasis
    LadderIndex label;  // (alpha, K)
    int l = 0, m_l = 0;
    double eps = 0.0;   // quasi-energy, K
};

// Coupling matrix of the interaction in the Floquet channel basis for one total projection M.
class CouplingMatrixProvider {
public:
    CouplingMatrixProvider(FloquetEigenbasis basis, int l_max, int M_total, std::vector<RadialTerm> terms,
                           int l_parity = 0);

    const std::vector<Channel>& channels() const { return channels_; }
    const FloquetEigenbasis& eigenbasis() const { return basis_; }
    const std::vector<RadialTerm>& terms() const { return terms_; }
    int M_total() const { return M_; }
    std::size_t size() const { return channels_.size(); }

    // Potential (no centrifugal term) in the channel basis, K.
    Eigen::MatrixXd coupling_matrix(double R) const;
    void coupling_matrix(double R, Eigen::MatrixXd& out) const;
    // Same operator in the primitive |N S J M_J n>|l m_l> basis.
    Eigen::MatrixXd primitive_coupling_matrix(double R) const;
    // Columns map channels onto primitive channels.
    const Eigen::MatrixXd& rotation() const { return U_; }
    const std::vector<int>& lambdas() const { return lambdas_; }
    const Eigen::MatrixXd& angular_matrix(std::size_t term) const { return A_[term]; }

    int find(const ChannelLabel& alpha, int K, int l) const;

private:
    FloquetEigenbasis basis_;
    int M_;
    std::vector<RadialTerm> terms_;
    std::vector<int> lambdas_;
    std::vector<Channel> channels_;
    Eigen::MatrixXd U_;
    std::vector<Eigen::MatrixXd> A_prim_, A_;
};

// Smallest R (A) beyond which every coupling matrix element stays below tol (K).
double auto_matching_radius(const CouplingMatrixProvider& provider, double tol = 1e-9, double R_start = 5.0,
                            double R_limit = 5000.0);

} // namespace zenoscat
