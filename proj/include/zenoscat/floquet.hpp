#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace zenoscat {

// Molecular constants of a 3-Sigma rotor, energies in K.
struct MolecularConstants {
    double B_e = 0.0;
    double gamma = 0.0;
    double lambda_ss = 0.0;
    int S = 1;
    double mu0 = 0.0;   // K/G
    double h_eff = 0.0; // K/G, Zeeman slope used by the KK model

    // 17O2 X 3Sigma_g^- (v=0). Rotational and spin-rotation constants are the
    // 16O2 values scaled by the reduced-mass ratio 16/17.
    static MolecularConstants oxygen17();
    void validate() const;
    bool operator==(const MolecularConstants&) const = default;
};

struct Harmonic {
    int n = 1;
    double amplitude = 0.0; // G
    bool operator==(const Harmonic&) const = default;
};

// B(t) = B0 + sum_n a_n cos(n omega_B t)
struct PulseTrain {
    double B0 = 0.0;      // G
    double omega_B = 0.0; // K (hbar omega / k_B)
    std::vector<Harmonic> harmonics;

    void validate() const;
    bool is_static() const;
    int max_harmonic() const;
    double amplitude(int n) const; // 0 if absent
    double field(double t_over_period) const;
    bool operator==(const PulseTrain&) const = default;
};

double fourier_field_components(const PulseTrain& pulse, int k);

struct InternalState {
    int N = 0, S = 1, J = 1, M_J = 0;
    bool operator==(const InternalState&) const = default;
};

struct FloquetBasisState {
    int N = 0, S = 1, J = 1, M_J = 0;
    int n = 0;
    InternalState internal() const { return {N, S, J, M_J}; }
    bool operator==(const FloquetBasisState&) const = default;
};

// Rotor states N <= N_max with N of the given parity (0 even, 1 odd), all J and M_J.
std::vector<InternalState> internal_states(int N_max, int parity, int S = 1);

std::vector<FloquetBasisState> floquet_basis(const std::vector<InternalState>& internal, int n_max);

double h_as_element(const FloquetBasisState& bra, const FloquetBasisState& ket, const MolecularConstants& consts,
                    const PulseTrain& pulse);

// Time-independent H_as in a static field B.
Eigen::MatrixXd static_hamiltonian(const std::vector<InternalState>& internal, const MolecularConstants& consts,
                                   double B);

Eigen::MatrixXd build_floquet_matrix(const std::vector<FloquetBasisState>& basis, const MolecularConstants& consts,
                                     const PulseTrain& pulse);

struct ChannelLabel {
    int N = 0, J = 1, M_J = 0;
    auto operator<=>(const ChannelLabel&) const = default;
    std::string str() const;
};

struct LadderIndex {
    ChannelLabel alpha;
    int K = 0;
    auto operator<=>(const LadderIndex&) const = default;
};

struct FloquetEigenbasis {
    std::vector<FloquetBasisState> states;
    Eigen::MatrixXd W; // row e holds eigenstate e in the primitive basis
    std::vector<double> eps;
    std::vector<LadderIndex> ladder;
    std::vector<int> M_J; // conserved projection of each eigenstate
    double omega_B = 0.0;
    int n_max = 0;

    std::size_t size() const { return eps.size(); }
    // Index of eigenstate (alpha, K); -1 if absent.
    int find(const ChannelLabel& alpha, int K) const;
    // Eigenvalue of the ladder (alpha, K); throws if absent.
    double quasi_energy(const ChannelLabel& alpha, int K) const;
};

// Diagonalizes block by block (connected components of the coupling graph) and
// labels each eigenstate by its dominant internal state alpha and its ladder index K.
FloquetEigenbasis diagonalize_asymptotic(const Eigen::MatrixXd& matrix, const std::vector<FloquetBasisState>& basis,
                                         double omega_B);

// Convenience: basis + matrix + diagonalization.
FloquetEigenbasis floquet_eigenbasis(const MolecularConstants& consts, const PulseTrain& pulse, int N_max, int n_max,
                                     int parity = 0);

} // namespace zenoscat
