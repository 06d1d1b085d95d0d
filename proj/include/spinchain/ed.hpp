// Brute-force exact-diagonalization reference for small systems.
//
// Dense real-symmetric Hamiltonian over the full 2^(N+1) spin Hilbert
// space, exact spectral propagation, partial trace, and process tomography.
// Exists to be obviously correct, not fast; everything downstream is tested
// against it. Basis convention: site 0 (the qubit) is the most significant
// bit, bit value 0 means spin up (sigma^z = +1).

#pragma once

#include "spinchain/entanglement.hpp"

namespace spinchain {

inline constexpr int ed_max_sites = 13;

struct DenseHamiltonian {
    int n_sites = 0;
    Eigen::MatrixXd H;
};

// Full qubit+chain Hamiltonian; throws SizeCapError when spec.N + 1 > 13.
DenseHamiltonian build_hamiltonian(const SubsystemSpec& spec);

// Chain-only Hamiltonian on sites 1..N (dimension 2^N).
DenseHamiltonian build_chain_hamiltonian(const SubsystemSpec& spec);

struct ChainGroundState {
    double energy = 0.0;
    double gap = 0.0;            // to the first excited level
    Eigen::VectorXd psi;         // real ground-state vector, dimension 2^N
    bool near_degenerate = false;  // gap < 1e-10
};

ChainGroundState chain_ground_state_ed(const SubsystemSpec& spec);

// Caches the eigendecomposition of the full Hamiltonian and the chain
// ground state once per spec; evolution at arbitrary t is then two dense
// matrix-vector products per initial qubit basis state.
class EdEngine {
  public:
    explicit EdEngine(const SubsystemSpec& spec);
    // Same, but with a caller-supplied (normalized) chain state instead of
    // the ground state.
    EdEngine(const SubsystemSpec& spec, const Eigen::VectorXcd& chain_state);

    Eigen::Matrix2cd evolve_reduced(const Eigen::Matrix2cd& rho_qubit, double t) const;
    ChannelTensor channel(double t) const;   // from the evolved basis pair
    double total_energy(const Eigen::Matrix2cd& rho_qubit) const;
    double chain_gap() const { return gap_; }

  private:
    void init(const SubsystemSpec& spec, const Eigen::VectorXcd& chain_state);
    int N_ = 0;
    long dim_chain_ = 0;
    Eigen::MatrixXd evecs_;
    Eigen::VectorXd evals_;
    std::array<Eigen::VectorXcd, 2> basis_coeff_;  // eigenbasis coefficients of |q> (x) |chain>
    double gap_ = 0.0;
};

// rho_qubit (x) |ground><ground| evolved exactly, chain traced out.
Eigen::Matrix2cd evolve_reduced(const SubsystemSpec& spec,
                                const Eigen::Matrix2cd& rho_qubit, double t);

// Channel reconstructed from the evolution of four spanning qubit states;
// the linearity residual on a fifth state must stay below 1e-10
// (NumericalError otherwise).
ChannelTensor extract_channel_tomography(const SubsystemSpec& spec, double t);

// Two exactly evolved channels composed on a Bell input; same contract as
// concurrence_trace.
ConcurrenceTrace oracle_concurrence_trace(const SubsystemSpec& spec_A,
                                          const SubsystemSpec& spec_B,
                                          BellKind initial,
                                          const std::vector<double>& grid);

} // namespace spinchain
