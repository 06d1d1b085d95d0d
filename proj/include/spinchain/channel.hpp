// Exact reduced single-qubit dynamics.
//
// The channel is represented twice: as the affine map r -> A r + m on Bloch
// vectors r = (<sigma^x>, <sigma^y>, <sigma^z>), and as the superoperator
//   rho_ij(t) = sum_{pr} K[i][j][p][r] rho_pr(0)
// acting on 2x2 density matrices. The map is assembled algebraically from
// the propagator coefficients and the chain ground-state correlators:
//   A_xx =  Pi_y[0],  A_xy = -Delta_y[0],
//   A_yx =  Delta_x[0],  A_yy = Pi_x[0],
//   A_zz =  Pi_x[0] Pi_y[0] + Delta_x[0] Delta_y[0],
//   m_z  =  sum_{n>=1} (Pi_x[n] Pi_y[n] + Delta_x[n] Delta_y[n]) <sigma^z_n>
//         - sum_{n != m} (Pi_x[n] Pi_y[m] + Delta_x[n] Delta_y[m]) g_nm,
// all other entries zero (parity of the Hamiltonian kills them; the chain
// contributes no transverse mean values). The family pairing above is the
// one validated against exact diagonalization (see tests).

#pragma once

#include <array>
#include <complex>

#include "spinchain/chain.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain {

struct BlochAffineMap {
    double t = 0.0;
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    Eigen::Vector3d m = Eigen::Vector3d::Zero();
};

BlochAffineMap bloch_map(const PropagatorCoefficients& coeffs,
                         const GroundStateCorrelators& corr);

struct ChannelTensor {
    double t = 0.0;
    // K[i][j][p][r]: (p,r) initial element -> (i,j) final element
    std::array<std::array<std::array<std::array<std::complex<double>, 2>, 2>, 2>, 2> K{};
};

ChannelTensor identity_channel();

// rho = (I + r.sigma)/2 correspondence; checks complete positivity of the
// result (Choi eigenvalues >= -1e-8) and throws NumericalError otherwise,
// since the exact dynamics is CP and a violation signals an upstream bug.
ChannelTensor channel_superop(const BlochAffineMap& map);

// Input must be Hermitian, unit trace, PSD (within 1e-8); throws ConfigError.
Eigen::Matrix2cd evolve_single_qubit(const ChannelTensor& K,
                                     const Eigen::Matrix2cd& rho0);

Eigen::Matrix4cd choi_matrix(const ChannelTensor& K);
double choi_min_eigenvalue(const ChannelTensor& K);

// Largest deviation of sum_i K[i][i][p][r] from delta_pr.
double trace_preservation_defect(const ChannelTensor& K);

} // namespace spinchain
