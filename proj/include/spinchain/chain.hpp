// Ground state of the open homogeneous XX chain in free-fermion form and
// the static correlators the qubit dynamics needs.
//
// Jordan-Wigner + sine transform give modes phi_{j,k} = sqrt(2/(N+1))
// sin(j theta_k), theta_k = k pi/(N+1), with energies eps_k = 2(h - J cos
// theta_k). The ground state fills the negative-energy modes; exact zero
// modes are left empty. From the one-particle correlation matrix of the
// filled sea, G_nm = sum_{k occ} phi_{n,k} phi_{m,k},
//   <sigma^z_n> = 1 - 2 G_nn,
//   g_nm = <sigma^x_n (prod_{n<l<m} sigma^z_l) sigma^x_m> = 2 G_nm  (n != m):
// with the string covering the whole interval the Lieb-Schultz-Mattis
// determinant collapses to the 1x1 sub-block of (2G - I).

#pragma once

#include <Eigen/Dense>

#include "spinchain/subsystem.hpp"

namespace spinchain {

struct ModeBasis {
    int N = 0;
    Eigen::MatrixXd phi;        // N x N, phi(j-1, k-1) = phi_{j,k}
    Eigen::VectorXd theta;      // theta_k, k = 1..N
    Eigen::VectorXd energies;   // eps_k = 2 (h - J cos theta_k)
};

ModeBasis chain_modes(int N, double J, double h);

// Number of filled modes, #{k : eps_k < 0}; ties |eps_k| ~ 0 stay empty.
int fermi_count(const ModeBasis& modes);

// True when some |h - J cos theta_k| < 1e-12 (zero mode at the Fermi level).
bool has_zero_mode(const ModeBasis& modes);

struct GroundStateCorrelators {
    int N = 0;
    int k_F = 0;
    Eigen::VectorXd sz;   // <sigma^z_n>, n = 1..N (0-based storage)
    Eigen::MatrixXd g;    // string correlators, symmetric, zero diagonal
    Eigen::MatrixXd G;    // one-particle correlation matrix
};

GroundStateCorrelators correlators(const ModeBasis& modes, int k_F);

// Closed forms printed for the same quantities, used as cross-checks only.
// sz_closed_form is the Dirichlet-kernel resummation of 1 - 2 G_nn.
// g_closed_form telescopes the occupied-mode sum and evaluates to G_nm,
// i.e. half the string correlator; valid for 1 <= k_F <= N-1, n != m.
double sz_closed_form(const ModeBasis& modes, int k_F, int n);      // n = 1..N
double g_closed_form(const ModeBasis& modes, int k_F, int n, int m);

// Chain length -> infinity at fixed site: the mode sum becomes an integral
// up to theta_F = arccos(h/J), G_nm = [sinc_F(n-m) - sinc_F(n+m)] / pi with
// sinc_F(d) = sin(d theta_F)/d. Materialized for sites 1..N; k_F is set to
// -1 (the mode count is not defined in the continuum). Requires J > 0.
GroundStateCorrelators semi_infinite_correlators(int N, double J, double h);

} // namespace spinchain
