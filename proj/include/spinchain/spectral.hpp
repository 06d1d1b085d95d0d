// Hopping matrix of one qubit+chain subsystem and the exact propagator
// coefficients obtained by spectral (SVD) resummation of the Heisenberg
// series.
//
// tau is the (N+1)x(N+1) tridiagonal one-particle matrix
//   tau[i][i+1] = J_x[i],  tau[i][i-1] = J_y[i-1],  tau[i][i] = -2 h_i,
// (index 0 = qubit) and v = e_0 selects the qubit site. With the SVD
// tau = U diag(lambda) V^T the spreading of the qubit operators along the
// chain is carried by four real vectors,
//   Pi_x(t)    = U cos(lambda t) U^T v,   Delta_x(t) = V sin(lambda t) U^T v,
//   Pi_y(t)    = V cos(lambda t) V^T v,   Delta_y(t) = U sin(lambda t) V^T v.
// Orthogonality of U and V gives flux conservation,
// sum_n Pi_n^2 + Delta_n^2 = 1 per family, at every time.

#pragma once

#include "spinchain/subsystem.hpp"

namespace spinchain {

struct HoppingMatrix {
    Eigen::MatrixXd tau;     // (N+1)x(N+1), tridiagonal
    Eigen::VectorXd v;       // selector vector, v_i = delta_{i0}

    int size() const { return static_cast<int>(tau.rows()); }
};

HoppingMatrix build_tau(const SubsystemSpec& spec);

struct SpectralDecomposition {
    Eigen::MatrixXd U, V;    // orthogonal
    Eigen::VectorXd lambda;  // singular values, non-negative, descending
};

// Throws NumericalError if reconstruction or orthogonality exceeds 1e-12.
SpectralDecomposition svd_tau(const HoppingMatrix& tau);

struct PropagatorCoefficients {
    double t = 0.0;
    Eigen::VectorXd Pi_x, Delta_x, Pi_y, Delta_y;   // length N+1, index 0 = qubit
};

PropagatorCoefficients propagator_coeffs(const SpectralDecomposition& dec, double t);

// Truncated Taylor series Pi^x = sum_p (-1)^p t^{2p}/(2p)! (tau tau^T)^p v etc.;
// test oracle for the resummed coefficients at small |t| * ||tau||.
PropagatorCoefficients propagator_coeffs_series(const HoppingMatrix& tau, double t,
                                                int p_max);

} // namespace spinchain
