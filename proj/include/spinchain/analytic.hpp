// Thermodynamic-limit (N -> infinity) closed forms for the homogeneous
// J0 = J subsystem: Bessel-function Bloch factors, gamma(t) and Z(t), the
// closed-form concurrences of the zero-field and saturated regimes, and the
// analytic ESD root.
//
//   gamma(t) = J_1(2t)^2 / (2 t^2)            gamma(0) = 1/2,  ~ t^-3
//   Z(t)     = (1/2t^2) sum_{n=1}^{N} (n+1)^2 J_{n+1}(2t)^2,   Z(0) = 0
// Transverse sector (uniform field h, sigma convention):
//   A_xy-block = (J_1(2t)/t) * [[cos 2ht, sin 2ht], [-sin 2ht, cos 2ht]]
// z sector, with c_n(t) = (n+1) J_{n+1}(2t) / t:
//   A_zz = c_0^2
//   m_z  = sum_{n>=1} c_n^2 <sigma^z_n>
//        - 2 sum_{n<m, n=m mod 2} s_nm c_n c_m g_nm,
//   s_nm = (-1)^{(n+m)/2}, negated for odd pairs.

#pragma once

#include "spinchain/channel.hpp"

namespace spinchain {

double gamma_factor(double t);
double zeta_factor(double t, int N_trunc);

// Smallest order cap with |J_{cap+1}(2t)| < 1e-14 (cheap: Bessel functions
// die once the order exceeds the argument).
int zeta_truncation(double t);

struct ThermoFactors {
    double t = 0.0;
    double f_xy = 0.5;   // J_1(2t)/(2t), s-convention transverse factor
    double phase = 0.0;  // 2 h t rotation angle
    double gamma = 0.5;
    double zeta = 0.0;
};

ThermoFactors thermo_factors(double t, double h, int N_trunc);

Eigen::Matrix2d thermo_bloch_xy(double t, double h);

struct ThermoZ {
    double A_zz = 1.0;
    double m_z = 0.0;
};

// Site sums run over n <= min(corr.N, N_trunc); throws NumericalError when
// the Bessel tail at N_trunc is not below 1e-14.
ThermoZ thermo_sz(double t, const GroundStateCorrelators& corr, int N_trunc);

// C(t) = 2 max{0, gamma^2 + gamma + constant} for J0 = J, h = h0 = 0.
// Default constant -1/4 gives C(0) = 1 and the ESD root at t = 0.9037; the
// variant -1/2 is kept selectable for comparison (it gives C(0) = 1/2 and a
// root near 0.55, inconsistent with the pipeline).
double concurrence_zero_field_closed(double t, double constant = -0.25);

struct SaturatedClosedForm {
    double C_a = 1.0;
    double C_p = 1.0;
};

// Saturated chains (h > J), uniform field: field-independent closed forms
//   C_p = 2 max{0, gamma + gamma^2 + Z^2 - 1/4}
//   C_a = 2 max{0, gamma - sqrt(1/16 - (gamma^2+Z^2)/2 + (gamma^2-Z^2)^2)}.
// They reproduce the fully homogeneous h0 = h pipeline.
SaturatedClosedForm concurrence_saturated_closed(double t, int N_trunc);

// Bisection root of gamma(t) = (sqrt(2)-1)/2 on [0.5, 1.5]; the zero-field
// ESD time, 0.903724.
double esd_root();

// Full qubit channel of the homogeneous J0 = J, h0 = h subsystem in the
// N -> infinity limit (times rescale as Jt, the rotation phase is 2ht).
// corr supplies the chain correlators entering m_z; build it at the same
// field ratio h/J with at least zeta_truncation(J t) sites.
ChannelTensor thermo_channel(double t, double J, double h,
                             const GroundStateCorrelators& corr);

} // namespace spinchain
