#include "spinchain/analytic.hpp"

#include <cmath>

#include "spinchain/bessel.hpp"

namespace spinchain {

double gamma_factor(double t) {
    if (t == 0.0) return 0.5;
    const double c0 = bessel_j1(2.0 * t) / t;
    return 0.5 * c0 * c0;
}

double zeta_factor(double t, int N_trunc) {
    if (N_trunc < 1) throw ConfigError("zeta_factor: N_trunc must be >= 1");
    if (t == 0.0) return 0.0;
    const Eigen::VectorXd J = bessel_j(N_trunc + 1, 2.0 * t);
    double s = 0.0;
    for (int n = 1; n <= N_trunc; ++n) {
        const double term = (n + 1.0) * J(n + 1);
        s += term * term;
    }
    return s / (2.0 * t * t);
}

int zeta_truncation(double t) {
    const double x = 2.0 * std::abs(t);
    // below order ~ x the Bessel functions oscillate and may pass through
    // zero, so start the scan past the turning point where decay is monotone
    const int floor_cap = std::max(1, static_cast<int>(std::ceil(x)));
    const int hard_cap = floor_cap + 60 + static_cast<int>(12.0 * std::sqrt(x + 1.0));
    const Eigen::VectorXd J = bessel_j(hard_cap + 1, x);
    for (int cap = floor_cap; cap <= hard_cap; ++cap)
        if (std::abs(J(cap + 1)) < 1e-14) return cap;
    return hard_cap;
}

ThermoFactors thermo_factors(double t, double h, int N_trunc) {
    ThermoFactors f;
    f.t = t;
    f.f_xy = (t == 0.0) ? 0.5 : bessel_j1(2.0 * t) / (2.0 * t);
    f.phase = 2.0 * h * t;
    f.gamma = gamma_factor(t);
    f.zeta = zeta_factor(t, N_trunc);
    return f;
}

Eigen::Matrix2d thermo_bloch_xy(double t, double h) {
    const double r = (t == 0.0) ? 1.0 : bessel_j1(2.0 * t) / t;
    const double c = std::cos(2.0 * h * t), s = std::sin(2.0 * h * t);
    Eigen::Matrix2d block;
    block << r * c, r * s, -r * s, r * c;
    return block;
}

ThermoZ thermo_sz(double t, const GroundStateCorrelators& corr, int N_trunc) {
    if (N_trunc < 1) throw ConfigError("thermo_sz: N_trunc must be >= 1");
    ThermoZ out;
    if (t == 0.0) return out;

    const Eigen::VectorXd J = bessel_j(N_trunc + 1, 2.0 * t);
    if (std::abs(J(N_trunc + 1)) >= 1e-14)
        throw NumericalError("thermo_sz: Bessel tail not converged at N_trunc");

    const int n_max = std::min(corr.N, N_trunc);
    Eigen::VectorXd c(n_max + 1);
    for (int n = 0; n <= n_max; ++n) c(n) = (n + 1.0) * J(n + 1) / t;

    out.A_zz = c(0) * c(0);
    double mz = 0.0;
    for (int n = 1; n <= n_max; ++n) mz += c(n) * c(n) * corr.sz(n - 1);
    // cross terms survive only for sites of equal parity; the propagated
    // phases reduce to a sign s_nm = (-1)^{(n+m)/2}, flipped on odd-odd pairs
    for (int n = 1; n <= n_max; ++n)
        for (int m = n + 2; m <= n_max; m += 2) {
            double s = (((n + m) / 2) % 2 == 0) ? 1.0 : -1.0;
            if (n % 2 == 1) s = -s;
            mz -= 2.0 * s * c(n) * c(m) * corr.g(n - 1, m - 1);
        }
    out.m_z = mz;
    return out;
}

double concurrence_zero_field_closed(double t, double constant) {
    const double g = gamma_factor(t);
    return 2.0 * std::max(0.0, g * g + g + constant);
}

SaturatedClosedForm concurrence_saturated_closed(double t, int N_trunc) {
    const double g = gamma_factor(t);
    const double z = zeta_factor(t, N_trunc);
    SaturatedClosedForm out;
    out.C_p = 2.0 * std::max(0.0, g + g * g + z * z - 0.25);
    const double disc =
        0.0625 - 0.5 * (g * g + z * z) + (g * g - z * z) * (g * g - z * z);
    out.C_a = 2.0 * std::max(0.0, g - std::sqrt(std::max(0.0, disc)));
    return out;
}

double esd_root() {
    const double target = 0.5 * (std::sqrt(2.0) - 1.0);
    double a = 0.5, b = 1.5;
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        (gamma_factor(m) > target ? a : b) = m;
    }
    return 0.5 * (a + b);
}

ChannelTensor thermo_channel(double t, double J, double h,
                             const GroundStateCorrelators& corr) {
    if (!(J > 0.0)) throw ConfigError("thermo_channel: J must be positive");
    const double tau = J * t;
    const int N_trunc = zeta_truncation(tau);
    const ThermoZ z = thermo_sz(tau, corr, N_trunc);
    BlochAffineMap map;
    map.t = t;
    map.A.setZero();
    map.A.topLeftCorner<2, 2>() = thermo_bloch_xy(tau, h / J);
    map.A(2, 2) = z.A_zz;
    map.m.setZero();
    map.m(2) = z.m_z;
    return channel_superop(map);
}

} // namespace spinchain
