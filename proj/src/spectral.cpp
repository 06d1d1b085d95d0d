#include "spinchain/spectral.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace spinchain {

HoppingMatrix build_tau(const SubsystemSpec& spec) {
    spec.validate();
    const int n = spec.N + 1;
    HoppingMatrix hm;
    hm.tau = Eigen::MatrixXd::Zero(n, n);
    hm.v = Eigen::VectorXd::Zero(n);
    hm.v(0) = 1.0;

    hm.tau(0, 0) = -2.0 * spec.h0;
    for (int i = 1; i < n; ++i) hm.tau(i, i) = -2.0 * spec.h(i - 1);

    // row i carries J_x on the upper diagonal, J_y on the lower one;
    // tau is symmetric iff J_x = J_y on every bond
    hm.tau(0, 1) = spec.J0_x;
    hm.tau(1, 0) = spec.J0_y;
    for (int i = 1; i < n - 1; ++i) {
        hm.tau(i, i + 1) = spec.J_x(i - 1);
        hm.tau(i + 1, i) = spec.J_y(i - 1);
    }
    return hm;
}

SpectralDecomposition svd_tau(const HoppingMatrix& hm) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(hm.tau,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    SpectralDecomposition dec{svd.matrixU(), svd.matrixV(), svd.singularValues()};

    const int n = hm.size();
    const double scale = std::max(1.0, hm.tau.norm());
    const double recon =
        (dec.U * dec.lambda.asDiagonal() * dec.V.transpose() - hm.tau).norm() / scale;
    const double orthoU = (dec.U.transpose() * dec.U - Eigen::MatrixXd::Identity(n, n)).norm();
    const double orthoV = (dec.V.transpose() * dec.V - Eigen::MatrixXd::Identity(n, n)).norm();
    if (recon > 1e-12 || orthoU > 1e-12 || orthoV > 1e-12)
        throw NumericalError("svd_tau: decomposition failed tolerance");
    return dec;
}

PropagatorCoefficients propagator_coeffs(const SpectralDecomposition& dec, double t) {
    if (!std::isfinite(t)) throw ConfigError("propagator_coeffs: t must be finite");
    PropagatorCoefficients c;
    c.t = t;
    // U^T v and V^T v are the top rows of U, V
    const Eigen::VectorXd uv = dec.U.row(0).transpose();
    const Eigen::VectorXd vv = dec.V.row(0).transpose();
    const Eigen::ArrayXd om = (dec.lambda.array() * t).cos();
    const Eigen::ArrayXd si = (dec.lambda.array() * t).sin();
    c.Pi_x = dec.U * (om * uv.array()).matrix();
    c.Delta_x = dec.V * (si * uv.array()).matrix();
    c.Pi_y = dec.V * (om * vv.array()).matrix();
    c.Delta_y = dec.U * (si * vv.array()).matrix();
    return c;
}

PropagatorCoefficients propagator_coeffs_series(const HoppingMatrix& hm, double t,
                                                int p_max) {
    if (!std::isfinite(t)) throw ConfigError("propagator_coeffs_series: t must be finite");
    if (p_max < 0) throw ConfigError("propagator_coeffs_series: p_max must be >= 0");
    const Eigen::MatrixXd ttT = hm.tau * hm.tau.transpose();
    const Eigen::MatrixXd tTt = hm.tau.transpose() * hm.tau;

    // Pi^x  = sum_p (-1)^p t^{2p}/(2p)!   (tau tau^T)^p v
    // Del^x = tau^T sum_p (-1)^p t^{2p+1}/(2p+1)! (tau tau^T)^p v, and x<->y
    // via tau <-> tau^T.
    Eigen::VectorXd ax = hm.v, ay = hm.v;
    Eigen::VectorXd pix = hm.v, piy = hm.v;
    Eigen::VectorXd sx = t * hm.v, sy = t * hm.v;
    double even = 1.0, odd = t;   // t^{2p}/(2p)! and t^{2p+1}/(2p+1)!
    for (int p = 1; p <= p_max; ++p) {
        ax = (ttT * ax).eval();
        ay = (tTt * ay).eval();
        even *= -t * t / ((2.0 * p - 1.0) * (2.0 * p));
        odd *= -t * t / ((2.0 * p) * (2.0 * p + 1.0));
        const double mag = std::max(ax.norm(), ay.norm());
        if (!std::isfinite(mag) || mag * std::max(std::abs(even), std::abs(odd)) > 1e280)
            throw NumericalError("propagator_coeffs_series: term overflow, reduce t or p_max");
        pix += even * ax;
        piy += even * ay;
        sx += odd * ax;
        sy += odd * ay;
    }
    PropagatorCoefficients c;
    c.t = t;
    c.Pi_x = pix;
    c.Pi_y = piy;
    c.Delta_x = hm.tau.transpose() * sx;
    c.Delta_y = hm.tau * sy;
    return c;
}

} // namespace spinchain
