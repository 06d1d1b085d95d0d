#include "spinchain/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace spinchain {

namespace {

using cd = std::complex<double>;

// sigma[a][r][p], a = x,y,z
constexpr cd I{0.0, 1.0};
const std::array<std::array<std::array<cd, 2>, 2>, 3> sigma = {{
    {{{{cd(0), cd(1)}}, {{cd(1), cd(0)}}}},
    {{{{cd(0), -I}}, {{I, cd(0)}}}},
    {{{{cd(1), cd(0)}}, {{cd(0), cd(-1)}}}},
}};

} // namespace

BlochAffineMap bloch_map(const PropagatorCoefficients& coeffs,
                         const GroundStateCorrelators& corr) {
    const int N = corr.N;
    if (coeffs.Pi_x.size() != N + 1)
        throw ConfigError("bloch_map: coefficient and correlator sizes disagree");

    BlochAffineMap map;
    map.t = coeffs.t;
    map.A.setZero();
    map.A(0, 0) = coeffs.Pi_y(0);
    map.A(0, 1) = -coeffs.Delta_y(0);
    map.A(1, 0) = coeffs.Delta_x(0);
    map.A(1, 1) = coeffs.Pi_x(0);
    map.A(2, 2) = coeffs.Pi_x(0) * coeffs.Pi_y(0) + coeffs.Delta_x(0) * coeffs.Delta_y(0);

    // chain-site blocks of the propagated amplitudes
    const Eigen::VectorXd px = coeffs.Pi_x.tail(N);
    const Eigen::VectorXd py = coeffs.Pi_y.tail(N);
    const Eigen::VectorXd dx = coeffs.Delta_x.tail(N);
    const Eigen::VectorXd dy = coeffs.Delta_y.tail(N);
    const Eigen::VectorXd w = (px.array() * py.array() + dx.array() * dy.array()).matrix();
    // g has zero diagonal, so the bilinear is exactly the n != m pair sum
    const double cross = px.dot(corr.g * py) + dx.dot(corr.g * dy);
    map.m.setZero();
    map.m(2) = w.dot(corr.sz) - cross;
    return map;
}

ChannelTensor identity_channel() {
    ChannelTensor ch;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            ch.K[i][j][i][j] = 1.0;
    return ch;
}

ChannelTensor channel_superop(const BlochAffineMap& map) {
    ChannelTensor ch;
    ch.t = map.t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int r = 0; r < 2; ++r) {
                    cd val = (i == j && r == p) ? cd(0.5) : cd(0.0);
                    for (int a = 0; a < 3; ++a) {
                        if (r == p) val += 0.5 * map.m(a) * sigma[a][i][j];
                        for (int b = 0; b < 3; ++b)
                            val += 0.5 * map.A(a, b) * sigma[a][i][j] * sigma[b][r][p];
                    }
                    ch.K[i][j][p][r] = val;
                }
    const double eig = choi_min_eigenvalue(ch);
    if (eig < -1e-8)
        throw NumericalError("channel_superop: map is not completely positive");
    return ch;
}

Eigen::Matrix2cd evolve_single_qubit(const ChannelTensor& K,
                                     const Eigen::Matrix2cd& rho0) {
    if ((rho0 - rho0.adjoint()).norm() > 1e-8)
        throw ConfigError("evolve_single_qubit: input is not Hermitian");
    if (std::abs(rho0.trace() - cd(1.0)) > 1e-8)
        throw ConfigError("evolve_single_qubit: input trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho0);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw ConfigError("evolve_single_qubit: input is not positive semidefinite");

    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int r = 0; r < 2; ++r)
                    out(i, j) += K.K[i][j][p][r] * rho0(p, r);
    return out;
}

Eigen::Matrix4cd choi_matrix(const ChannelTensor& K) {
    Eigen::Matrix4cd choi;
    for (int p = 0; p < 2; ++p)
        for (int i = 0; i < 2; ++i)
            for (int r = 0; r < 2; ++r)
                for (int j = 0; j < 2; ++j)
                    choi(2 * p + i, 2 * r + j) = K.K[i][j][p][r];
    return choi;
}

double choi_min_eigenvalue(const ChannelTensor& K) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi_matrix(K));
    return es.eigenvalues().minCoeff();
}

double trace_preservation_defect(const ChannelTensor& K) {
    double worst = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int r = 0; r < 2; ++r) {
            cd s = K.K[0][0][p][r] + K.K[1][1][p][r];
            if (p == r) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

} // namespace spinchain
