// Single-qubit channel: Bloch-affine assembly, superoperator form, complete
// positivity, and an exactly solvable two-site Rabi cross-check.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "spinchain/channel.hpp"

using namespace spinchain;
using cd = std::complex<double>;

namespace {

struct Built {
    SpectralDecomposition dec;
    GroundStateCorrelators corr;
};

Built build(const SubsystemSpec& spec) {
    const ModeBasis modes = chain_modes(spec.N, spec.chain_J(), spec.chain_h());
    const int k_F = fermi_count(modes);
    return {svd_tau(build_tau(spec)), correlators(modes, k_F)};
}

Eigen::Matrix2cd state_from_bloch(const Eigen::Vector3d& r) {
    Eigen::Matrix2cd rho;
    rho << 0.5 * (1.0 + r(2)), 0.5 * cd(r(0), -r(1)),
           0.5 * cd(r(0), r(1)), 0.5 * (1.0 - r(2));
    return rho;
}

Eigen::Vector3d bloch_of(const Eigen::Matrix2cd& rho) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
            rho(0, 0).real() - rho(1, 1).real()};
}

} // namespace

TEST_CASE("t = 0 is the identity channel") {
    const Built b = build(SubsystemSpec::homogeneous(12, 1.0, 0.4, 1.3, 0.8, 0.2));
    const BlochAffineMap map = bloch_map(propagator_coeffs(b.dec, 0.0), b.corr);

    CHECK((map.A - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(map.m.cwiseAbs().maxCoeff() < 1e-14);

    const ChannelTensor K = channel_superop(map);
    const ChannelTensor id = identity_channel();
    double diff = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int r = 0; r < 2; ++r)
                    diff = std::max(diff, std::abs(K.K[i][j][p][r] - id.K[i][j][p][r]));
    CHECK(diff < 1e-14);
}

TEST_CASE("channel is trace preserving and completely positive") {
    const SubsystemSpec specs[] = {
        SubsystemSpec::homogeneous(10, 1.0, 0.0, 1.0, 0.0),
        SubsystemSpec::homogeneous(14, 1.0, 0.5, 4.0, 0.9),
        SubsystemSpec::homogeneous(13, 1.0, 1.2, 0.7, 0.0, 0.3),
    };
    for (const SubsystemSpec& spec : specs) {
        const Built b = build(spec);
        for (double t : {0.1, 0.9, 2.7, 8.0}) {
            const ChannelTensor K =
                channel_superop(bloch_map(propagator_coeffs(b.dec, t), b.corr));
            CHECK(trace_preservation_defect(K) < 1e-12);
            CHECK(choi_min_eigenvalue(K) > -1e-8);
            CHECK(std::abs(choi_matrix(K).trace().real() - 2.0) < 1e-12);
        }
    }
}

TEST_CASE("superoperator implements the affine Bloch map") {
    // generalized-amplitude-damping parameters, manifestly CP
    BlochAffineMap map;
    map.A = Eigen::Vector3d(0.6, 0.6, 0.36).asDiagonal();
    map.m = Eigen::Vector3d(0.0, 0.0, 0.2);
    const ChannelTensor K = channel_superop(map);

    const Eigen::Vector3d rs[] = {{0.0, 0.0, 0.0},
                                  {0.3, -0.5, 0.4},
                                  {0.0, 0.0, -1.0},
                                  {1.0, 0.0, 0.0}};
    for (const Eigen::Vector3d& r : rs) {
        const Eigen::Matrix2cd out = evolve_single_qubit(K, state_from_bloch(r));
        CHECK(std::abs(out.trace() - cd(1.0)) < 1e-14);
        CHECK((bloch_of(out) - (map.A * r + map.m)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("two-site Rabi oscillation comes out exactly") {
    // N = 1, h = h0 = 0: the tied chain mode stays empty, the chain spin
    // points up, and the pair just rotates: <sigma^z>(t) = -cos(2 J0 t) for
    // the qubit starting down, <sigma^x>(t) = cos(J0 t) starting along x.
    const double J0 = 1.3;
    const SubsystemSpec spec = SubsystemSpec::homogeneous(1, 1.0, 0.0, J0, 0.0);
    const Built b = build(spec);
    REQUIRE(b.corr.k_F == 0);
    REQUIRE(b.corr.sz(0) == doctest::Approx(1.0));

    for (double t : {0.3, 0.8, 2.2}) {
        const BlochAffineMap map = bloch_map(propagator_coeffs(b.dec, t), b.corr);
        CHECK(map.A(2, 2) == doctest::Approx(std::cos(J0 * t) * std::cos(J0 * t)).epsilon(1e-13));
        CHECK(map.m(2) == doctest::Approx(std::sin(J0 * t) * std::sin(J0 * t)).epsilon(1e-13));

        const ChannelTensor K = channel_superop(map);
        const Eigen::Matrix2cd down = evolve_single_qubit(K, state_from_bloch({0, 0, -1}));
        CHECK(bloch_of(down)(2) == doctest::Approx(-std::cos(2.0 * J0 * t)).epsilon(1e-13));

        const Eigen::Matrix2cd plus = evolve_single_qubit(K, state_from_bloch({1, 0, 0}));
        CHECK(bloch_of(plus)(0) == doctest::Approx(std::cos(J0 * t)).epsilon(1e-13));
    }
}

TEST_CASE("half filling keeps the maximally mixed state fixed") {
    const Built b = build(SubsystemSpec::homogeneous(20, 1.0, 0.0, 1.0, 0.0));
    for (double t : {0.5, 1.7, 6.0}) {
        const BlochAffineMap map = bloch_map(propagator_coeffs(b.dec, t), b.corr);
        CHECK(std::abs(map.m(2)) < 1e-13);
        CHECK(std::abs(map.A(0, 1) + map.A(1, 0)) < 1e-13);

        const Eigen::Matrix2cd mixed =
            evolve_single_qubit(channel_superop(map), state_from_bloch({0, 0, 0}));
        CHECK(bloch_of(mixed).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("non-CP maps and invalid states are rejected") {
    BlochAffineMap transpose_like;
    transpose_like.A = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
    CHECK_THROWS_AS(channel_superop(transpose_like), NumericalError);

    const ChannelTensor id = identity_channel();
    Eigen::Matrix2cd bad;
    bad << 1.0, 0.0, 0.0, 0.5;                       // trace 1.5
    CHECK_THROWS_AS(evolve_single_qubit(id, bad), ConfigError);
    bad << 1.0, 0.3, -0.3, 0.0;                      // not Hermitian
    CHECK_THROWS_AS(evolve_single_qubit(id, bad), ConfigError);
    bad << 1.5, 0.0, 0.0, -0.5;                      // negative eigenvalue
    CHECK_THROWS_AS(evolve_single_qubit(id, bad), ConfigError);

    const Built b = build(SubsystemSpec::homogeneous(4, 1.0, 0.0, 1.0, 0.0));
    PropagatorCoefficients c = propagator_coeffs(b.dec, 1.0);
    GroundStateCorrelators wrong = b.corr;
    wrong.N = 3;
    CHECK_THROWS_AS(bloch_map(c, wrong), ConfigError);
}
