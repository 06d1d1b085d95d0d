// Hopping matrix assembly, SVD resummation vs the truncated Heisenberg
// series, flux conservation and the parity of the coefficient families.

#include <cmath>

#include "doctest.h"
#include "spinchain/spectral.hpp"

using namespace spinchain;

namespace {

SubsystemSpec aniso_spec() {
    return SubsystemSpec::homogeneous(/*N=*/6, /*J=*/1.0, /*h=*/0.7,
                                      /*J0_x=*/0.8, /*J0_y=*/0.3, /*h0=*/0.2);
}

} // namespace

TEST_CASE("tau carries couplings and fields in the documented slots") {
    const SubsystemSpec spec =
        SubsystemSpec::homogeneous(3, 1.0, 0.7, 0.8, 0.3, 0.2);
    const HoppingMatrix hop = build_tau(spec);
    REQUIRE(hop.size() == 4);

    CHECK(hop.tau(0, 0) == doctest::Approx(-0.4));   // -2 h0
    CHECK(hop.tau(1, 1) == doctest::Approx(-1.4));   // -2 h
    CHECK(hop.tau(3, 3) == doctest::Approx(-1.4));
    CHECK(hop.tau(0, 1) == doctest::Approx(0.8));    // J0_x above the diagonal
    CHECK(hop.tau(1, 0) == doctest::Approx(0.3));    // J0_y below
    CHECK(hop.tau(1, 2) == doctest::Approx(1.0));
    CHECK(hop.tau(2, 1) == doctest::Approx(1.0));
    CHECK(hop.tau(0, 2) == 0.0);
    CHECK(hop.tau(2, 0) == 0.0);

    CHECK(hop.v(0) == 1.0);
    CHECK(hop.v.tail(3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("svd reconstructs tau with orthogonal factors") {
    const HoppingMatrix hop = build_tau(aniso_spec());
    const SpectralDecomposition dec = svd_tau(hop);
    const int n = hop.size();

    const Eigen::MatrixXd recon =
        dec.U * dec.lambda.asDiagonal() * dec.V.transpose();
    CHECK((recon - hop.tau).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((dec.U.transpose() * dec.U - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs().maxCoeff() < 1e-13);
    CHECK((dec.V.transpose() * dec.V - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs().maxCoeff() < 1e-13);
    CHECK(dec.lambda.minCoeff() >= 0.0);
    for (int k = 0; k + 1 < n; ++k) CHECK(dec.lambda[k] >= dec.lambda[k + 1]);
}

TEST_CASE("resummed coefficients match the truncated series") {
    const HoppingMatrix hop = build_tau(aniso_spec());
    const SpectralDecomposition dec = svd_tau(hop);

    for (double t : {0.0, 0.15, 0.8, 2.0}) {
        const PropagatorCoefficients a = propagator_coeffs(dec, t);
        const PropagatorCoefficients b = propagator_coeffs_series(hop, t, 60);
        CHECK((a.Pi_x - b.Pi_x).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a.Delta_x - b.Delta_x).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a.Pi_y - b.Pi_y).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a.Delta_y - b.Delta_y).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("flux is conserved in both families") {
    const SpectralDecomposition dec = svd_tau(build_tau(aniso_spec()));
    for (double t : {0.3, 1.7, 9.0, 44.0}) {
        const PropagatorCoefficients c = propagator_coeffs(dec, t);
        CHECK(std::abs(c.Pi_x.squaredNorm() + c.Delta_x.squaredNorm() - 1.0) < 1e-13);
        CHECK(std::abs(c.Pi_y.squaredNorm() + c.Delta_y.squaredNorm() - 1.0) < 1e-13);
    }
}

TEST_CASE("Pi is even in t, Delta odd; t = 0 is the identity") {
    const SpectralDecomposition dec = svd_tau(build_tau(aniso_spec()));
    const double t = 1.3;
    const PropagatorCoefficients p = propagator_coeffs(dec, t);
    const PropagatorCoefficients m = propagator_coeffs(dec, -t);
    CHECK((p.Pi_x - m.Pi_x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p.Pi_y - m.Pi_y).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p.Delta_x + m.Delta_x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p.Delta_y + m.Delta_y).cwiseAbs().maxCoeff() < 1e-14);

    const PropagatorCoefficients z = propagator_coeffs(dec, 0.0);
    CHECK((z.Pi_x - build_tau(aniso_spec()).v).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(z.Delta_x.cwiseAbs().maxCoeff() < 1e-14);
    CHECK((z.Pi_y - build_tau(aniso_spec()).v).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(z.Delta_y.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("symmetric tau collapses the two families") {
    // Isotropic contact and uniform couplings make tau symmetric, so the
    // x and y families must coincide.
    const SubsystemSpec spec = SubsystemSpec::homogeneous(8, 1.0, 0.4, 1.7, 0.25);
    const SpectralDecomposition dec = svd_tau(build_tau(spec));
    for (double t : {0.5, 2.4}) {
        const PropagatorCoefficients c = propagator_coeffs(dec, t);
        CHECK((c.Pi_x - c.Pi_y).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((c.Delta_x - c.Delta_y).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("two-site system is an exact Rabi rotation") {
    // N = 1, no fields: tau = [[0, J0], [J0, 0]], so the qubit component is
    // cos(J0 t) and the chain component sin(J0 t).
    const double J0 = 1.3;
    const SubsystemSpec spec = SubsystemSpec::homogeneous(1, 1.0, 0.0, J0, 0.0);
    const SpectralDecomposition dec = svd_tau(build_tau(spec));
    for (double t : {0.2, 0.9, 3.1}) {
        const PropagatorCoefficients c = propagator_coeffs(dec, t);
        CHECK(c.Pi_x[0] == doctest::Approx(std::cos(J0 * t)).epsilon(1e-13));
        CHECK(c.Pi_y[0] == doctest::Approx(std::cos(J0 * t)).epsilon(1e-13));
        CHECK(std::abs(c.Delta_x[0]) < 1e-13);
        CHECK(std::abs(c.Delta_y[0]) < 1e-13);
        CHECK(std::abs(c.Delta_x[1]) == doctest::Approx(std::abs(std::sin(J0 * t))).epsilon(1e-12));
    }
}

TEST_CASE("series evaluator rejects non-finite time") {
    const HoppingMatrix hop = build_tau(aniso_spec());
    const SpectralDecomposition dec = svd_tau(hop);
    CHECK_THROWS_AS(propagator_coeffs(dec, std::nan("")), ConfigError);
    CHECK_THROWS_AS(propagator_coeffs_series(hop, std::nan(""), 10), ConfigError);
}
