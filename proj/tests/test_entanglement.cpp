// Two-qubit layer: Bell states, concurrence formulas, the trace evaluator
// with its ESD/revival detectors, time averages, and the conserved-sigma^x
// switching configuration.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "spinchain/entanglement.hpp"

using namespace spinchain;
using cd = std::complex<double>;

TEST_CASE("bell states and name parsing") {
    CHECK(bell_kind_from_string("psi+") == BellKind::psi_plus);
    CHECK(bell_kind_from_string("phi_minus") == BellKind::phi_minus);
    CHECK_THROWS_AS(bell_kind_from_string("werner"), ConfigError);
    CHECK(to_string(BellKind::psi_minus) == "psi-");

    for (BellKind kind : {BellKind::phi_plus, BellKind::phi_minus,
                          BellKind::psi_plus, BellKind::psi_minus}) {
        const Eigen::Matrix4cd rho = bell_state(kind);
        CHECK(std::abs(rho.trace() - cd(1.0)) < 1e-15);
        CHECK((rho - rho.adjoint()).norm() < 1e-15);
        CHECK((rho * rho - rho).norm() < 1e-15);           // pure
        CHECK(concurrence_components(rho).C == doctest::Approx(1.0));
        CHECK(wootters_concurrence(rho) == doctest::Approx(1.0));
    }
    // parallel kinds live on the outer block, antiparallel on the inner
    CHECK(bell_state(BellKind::phi_plus)(0, 3).real() == doctest::Approx(0.5));
    CHECK(bell_state(BellKind::psi_plus)(1, 2).real() == doctest::Approx(0.5));
    CHECK(bell_state(BellKind::psi_minus)(1, 2).real() == doctest::Approx(-0.5));
}

TEST_CASE("werner state concurrence") {
    const Eigen::Matrix4cd werner =
        0.5 * bell_state(BellKind::psi_minus) + 0.125 * Eigen::Matrix4cd::Identity();
    const ConcurrenceComponents c = concurrence_components(werner);
    CHECK(c.x_form);
    CHECK(c.C == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(wootters_concurrence(werner) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("wootters handles states outside X form") {
    // a local Hadamard cannot change entanglement but breaks the X pattern
    Eigen::Matrix2cd H2;
    H2 << 1.0, 1.0, 1.0, -1.0;
    H2 /= std::sqrt(2.0);
    Eigen::Matrix4cd U = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int q = 0; q < 2; ++q)
                U(2 * a + q, 2 * b + q) = H2(a, b);
    const Eigen::Matrix4cd rho = U * bell_state(BellKind::phi_plus) * U.adjoint();

    const ConcurrenceComponents c = concurrence_components(rho);
    CHECK_FALSE(c.x_form);
    CHECK(c.C == doctest::Approx(1.0).epsilon(1e-12));

    const Eigen::Matrix4cd product = Eigen::Vector4cd(1, 0, 0, 0).asDiagonal();
    CHECK(wootters_concurrence(product) == doctest::Approx(0.0));
}

TEST_CASE("pair evolution composes the two channels") {
    const ChannelTensor id = identity_channel();
    const Eigen::Matrix4cd rho0 = bell_state(BellKind::psi_plus);
    CHECK((evolve_pair(id, id, rho0) - rho0).norm() < 1e-15);

    ChannelTensor late = identity_channel();
    late.t = 0.2;
    CHECK_THROWS_AS(evolve_pair(id, late, rho0), ConfigError);

    Eigen::Matrix4cd bad = rho0;
    bad(0, 0) += 0.5;
    CHECK_THROWS_AS(evolve_pair(id, id, bad), ConfigError);
}

TEST_CASE("engine caches both sides and keeps X form on Bell inputs") {
    const SubsystemSpec spec = SubsystemSpec::homogeneous(8, 1.0, 0.3, 1.2, 0.1);
    const PairEngine engine(spec, spec);

    const ConcurrenceComponents c0 = engine.components(BellKind::psi_plus, 0.0);
    CHECK(c0.C == doctest::Approx(1.0));
    CHECK(engine.raw_component_max(BellKind::psi_plus, 0.0) == doctest::Approx(0.5));

    for (double t : {0.4, 1.1}) {
        const Eigen::Matrix4cd rho = engine.evolve(BellKind::psi_plus, t);
        const ConcurrenceComponents c = concurrence_components(rho);
        CHECK(c.x_form);
        // X-state component formula must agree with the universal one
        CHECK(std::abs(c.C - wootters_concurrence(rho)) < 1e-10);

        const ChannelTensor KA = engine.channel_A(t);
        const ChannelTensor KB = engine.channel_B(t);
        double diff = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int p = 0; p < 2; ++p)
                    for (int r = 0; r < 2; ++r)
                        diff = std::max(diff, std::abs(KA.K[i][j][p][r] - KB.K[i][j][p][r]));
        CHECK(diff == 0.0);   // identical sides share one decomposition
    }

    SubsystemSpec ragged = spec;
    ragged.J_x(2) = 0.5;   // inhomogeneous chain has no analytic ground state here
    CHECK_THROWS_AS(PairEngine(ragged, spec), ConfigError);
}

TEST_CASE("time grid covers [0, t_max]") {
    const std::vector<double> g = time_grid(1.0, 0.3);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g[3] == doctest::Approx(0.9));
    CHECK(g.back() == 1.0);

    const std::vector<double> exact = time_grid(1.0, 0.25);
    REQUIRE(exact.size() == 5);
    CHECK(exact.back() == doctest::Approx(1.0));

    CHECK_THROWS_AS(time_grid(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(time_grid(-1.0, 0.1), ConfigError);
    CHECK_THROWS_AS(time_grid(1.0, 2.0), ConfigError);
}

TEST_CASE("sudden death of the isotropic pair sits at the frozen root") {
    // boundary reflections only reach the qubit at t ~ N, so a short chain
    // reproduces the long-chain death time to high accuracy
    const SubsystemSpec spec = SubsystemSpec::homogeneous(12, 1.0, 0.0, 1.0, 0.0);
    ConcurrenceTrace tr =
        concurrence_trace(spec, spec, BellKind::psi_plus, time_grid(1.2, 0.01));

    CHECK(tr.C.front() == doctest::Approx(1.0));
    REQUIRE(tr.t_ESD.has_value());
    CHECK(std::abs(*tr.t_ESD - 0.9037239980697632) < 1e-6);
    CHECK_FALSE(tr.t_rev.has_value());   // no revival in range for J0 = J

    // all four Bell inputs die at the same instant in the isotropic case
    ConcurrenceTrace par =
        concurrence_trace(spec, spec, BellKind::phi_minus, time_grid(1.2, 0.01));
    REQUIRE(par.t_ESD.has_value());
    CHECK(std::abs(*par.t_ESD - *tr.t_ESD) < 1e-9);
}

TEST_CASE("strong coupling revives the pair at the frozen grid point") {
    const SubsystemSpec spec = SubsystemSpec::homogeneous(12, 1.0, 0.0, 4.0, 0.0);
    ConcurrenceTrace tr =
        concurrence_trace(spec, spec, BellKind::psi_plus, time_grid(1.2, 0.002));
    REQUIRE(tr.t_ESD.has_value());
    CHECK(std::abs(*tr.t_ESD - 0.2184) < 2e-3);
    REQUIRE(tr.t_rev.has_value());
    CHECK(std::abs(*tr.t_rev - 0.7640) < 4e-3);
    CHECK(*tr.t_rev > *tr.t_ESD);
}

TEST_CASE("detectors on synthetic traces") {
    ConcurrenceTrace tr;
    tr.times = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    tr.raw_par = std::vector<double>(7, -1.0);

    SUBCASE("sustained zero is sudden death") {
        tr.raw_anti = {0.5, 0.3, 0.1, -0.1, -0.2, -0.1, 0.2};
        tr.C = {1.0, 0.6, 0.2, 0.0, 0.0, 0.0, 0.4};
        tr.t_ESD = detect_esd(tr);
        REQUIRE(tr.t_ESD.has_value());
        CHECK(*tr.t_ESD == doctest::Approx(0.3));   // no evaluator: grid point
        tr.C = {1.0, 0.6, 0.2, 0.0, 0.0, 0.1, 0.05};
        CHECK(detect_revival(tr).value() == doctest::Approx(0.5));
    }
    SUBCASE("isolated zero is not") {
        tr.raw_anti = {0.5, 0.3, -0.05, 0.1, 0.3, 0.2, 0.1};
        CHECK_FALSE(detect_esd(tr).has_value());
        tr.t_ESD = std::nullopt;
        CHECK_FALSE(detect_revival(tr).has_value());
    }
    SUBCASE("no crossing, no death") {
        tr.raw_anti = {0.5, 0.4, 0.3, 0.2, 0.15, 0.12, 0.1};
        CHECK_FALSE(detect_esd(tr).has_value());
    }
}

TEST_CASE("time averages are exact trapezoids") {
    ConcurrenceTrace tr;
    tr.times = {0.0, 1.0, 2.0, 3.0, 4.0};
    tr.C_par = {0.0, 1.0, 2.0, 3.0, 4.0};
    tr.C_anti = std::vector<double>(5, 0.5);

    const auto [par, anti] = time_averaged(tr, 1.0, 3.0);
    CHECK(par == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(anti == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tr.avg_par.value() == doctest::Approx(2.0));

    CHECK_THROWS_AS(time_averaged(tr, 3.0, 1.0), ConfigError);
    CHECK_THROWS_AS(time_averaged(tr, 1.0, 9.0), ConfigError);
    CHECK_THROWS_AS(time_averaged(tr, 1.4, 1.6), ConfigError);
}

TEST_CASE("conserved-sigma^x configuration switches instead of dying") {
    const SubsystemSpec A = SubsystemSpec::homogeneous(10, 1.0, 1.0, 1.0, 0.0, 0.0);
    const SubsystemSpec B = SubsystemSpec::homogeneous(10, 1.0, 0.0, 1.0, 0.0, 0.0);
    const std::vector<double> grid = time_grid(4.0, 0.01);

    // the closed-product consistency check runs internally at every point
    ConcurrenceTrace tr = switching_trace(A, B, BellKind::psi_plus, grid);
    for (std::size_t k = 0; k < tr.size(); ++k)
        CHECK(std::abs(tr.raw_par[k] + tr.raw_anti[k]) < 1e-12);
    CHECK_FALSE(tr.t_ESD.has_value());   // zeros of the product are isolated

    ConcurrenceTrace par = switching_trace(A, B, BellKind::phi_plus, grid);
    for (std::size_t k = 0; k < tr.size(); ++k)
        CHECK(std::abs(par.raw_par[k] - tr.raw_anti[k]) < 1e-12);

    SubsystemSpec iso = A;
    iso.J0_y = 1.0;
    CHECK_THROWS_AS(switching_trace(iso, B, BellKind::psi_plus, grid), ConfigError);
}
