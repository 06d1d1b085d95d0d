// Bessel evaluator vs the standard-library implementation, the closure
// identity that normalizes Miller's recurrence, and the input guards.

#include <cmath>

#include "doctest.h"
#include "spinchain/bessel.hpp"
#include "spinchain/subsystem.hpp"

using namespace spinchain;

TEST_CASE("matches std::cyl_bessel_j over orders and arguments") {
    const double xs[] = {1e-3, 0.3, 0.7, 2.0, 10.0, 37.5, 80.0};
    for (double x : xs) {
        const Eigen::VectorXd j = bessel_j(60, x);
        REQUIRE(j.size() == 61);
        for (int n = 0; n <= 60; ++n) {
            const double ref = std::cyl_bessel_j(n, x);
            CHECK(std::abs(j[n] - ref) < 1e-13);
        }
    }
}

TEST_CASE("closure identity J_0 + 2 sum J_2k = 1") {
    for (double x : {0.2, 1.0, 5.0, 23.0}) {
        const Eigen::VectorXd j = bessel_j(120, x);
        double s = j[0];
        for (int k = 2; k <= 120; k += 2) s += 2.0 * j[k];
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("three-term recurrence holds in the interior") {
    const double x = 7.3;
    const Eigen::VectorXd j = bessel_j(40, x);
    for (int n = 1; n < 30; ++n) {
        const double resid = j[n - 1] + j[n + 1] - (2.0 * n / x) * j[n];
        CHECK(std::abs(resid) < 1e-12);
    }
}

TEST_CASE("sum rule sum_k k^2 J_k(x)^2 = x^2/4") {
    for (double x : {1.0, 4.0, 12.0}) {
        const int cap = static_cast<int>(x) + 30 + static_cast<int>(12.0 * std::sqrt(x));
        const Eigen::VectorXd j = bessel_j(cap, x);
        double s = 0.0;
        for (int k = 1; k < j.size(); ++k) s += double(k) * k * j[k] * j[k];
        CHECK(std::abs(s - x * x / 4.0) < 1e-11 * (1.0 + x * x));
    }
}

TEST_CASE("scalar helpers and x = 0") {
    CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_j1(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(bessel_j0(2.5) - std::cyl_bessel_j(0, 2.5)) < 1e-14);
    CHECK(std::abs(bessel_j1(2.5) - std::cyl_bessel_j(1, 2.5)) < 1e-14);
    // frozen value J_1(2)
    CHECK(std::abs(bessel_j1(2.0) - 0.5767248077568734) < 1e-14);

    const Eigen::VectorXd j = bessel_j(5, 0.0);
    CHECK(j[0] == 1.0);
    CHECK(j.tail(5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rejects invalid input") {
    CHECK_THROWS_AS(bessel_j(-1, 1.0), ConfigError);
    CHECK_THROWS_AS(bessel_j(3, -0.5), ConfigError);
    CHECK_THROWS_AS(bessel_j(3, std::nan("")), ConfigError);
}
