// Bessel functions of the first kind, J_0(x)..J_{n_max}(x), for x >= 0.
//
// Evaluated by Miller's downward recurrence normalized with the identity
// J_0(x) + 2 sum_k J_{2k}(x) = 1, which is stable for all orders (upward
// recurrence is not for n > x). For x < 0.5 the ascending power series is
// used instead. Accuracy ~1e-14 relative on representable values.

#pragma once

#include <Eigen/Dense>

namespace spinchain {

Eigen::VectorXd bessel_j(int n_max, double x);

double bessel_j0(double x);
double bessel_j1(double x);

} // namespace spinchain
