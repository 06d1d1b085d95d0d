#include "spinchain/bessel.hpp"

#include <cmath>
#include <string>

#include "spinchain/subsystem.hpp"

namespace spinchain {

namespace {

// Ascending series J_n(x) = (x/2)^n / n! sum_k (-x^2/4)^k / (k! (n+k)!);
// converges in a handful of terms for x < 0.5.
double series_jn(int n, double x) {
    double prefac = 1.0;
    for (int k = 1; k <= n; ++k) {
        prefac *= 0.5 * x / k;
        if (prefac == 0.0) return 0.0;   // underflow: the true value is subnormal
    }
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (k * (n + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return prefac * sum;
}

} // namespace

Eigen::VectorXd bessel_j(int n_max, double x) {
    if (n_max < 0) throw ConfigError("bessel_j: n_max must be >= 0");
    if (!(x >= 0.0)) throw ConfigError("bessel_j: x must be >= 0");

    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_max + 1);
    if (x == 0.0) {
        out(0) = 1.0;
        return out;
    }
    if (x < 0.5) {
        for (int n = 0; n <= n_max; ++n) out(n) = series_jn(n, x);
        return out;
    }

    // Miller downward recurrence. Start well above both the order wanted and
    // the turning point n ~ x, where J_n becomes negligible.
    const double top = std::max(static_cast<double>(n_max), x);
    const int start = static_cast<int>(top + 20.0 + 12.0 * std::sqrt(top)) | 1;

    const double rescale = 1e-250, big = 1e250;
    double fkp1 = 0.0, fk = 1e-280;
    double norm = 0.0;   // J_0 + 2 sum_{even} J_2k, accumulated on the fly
    for (int k = start; k >= 1; --k) {
        const double fkm1 = (2.0 * k / x) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if (k - 1 <= n_max) out(k - 1) = fk;
        if ((k - 1) % 2 == 0) norm += (k == 1 ? 1.0 : 2.0) * fk;
        if (std::abs(fk) > big) {
            fk *= rescale;
            fkp1 *= rescale;
            norm *= rescale;
            for (int j = k - 1; j <= n_max; ++j) out(j) *= rescale;
        }
    }
    out /= norm;
    return out;
}

double bessel_j0(double x) { return bessel_j(0, x)(0); }

double bessel_j1(double x) { return bessel_j(1, x)(1); }

} // namespace spinchain
