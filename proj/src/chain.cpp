#include "spinchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace spinchain {

ModeBasis chain_modes(int N, double J, double h) {
    if (N < 1) throw ConfigError("chain_modes: N must be >= 1");
    ModeBasis mb;
    mb.N = N;
    mb.phi.resize(N, N);
    mb.theta.resize(N);
    mb.energies.resize(N);
    const double norm = std::sqrt(2.0 / (N + 1.0));
    for (int k = 1; k <= N; ++k) {
        const double th = k * M_PI / (N + 1.0);
        mb.theta(k - 1) = th;
        mb.energies(k - 1) = 2.0 * (h - J * std::cos(th));
        for (int j = 1; j <= N; ++j)
            mb.phi(j - 1, k - 1) = norm * std::sin(j * th);
    }
    return mb;
}

int fermi_count(const ModeBasis& modes) {
    // exact zero modes must stay empty, so ties within rounding of zero are
    // excluded from the count
    const double scale = std::max(1.0, modes.energies.cwiseAbs().maxCoeff());
    const double tie_tol = 1e-12 * scale;
    int k_F = 0;
    for (int k = 0; k < modes.N; ++k)
        if (modes.energies(k) < -tie_tol) ++k_F;
    return k_F;
}

bool has_zero_mode(const ModeBasis& modes) {
    const double scale = std::max(1.0, modes.energies.cwiseAbs().maxCoeff());
    return (modes.energies.cwiseAbs().array() < 1e-12 * scale).any();
}

GroundStateCorrelators correlators(const ModeBasis& modes, int k_F) {
    if (k_F < 0 || k_F > modes.N)
        throw ConfigError("correlators: k_F out of range");
    GroundStateCorrelators gc;
    gc.N = modes.N;
    gc.k_F = k_F;
    // G_nm = sum over the k_F lowest modes of phi_nk phi_mk
    std::vector<int> order(modes.N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return modes.energies(a) < modes.energies(b);
    });
    gc.G = Eigen::MatrixXd::Zero(modes.N, modes.N);
    for (int k = 0; k < k_F; ++k) {
        const Eigen::VectorXd col = modes.phi.col(order[k]);
        gc.G.noalias() += col * col.transpose();
    }
    gc.sz = Eigen::VectorXd::Ones(modes.N) - 2.0 * gc.G.diagonal();
    // string correlator between sites n<m collapses to a single determinant
    // of (2G - I) restricted to the pair, leaving 2 G_nm up to the sz factor
    gc.g = 2.0 * gc.G;
    gc.g.diagonal().setZero();
    return gc;
}

double sz_closed_form(const ModeBasis& modes, int k_F, int n) {
    if (n < 1 || n > modes.N) throw ConfigError("sz_closed_form: site out of range");
    // resummed Dirichlet kernel for sum_{k<=k_F} sin^2(n k pi / (N+1))
    const int L = modes.N + 1;
    const double a = n * M_PI / L;
    double partial;
    if (std::abs(std::sin(a)) < 1e-14) {
        partial = k_F;
    } else {
        partial = k_F - std::sin(k_F * a) * std::cos((k_F + 1.0) * a) / std::sin(a);
    }
    return 1.0 - 2.0 / L * partial;
}

GroundStateCorrelators semi_infinite_correlators(int N, double J, double h) {
    if (N < 1) throw ConfigError("semi_infinite_correlators: N must be >= 1");
    if (!(J > 0.0)) throw ConfigError("semi_infinite_correlators: J must be positive");
    const double ratio = h / J;
    const double theta_F =
        ratio >= 1.0 ? 0.0 : (ratio <= -1.0 ? M_PI : std::acos(ratio));
    auto sinc_F = [theta_F](int d) {
        return d == 0 ? theta_F : std::sin(d * theta_F) / d;
    };
    GroundStateCorrelators gc;
    gc.N = N;
    gc.k_F = -1;
    gc.G.resize(N, N);
    for (int n = 1; n <= N; ++n)
        for (int m = 1; m <= N; ++m)
            gc.G(n - 1, m - 1) = (sinc_F(n - m) - sinc_F(n + m)) / M_PI;
    gc.sz = Eigen::VectorXd::Ones(N) - 2.0 * gc.G.diagonal();
    gc.g = 2.0 * gc.G;
    gc.g.diagonal().setZero();
    return gc;
}

double g_closed_form(const ModeBasis& modes, int k_F, int n, int m) {
    if (n < 1 || n > modes.N || m < 1 || m > modes.N)
        throw ConfigError("g_closed_form: site out of range");
    // sum over occupied modes of phi_nk phi_mk via two Dirichlet kernels
    const int L = modes.N + 1;
    auto kernel = [&](int d) -> double {
        // sum_{k=1}^{k_F} cos(d k pi / L)
        if (d % (2 * L) == 0) return k_F;
        const double a = d * M_PI / (2.0 * L);
        if (std::abs(std::sin(a)) < 1e-14) {
            // a is a multiple of pi: cos terms alternate
            double s = 0.0;
            for (int k = 1; k <= k_F; ++k) s += std::cos(2.0 * k * a);
            return s;
        }
        return std::sin(k_F * a) * std::cos((k_F + 1.0) * a) / std::sin(a);
    };
    return (kernel(n - m) - kernel(n + m)) / L;
}

} // namespace spinchain
