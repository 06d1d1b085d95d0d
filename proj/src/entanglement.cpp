#include "spinchain/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "spinchain/parallel.hpp"

namespace spinchain {

namespace {
using cd = std::complex<double>;
} // namespace

BellKind bell_kind_from_string(std::string_view name) {
    if (name == "phi+" || name == "phi_plus") return BellKind::phi_plus;
    if (name == "phi-" || name == "phi_minus") return BellKind::phi_minus;
    if (name == "psi+" || name == "psi_plus") return BellKind::psi_plus;
    if (name == "psi-" || name == "psi_minus") return BellKind::psi_minus;
    throw ConfigError("unknown Bell state '" + std::string(name) +
                      "', expected phi+/phi-/psi+/psi-");
}

std::string_view to_string(BellKind kind) {
    switch (kind) {
        case BellKind::phi_plus: return "phi+";
        case BellKind::phi_minus: return "phi-";
        case BellKind::psi_plus: return "psi+";
        case BellKind::psi_minus: return "psi-";
    }
    return "?";
}

Eigen::Matrix4cd bell_state(BellKind kind) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const bool parallel = (kind == BellKind::phi_plus || kind == BellKind::phi_minus);
    const double s =
        (kind == BellKind::phi_plus || kind == BellKind::psi_plus) ? 0.5 : -0.5;
    const int a = parallel ? 0 : 1;
    const int b = parallel ? 3 : 2;
    rho(a, a) = rho(b, b) = 0.5;
    rho(a, b) = rho(b, a) = s;
    return rho;
}

Eigen::Matrix4cd evolve_pair(const ChannelTensor& K_A, const ChannelTensor& K_B,
                             const Eigen::Matrix4cd& rho0) {
    if (std::abs(K_A.t - K_B.t) > 1e-12)
        throw ConfigError("evolve_pair: channels evaluated at different times");
    if ((rho0 - rho0.adjoint()).norm() > 1e-8 || std::abs(rho0.trace() - cd(1.0)) > 1e-8)
        throw ConfigError("evolve_pair: input is not a density matrix");

    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < 2; ++j)
                for (int b = 0; b < 2; ++b) {
                    cd acc = 0.0;
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q)
                            for (int r = 0; r < 2; ++r)
                                for (int s = 0; s < 2; ++s)
                                    acc += K_A.K[i][j][p][r] * K_B.K[a][b][q][s] *
                                           rho0(2 * p + q, 2 * r + s);
                    out(2 * i + a, 2 * j + b) = acc;
                }
    return out;
}

ConcurrenceComponents concurrence_components(const Eigen::Matrix4cd& rho) {
    ConcurrenceComponents c;
    const double scale = std::max(1.0, rho.norm());
    double off = 0.0;
    for (auto [r, s] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}})
        off = std::max(off, std::abs(rho(r, s)));
    c.x_form = off <= 1e-9 * scale;

    // populations at roundoff level are numerical zeros; the square roots
    // below would amplify them to ~1e-8 (e.g. the structurally empty |11>
    // population of an antiparallel pair damped by polarized chains)
    const double floor_ = 100.0 * std::numeric_limits<double>::epsilon() * scale;
    auto pop = [&](int k) {
        const double p = rho(k, k).real();
        return p <= floor_ ? 0.0 : p;
    };
    c.C_uu = std::abs(rho(0, 3)) - std::sqrt(pop(1) * pop(2));
    c.C_ud = std::abs(rho(1, 2)) - std::sqrt(pop(0) * pop(3));
    if (c.x_form) {
        c.C = 2.0 * std::max({0.0, c.C_uu, c.C_ud});
    } else {
        c.C = wootters_concurrence(rho);
    }
    return c;
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd rt = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rt);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k)
        lam[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

PairEngine::PairEngine(const SubsystemSpec& spec_A, const SubsystemSpec& spec_B)
    : spec_A_(spec_A), spec_B_(spec_B) {
    auto build = [](const SubsystemSpec& spec) {
        spec.validate();
        if (!spec.chain_is_homogeneous())
            throw ConfigError(
                "PairEngine: chain must be homogeneous XX (ground state is "
                "constructed from the analytic mode basis)");
        Side side;
        side.dec = svd_tau(build_tau(spec));
        const ModeBasis modes = chain_modes(spec.N, spec.chain_J(), spec.chain_h());
        side.corr = correlators(modes, fermi_count(modes));
        return side;
    };
    A_ = build(spec_A_);
    identical_sides_ = (spec_A_ == spec_B_);
    B_ = identical_sides_ ? A_ : build(spec_B_);
}

ChannelTensor PairEngine::channel(const Side& side, double t) const {
    return channel_superop(bloch_map(propagator_coeffs(side.dec, t), side.corr));
}

ChannelTensor PairEngine::channel_A(double t) const { return channel(A_, t); }
ChannelTensor PairEngine::channel_B(double t) const { return channel(B_, t); }

Eigen::Matrix4cd PairEngine::evolve(BellKind kind, double t) const {
    return evolve(bell_state(kind), t);
}

Eigen::Matrix4cd PairEngine::evolve(const Eigen::Matrix4cd& rho0, double t) const {
    const ChannelTensor K_A = channel(A_, t);
    const ChannelTensor K_B = identical_sides_ ? K_A : channel(B_, t);
    return evolve_pair(K_A, K_B, rho0);
}

ConcurrenceComponents PairEngine::components(BellKind kind, double t) const {
    return concurrence_components(evolve(kind, t));
}

double PairEngine::raw_component_max(BellKind kind, double t) const {
    const ConcurrenceComponents c = components(kind, t);
    return std::max(c.C_uu, c.C_ud);
}

double PairEngine::survival_factor_A(double t) const {
    return propagator_coeffs(A_.dec, t).Pi_x(0);
}

double PairEngine::survival_factor_B(double t) const {
    return propagator_coeffs(B_.dec, t).Pi_x(0);
}

std::vector<double> time_grid(double t_max, double dt) {
    if (!(t_max > 0.0) || !(dt > 0.0) || dt > t_max)
        throw ConfigError("time_grid: need 0 < dt <= t_max");
    const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t k = 0; k <= n; ++k) grid[k] = k * dt;
    if (grid.back() < t_max - 1e-9 * std::max(1.0, t_max)) grid.push_back(t_max);
    return grid;
}

ConcurrenceTrace trace_from_channels(const std::function<ChannelTensor(double)>& chan_A,
                                     const std::function<ChannelTensor(double)>& chan_B,
                                     BellKind initial,
                                     const std::vector<double>& grid) {
    if (grid.empty()) throw ConfigError("trace_from_channels: empty time grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("trace_from_channels: grid must be increasing");

    const Eigen::Matrix4cd rho0 = bell_state(initial);
    auto evolve_at = [chan_A, chan_B, rho0](double t) {
        return evolve_pair(chan_A(t), chan_B(t), rho0);
    };

    const std::size_t n = grid.size();
    ConcurrenceTrace tr;
    tr.times = grid;
    tr.C.resize(n);
    tr.C_par.resize(n);
    tr.C_anti.resize(n);
    tr.raw_par.resize(n);
    tr.raw_anti.resize(n);
    tr.rho.resize(n);

    parallel_for(n, [&](std::size_t k) {
        const Eigen::Matrix4cd rho = evolve_at(grid[k]);
        const ConcurrenceComponents c = concurrence_components(rho);
        tr.C[k] = c.C;
        tr.C_par[k] = 2.0 * std::max(0.0, c.C_uu);
        tr.C_anti[k] = 2.0 * std::max(0.0, c.C_ud);
        tr.raw_par[k] = c.C_uu;
        tr.raw_anti[k] = c.C_ud;
        XStateRow& row = tr.rho[k];
        row.rho11 = rho(0, 0).real();
        row.rho22 = rho(1, 1).real();
        row.rho33 = rho(2, 2).real();
        row.rho44 = rho(3, 3).real();
        row.rho14 = rho(0, 3);
        row.rho23 = rho(1, 2);
    });

    tr.raw_max = [evolve_at](double t) {
        const ConcurrenceComponents c = concurrence_components(evolve_at(t));
        return std::max(c.C_uu, c.C_ud);
    };
    tr.t_ESD = detect_esd(tr);
    tr.t_rev = detect_revival(tr);
    return tr;
}

ConcurrenceTrace concurrence_trace(const SubsystemSpec& spec_A,
                                   const SubsystemSpec& spec_B,
                                   BellKind initial,
                                   const std::vector<double>& grid) {
    auto engine = std::make_shared<const PairEngine>(spec_A, spec_B);
    return trace_from_channels([engine](double t) { return engine->channel_A(t); },
                               [engine](double t) { return engine->channel_B(t); },
                               initial, grid);
}

std::optional<double> detect_esd(const ConcurrenceTrace& trace) {
    const std::size_t n = trace.size();
    if (n < 3) return std::nullopt;
    auto f = [&](std::size_t i) {
        return std::max(trace.raw_par[i], trace.raw_anti[i]);
    };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (f(i - 1) > 0.0 && f(i) <= 0.0 && f(i + 1) <= 0.0) {
            if (!trace.raw_max) return trace.times[i];
            double a = trace.times[i - 1], b = trace.times[i];
            for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
                const double m = 0.5 * (a + b);
                (trace.raw_max(m) > 0.0 ? a : b) = m;
            }
            return b;
        }
    }
    return std::nullopt;
}

std::optional<double> detect_revival(const ConcurrenceTrace& trace) {
    if (!trace.t_ESD) return std::nullopt;
    const std::size_t n = trace.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (trace.times[i] <= *trace.t_ESD) continue;
        if (trace.C[i] > 1e-6 && trace.C[i] >= trace.C[i - 1] &&
            trace.C[i] >= trace.C[i + 1])
            return trace.times[i];
    }
    return std::nullopt;
}

std::pair<double, double> time_averaged(ConcurrenceTrace& trace, double t1, double t2) {
    if (trace.size() < 2) throw ConfigError("time_averaged: trace too short");
    const double lo = trace.times.front() - 1e-9, hi = trace.times.back() + 1e-9;
    if (!(t1 < t2) || t1 < lo || t2 > hi)
        throw ConfigError("time_averaged: window must lie inside the trace range");

    std::size_t first = 0, last = trace.size() - 1;
    while (trace.times[first] < t1 - 1e-9) ++first;
    while (trace.times[last] > t2 + 1e-9) --last;
    if (last < first + 1)
        throw ConfigError("time_averaged: window contains fewer than two samples");

    double ip = 0.0, ia = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        const double w = 0.5 * (trace.times[i + 1] - trace.times[i]);
        ip += w * (trace.C_par[i] + trace.C_par[i + 1]);
        ia += w * (trace.C_anti[i] + trace.C_anti[i + 1]);
    }
    const double span = trace.times[last] - trace.times[first];
    trace.avg_par = ip / span;
    trace.avg_anti = ia / span;
    return {*trace.avg_par, *trace.avg_anti};
}

ConcurrenceTrace switching_trace(const SubsystemSpec& spec_A,
                                 const SubsystemSpec& spec_B,
                                 BellKind initial,
                                 const std::vector<double>& grid) {
    for (const SubsystemSpec* s : {&spec_A, &spec_B})
        if (s->J0_y != 0.0 || s->h0 != 0.0)
            throw ConfigError(
                "switching_trace: requires J0_y = 0 and h0 = 0 on both sides");

    ConcurrenceTrace tr = concurrence_trace(spec_A, spec_B, initial, grid);
    const PairEngine engine(spec_A, spec_B);
    const double sign =
        (initial == BellKind::psi_plus || initial == BellKind::psi_minus) ? 1.0 : -1.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double w =
            engine.survival_factor_A(tr.times[k]) * engine.survival_factor_B(tr.times[k]);
        if (std::abs(tr.raw_anti[k] - sign * 0.5 * w) > 1e-8 ||
            std::abs(tr.raw_par[k] + sign * 0.5 * w) > 1e-8)
            throw NumericalError(
                "switching_trace: pipeline disagrees with the conserved-sigma^x product");
    }
    return tr;
}

} // namespace spinchain
