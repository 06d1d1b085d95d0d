#include "spinchain/ed.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <vector>

namespace spinchain {

namespace {

using cd = std::complex<double>;

// site index -> bit position, site 0 (or the first listed site) is the MSB
inline int bit_of(long state, int site, int n_sites) {
    return static_cast<int>((state >> (n_sites - 1 - site)) & 1L);
}

struct Bond {
    int i, j;
    double Jx, Jy;
};

Eigen::MatrixXd assemble(int n_sites, const std::vector<Bond>& bonds,
                         const Eigen::VectorXd& fields) {
    if (n_sites > ed_max_sites)
        throw SizeCapError("exact diagonalization capped at " +
                           std::to_string(ed_max_sites) + " sites");
    const long dim = 1L << n_sites;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (long s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int i = 0; i < n_sites; ++i)
            diag -= fields(i) * (1.0 - 2.0 * bit_of(s, i, n_sites));
        H(s, s) = diag;
        for (const Bond& b : bonds) {
            const long mask = (1L << (n_sites - 1 - b.i)) | (1L << (n_sites - 1 - b.j));
            const long sp = s ^ mask;
            // sigma^x sigma^x + sigma^y sigma^y flips antiparallel pairs,
            // sigma^x sigma^x - sigma^y sigma^y parallel ones, amplitude 2 each
            const double amp = (bit_of(s, b.i, n_sites) == bit_of(s, b.j, n_sites))
                                   ? -0.5 * (b.Jx - b.Jy)
                                   : -0.5 * (b.Jx + b.Jy);
            H(sp, s) += amp;
        }
    }
    return H;
}

} // namespace

DenseHamiltonian build_hamiltonian(const SubsystemSpec& spec) {
    spec.validate();
    const int n = spec.N + 1;
    std::vector<Bond> bonds;
    bonds.push_back({0, 1, spec.J0_x, spec.J0_y});
    for (int i = 1; i < spec.N; ++i)
        bonds.push_back({i, i + 1, spec.J_x(i - 1), spec.J_y(i - 1)});
    Eigen::VectorXd fields(n);
    fields(0) = spec.h0;
    fields.tail(spec.N) = spec.h;
    return {n, assemble(n, bonds, fields)};
}

DenseHamiltonian build_chain_hamiltonian(const SubsystemSpec& spec) {
    spec.validate();
    std::vector<Bond> bonds;
    for (int i = 0; i + 1 < spec.N; ++i)
        bonds.push_back({i, i + 1, spec.J_x(i), spec.J_y(i)});
    return {spec.N, assemble(spec.N, bonds, spec.h)};
}

ChainGroundState chain_ground_state_ed(const SubsystemSpec& spec) {
    const DenseHamiltonian chain = build_chain_hamiltonian(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chain.H);
    ChainGroundState gs;
    gs.energy = es.eigenvalues()(0);
    gs.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    gs.psi = es.eigenvectors().col(0);
    gs.near_degenerate = gs.gap < 1e-10;
    return gs;
}

EdEngine::EdEngine(const SubsystemSpec& spec) {
    if (spec.N + 1 > ed_max_sites)
        throw SizeCapError("exact diagonalization capped at " +
                           std::to_string(ed_max_sites) + " sites");
    const ChainGroundState gs = chain_ground_state_ed(spec);
    gap_ = gs.gap;
    init(spec, gs.psi.cast<cd>());
}

EdEngine::EdEngine(const SubsystemSpec& spec, const Eigen::VectorXcd& chain_state) {
    if (spec.N + 1 > ed_max_sites)
        throw SizeCapError("exact diagonalization capped at " +
                           std::to_string(ed_max_sites) + " sites");
    gap_ = chain_ground_state_ed(spec).gap;
    init(spec, chain_state);
}

void EdEngine::init(const SubsystemSpec& spec, const Eigen::VectorXcd& chain_state) {
    N_ = spec.N;
    dim_chain_ = 1L << N_;
    if (chain_state.size() != dim_chain_)
        throw ConfigError("EdEngine: chain state has wrong dimension");
    if (std::abs(chain_state.norm() - 1.0) > 1e-8)
        throw ConfigError("EdEngine: chain state is not normalized");

    const DenseHamiltonian full = build_hamiltonian(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full.H);
    evecs_ = es.eigenvectors();
    evals_ = es.eigenvalues();

    // product state |q> (x) |chain> occupies the block q * dim_chain
    for (int q = 0; q < 2; ++q) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * dim_chain_);
        v.segment(q * dim_chain_, dim_chain_) = chain_state;
        basis_coeff_[q] = evecs_.transpose() * v;
    }
}

Eigen::Matrix2cd EdEngine::evolve_reduced(const Eigen::Matrix2cd& rho_qubit,
                                          double t) const {
    if ((rho_qubit - rho_qubit.adjoint()).norm() > 1e-8 ||
        std::abs(rho_qubit.trace() - cd(1.0)) > 1e-8)
        throw ConfigError("evolve_reduced: input is not a density matrix");
    const ChannelTensor K = channel(t);
    return evolve_single_qubit(K, rho_qubit);
}

ChannelTensor EdEngine::channel(double t) const {
    const Eigen::ArrayXcd phase = (cd(0.0, -1.0) * evals_.array() * t).exp();
    std::array<Eigen::VectorXcd, 2> phi;
    for (int q = 0; q < 2; ++q)
        phi[q] = evecs_ * (phase * basis_coeff_[q].array()).matrix();

    ChannelTensor ch;
    ch.t = t;
    // K[i][j][p][r] = (Tr_chain |Phi_p><Phi_r|)_{ij}
    for (int p = 0; p < 2; ++p)
        for (int r = 0; r < 2; ++r)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    ch.K[i][j][p][r] = phi[r]
                                           .segment(j * dim_chain_, dim_chain_)
                                           .dot(phi[p].segment(i * dim_chain_, dim_chain_));
    return ch;
}

double EdEngine::total_energy(const Eigen::Matrix2cd& rho_qubit) const {
    cd e = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int r = 0; r < 2; ++r)
            e += rho_qubit(p, r) *
                 basis_coeff_[r].dot((evals_.array() * basis_coeff_[p].array()).matrix());
    return e.real();
}

Eigen::Matrix2cd evolve_reduced(const SubsystemSpec& spec,
                                const Eigen::Matrix2cd& rho_qubit, double t) {
    return EdEngine(spec).evolve_reduced(rho_qubit, t);
}

ChannelTensor extract_channel_tomography(const SubsystemSpec& spec, double t) {
    const EdEngine engine(spec);
    const double inv2 = 0.5;
    auto pure = [](cd a, cd b) {
        Eigen::Matrix2cd r;
        r << a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b);
        return r;
    };
    const double s = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix2cd M0 = engine.evolve_reduced(pure(1.0, 0.0), t);
    const Eigen::Matrix2cd M1 = engine.evolve_reduced(pure(0.0, 1.0), t);
    const Eigen::Matrix2cd Mp = engine.evolve_reduced(pure(s, s), t);
    const Eigen::Matrix2cd Mi = engine.evolve_reduced(pure(s, cd(0.0, 1.0) * s), t);

    // E(|0><1|) and E(|1><0|) from the two superposition inputs
    const Eigen::Matrix2cd S1 = 2.0 * Mp - M0 - M1;
    const Eigen::Matrix2cd S2 = 2.0 * Mi - M0 - M1;
    const Eigen::Matrix2cd E01 = inv2 * (S1 + cd(0.0, 1.0) * S2);
    const Eigen::Matrix2cd E10 = inv2 * (S1 - cd(0.0, 1.0) * S2);

    ChannelTensor ch;
    ch.t = t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ch.K[i][j][0][0] = M0(i, j);
            ch.K[i][j][1][1] = M1(i, j);
            ch.K[i][j][0][1] = E01(i, j);
            ch.K[i][j][1][0] = E10(i, j);
        }

    // linearity check on a fifth, non-tomographic state
    const Eigen::Matrix2cd probe = pure(std::cos(0.3), std::sin(0.3) * std::exp(cd(0.0, 0.7)));
    const Eigen::Matrix2cd predicted = evolve_single_qubit(ch, probe);
    const Eigen::Matrix2cd actual = engine.evolve_reduced(probe, t);
    if ((predicted - actual).norm() > 1e-10)
        throw NumericalError("extract_channel_tomography: linearity residual too large");
    return ch;
}

ConcurrenceTrace oracle_concurrence_trace(const SubsystemSpec& spec_A,
                                          const SubsystemSpec& spec_B,
                                          BellKind initial,
                                          const std::vector<double>& grid) {
    auto eng_A = std::make_shared<const EdEngine>(spec_A);
    auto eng_B = (spec_A == spec_B) ? eng_A : std::make_shared<const EdEngine>(spec_B);
    return trace_from_channels([eng_A](double t) { return eng_A->channel(t); },
                               [eng_B](double t) { return eng_B->channel(t); },
                               initial, grid);
}

} // namespace spinchain
