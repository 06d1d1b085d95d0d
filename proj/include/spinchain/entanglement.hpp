// Two-qubit entanglement dynamics: channel composition, concurrence and its
// parallel/antiparallel components, ESD and revival detection, time
// averages, and the anisotropic switching configuration.
//
// Basis |00>, |01>, |10>, |11> with qubit A the high bit. For Bell inputs
// the state keeps X form, and
//   C_ud = |rho_23| - sqrt(rho_11 rho_44)   (antiparallel component)
//   C_uu = |rho_14| - sqrt(rho_22 rho_33)   (parallel component)
//   C    = 2 max{0, C_uu, C_ud}.
// ESD is a sustained zero (two consecutive grid points with the unclipped
// dominant component <= 0), which separates true sudden death from the
// isolated zeros of the anisotropic case.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "spinchain/channel.hpp"

namespace spinchain {

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

BellKind bell_kind_from_string(std::string_view name);  // "phi+", "psi-", ...
std::string_view to_string(BellKind kind);

Eigen::Matrix4cd bell_state(BellKind kind);

// Tensor contraction of K_A (x) K_B with rho0; channels must share t.
Eigen::Matrix4cd evolve_pair(const ChannelTensor& K_A, const ChannelTensor& K_B,
                             const Eigen::Matrix4cd& rho0);

struct ConcurrenceComponents {
    double C_uu = 0.0;     // raw (unclipped) parallel component
    double C_ud = 0.0;     // raw antiparallel component
    double C = 0.0;        // 2 max{0, C_uu, C_ud}
    bool x_form = true;    // false: input was not an X state, C from Wootters
};

ConcurrenceComponents concurrence_components(const Eigen::Matrix4cd& rho);

// Spin-flip eigenvalue formula; universal oracle, any two-qubit state.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

// Reduced X-state entries kept per time step for output files.
struct XStateRow {
    double rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
    std::complex<double> rho14{0, 0}, rho23{0, 0};
};

struct ConcurrenceTrace {
    std::vector<double> times;
    std::vector<double> C;
    std::vector<double> C_par;     // 2 max{0, C_uu}
    std::vector<double> C_anti;    // 2 max{0, C_ud}
    std::vector<double> raw_par;   // unclipped C_uu, kept for switching analysis
    std::vector<double> raw_anti;  // unclipped C_ud
    std::vector<XStateRow> rho;

    std::optional<double> t_ESD;
    std::optional<double> t_rev;
    std::optional<double> avg_par;
    std::optional<double> avg_anti;

    // Continuous evaluator of max(C_uu, C_ud) used for bisection refinement;
    // empty for synthetic traces, detectors then stay on the grid.
    std::function<double(double)> raw_max;

    std::size_t size() const { return times.size(); }
};

// Caches the spectral decomposition and ground-state correlators of both
// sides; all evaluations are const and safe to run concurrently.
class PairEngine {
  public:
    PairEngine(const SubsystemSpec& spec_A, const SubsystemSpec& spec_B);

    ChannelTensor channel_A(double t) const;
    ChannelTensor channel_B(double t) const;
    Eigen::Matrix4cd evolve(BellKind kind, double t) const;
    Eigen::Matrix4cd evolve(const Eigen::Matrix4cd& rho0, double t) const;
    ConcurrenceComponents components(BellKind kind, double t) const;
    double raw_component_max(BellKind kind, double t) const;

    // Pi_x[0] of one side; the transverse survival factor of the
    // sigma^x-conserving (J0_y = 0) configuration.
    double survival_factor_A(double t) const;
    double survival_factor_B(double t) const;

    const SubsystemSpec& spec_A() const { return spec_A_; }
    const SubsystemSpec& spec_B() const { return spec_B_; }

  private:
    struct Side {
        SpectralDecomposition dec;
        GroundStateCorrelators corr;
    };
    ChannelTensor channel(const Side& side, double t) const;

    SubsystemSpec spec_A_, spec_B_;
    Side A_, B_;
    bool identical_sides_ = false;
};

std::vector<double> time_grid(double t_max, double dt);

// Grid evaluation common to every channel source (spectral pipeline, exact
// diagonalization, thermodynamic limit): evolves the Bell input through
// chan_A (x) chan_B at every grid point, extracts components and detectors.
// The factories must be safe to call concurrently. Grid must be increasing.
ConcurrenceTrace trace_from_channels(const std::function<ChannelTensor(double)>& chan_A,
                                     const std::function<ChannelTensor(double)>& chan_B,
                                     BellKind initial,
                                     const std::vector<double>& grid);

// Full pipeline on the grid; fills detectors. Grid must be increasing.
ConcurrenceTrace concurrence_trace(const SubsystemSpec& spec_A,
                                   const SubsystemSpec& spec_B,
                                   BellKind initial,
                                   const std::vector<double>& grid);

// First sustained zero, refined by bisection when the trace carries its
// evaluator; nullopt when C never dies in range.
std::optional<double> detect_esd(const ConcurrenceTrace& trace);

// First local maximum of C with C > 1e-6 after t_ESD; nullopt otherwise.
std::optional<double> detect_revival(const ConcurrenceTrace& trace);

// Trapezoidal averages of C_par and C_anti over [t1, t2] (window must lie
// inside the trace range); also stored on the trace.
std::pair<double, double> time_averaged(ConcurrenceTrace& trace, double t1, double t2);

// J0_y = 0, h0 = 0 on both sides: sigma^x_0 is conserved and the raw
// components obey C_ud = -C_uu = w_A(t) w_B(t) / 2 (antiparallel input;
// parallel input swaps the sign), with w = Pi_x[0] of each side. Evaluates
// the full pipeline, checks it against the closed product to 1e-8
// (NumericalError otherwise) and returns the pipeline trace.
ConcurrenceTrace switching_trace(const SubsystemSpec& spec_A,
                                 const SubsystemSpec& spec_B,
                                 BellKind initial,
                                 const std::vector<double>& grid);

} // namespace spinchain
