// Flat key = value experiment configuration and deterministic CSV output.
//
// Recognized keys: side_A.N, side_A.J, side_A.h, side_A.J0, side_A.J0_x,
// side_A.J0_y, side_A.h0, the same under side_B (any side_B field not set
// explicitly inherits the side_A value), initial_state, time.max, time.step,
// mode (finite | thermodynamic), window.t1, window.t2, output. Lines may
// carry '#' comments. Command-line overrides additionally accept the bare
// keys N, J, h, h0, J0, J0_x, J0_y (applied to both sides) and hA, hB (the
// chain field of one side).

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinchain/entanglement.hpp"

namespace spinchain {

enum class RunMode { finite, thermodynamic };

struct SideConfig {
    int N = 50;
    double J = 1.0;
    double h = 0.0;
    double J0_x = 1.0;
    double J0_y = 1.0;
    double h0 = 0.0;

    SubsystemSpec spec() const;  // homogeneous materialization
};

struct ExperimentConfig {
    SideConfig side_A, side_B;
    BellKind initial = BellKind::psi_plus;
    double t_max = 45.0;
    double dt = 0.01;
    RunMode mode = RunMode::finite;
    double window_t1 = 10.0;
    double window_t2 = 45.0;
    std::string output;  // empty: per-command default name

    void validate() const;  // throws ConfigError
    // Canonical (key, value) echo, fixed order, for metadata headers.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

// Parses "key = value" lines; throws ConfigError on malformed input.
KeyValueList parse_key_values(const std::string& text);

// File keys first (side_B inherits side_A before side_B.* keys apply),
// then overrides in order. Unknown keys throw ConfigError.
ExperimentConfig build_config(const KeyValueList& file_keys,
                              const KeyValueList& overrides);

ExperimentConfig load_config(const std::string& path, const KeyValueList& overrides);

// "%.12g", NaN normalized to "nan"; fixed formatting keeps outputs
// byte-identical across runs.
std::string format_double(double x);

// '#'-prefixed lines: version, command, canonical config echo.
std::string metadata_header(const ExperimentConfig& cfg, std::string_view command);

// Header, detector comments, fixed column schema, one row per grid point.
void write_trace_csv(std::ostream& os, const ExperimentConfig& cfg,
                     std::string_view command, const ConcurrenceTrace& trace);

struct SummaryTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_summary_csv(std::ostream& os, const ExperimentConfig& cfg,
                       std::string_view command, const SummaryTable& table);

} // namespace spinchain
