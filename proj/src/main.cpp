// Experiment runner: concurrence dynamics of two qubits, each coupled to its
// own open XX chain, as deterministic CSV files. See README for the config
// format and command reference.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "spinchain/analytic.hpp"
#include "spinchain/config.hpp"
#include "spinchain/ed.hpp"
#include "spinchain/parallel.hpp"
#include "spinchain/version.hpp"

namespace {

using namespace spinchain;

void warn_horizon(const ExperimentConfig& cfg) {
    if (cfg.mode != RunMode::finite) return;
    const int n = std::min(cfg.side_A.N, cfg.side_B.N);
    if (cfg.t_max > n)
        std::cerr << "warning: time.max = " << format_double(cfg.t_max)
                  << " exceeds the finite-size horizon t ~ N = " << n
                  << "; boundary reflections contaminate late times\n";
}

std::function<ChannelTensor(double)> thermo_factory(const SideConfig& side,
                                                    double t_max) {
    const int n_sites = zeta_truncation(side.J * t_max) + 2;
    auto corr = std::make_shared<const GroundStateCorrelators>(
        semi_infinite_correlators(n_sites, side.J, side.h));
    const double J = side.J, h = side.h;
    return [corr, J, h](double t) { return thermo_channel(t, J, h, *corr); };
}

ConcurrenceTrace compute_trace(const ExperimentConfig& cfg) {
    const std::vector<double> grid = time_grid(cfg.t_max, cfg.dt);
    if (cfg.mode == RunMode::finite)
        return concurrence_trace(cfg.side_A.spec(), cfg.side_B.spec(), cfg.initial,
                                 grid);
    return trace_from_channels(thermo_factory(cfg.side_A, cfg.t_max),
                               thermo_factory(cfg.side_B, cfg.t_max), cfg.initial,
                               grid);
}

// Fills the trace averages when the configured window fits the grid.
void maybe_average(const ExperimentConfig& cfg, ConcurrenceTrace& tr) {
    if (cfg.window_t2 <= cfg.t_max + 1e-9) time_averaged(tr, cfg.window_t1, cfg.window_t2);
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    writer(os);
    os.flush();
    if (!os) throw ConfigError("failed while writing '" + path + "'");
    std::cout << "wrote " << path << "\n";
}

std::string output_or(const ExperimentConfig& cfg, const std::string& fallback) {
    return cfg.output.empty() ? fallback : cfg.output;
}

std::string stem_of(const ExperimentConfig& cfg, const std::string& fallback) {
    std::string stem = output_or(cfg, fallback);
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
        stem.erase(stem.size() - 4);
    return stem;
}

double opt_val(const std::optional<double>& v) {
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

std::string none_or(const std::optional<double>& v) {
    return v ? format_double(*v) : "none";
}

std::vector<std::string> split_values(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw ConfigError("sweep/figure values: empty entry in '" + list + "'");
        out.push_back(item.substr(a, b - a + 1));
    }
    if (out.empty()) throw ConfigError("sweep/figure values: empty list");
    return out;
}

double numeric(const std::string& s) {
    std::size_t used = 0;
    double x = std::numeric_limits<double>::quiet_NaN();
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("expected a number, got '" + s + "'");
    return x;
}

// ---------------------------------------------------------------- commands

void cmd_trace(const ExperimentConfig& cfg) {
    warn_horizon(cfg);
    ConcurrenceTrace tr = compute_trace(cfg);
    maybe_average(cfg, tr);
    write_file(output_or(cfg, "trace.csv"),
               [&](std::ostream& os) { write_trace_csv(os, cfg, "trace", tr); });
    if (tr.t_ESD) std::cout << "t_ESD = " << format_double(*tr.t_ESD) << "\n";
    if (tr.t_rev) std::cout << "t_rev = " << format_double(*tr.t_rev) << "\n";
    if (tr.avg_par) std::cout << "avg_C_par = " << format_double(*tr.avg_par) << "\n";
    if (tr.avg_anti) std::cout << "avg_C_anti = " << format_double(*tr.avg_anti) << "\n";
}

void cmd_esd(const ExperimentConfig& cfg) {
    warn_horizon(cfg);
    const ConcurrenceTrace tr = compute_trace(cfg);
    std::cout << "t_ESD = " << none_or(tr.t_ESD) << "\n";
    SummaryTable table{{"t_ESD"}, {{opt_val(tr.t_ESD)}}};
    write_file(output_or(cfg, "esd.csv"),
               [&](std::ostream& os) { write_summary_csv(os, cfg, "esd", table); });
}

void cmd_revival(const ExperimentConfig& cfg) {
    warn_horizon(cfg);
    const ConcurrenceTrace tr = compute_trace(cfg);
    std::cout << "t_ESD = " << none_or(tr.t_ESD) << "\n";
    std::cout << "t_rev = " << none_or(tr.t_rev) << "\n";
    SummaryTable table{{"t_ESD", "t_rev"}, {{opt_val(tr.t_ESD), opt_val(tr.t_rev)}}};
    write_file(output_or(cfg, "revival.csv"),
               [&](std::ostream& os) { write_summary_csv(os, cfg, "revival", table); });
}

void cmd_average(const ExperimentConfig& cfg) {
    warn_horizon(cfg);
    ConcurrenceTrace tr = compute_trace(cfg);
    const auto [par, anti] = time_averaged(tr, cfg.window_t1, cfg.window_t2);
    std::cout << "avg_C_par = " << format_double(par) << "\n";
    std::cout << "avg_C_anti = " << format_double(anti) << "\n";
    SummaryTable table{{"window_t1", "window_t2", "avg_C_par", "avg_C_anti"},
                       {{cfg.window_t1, cfg.window_t2, par, anti}}};
    write_file(output_or(cfg, "average.csv"),
               [&](std::ostream& os) { write_summary_csv(os, cfg, "average", table); });
}

void cmd_sweep(const KeyValueList& file_kv, const KeyValueList& overrides,
               const ExperimentConfig& base, const std::string& param,
               const std::string& values_list) {
    const std::vector<std::string> values = split_values(values_list);
    std::vector<ExperimentConfig> configs;
    for (const std::string& v : values) {
        KeyValueList kv = overrides;
        kv.emplace_back(param, v);
        configs.push_back(build_config(file_kv, kv));
        warn_horizon(configs.back());
    }

    std::vector<ConcurrenceTrace> traces(values.size());
    parallel_for(values.size(), [&](std::size_t k) {
        traces[k] = compute_trace(configs[k]);
        maybe_average(configs[k], traces[k]);
    });

    SummaryTable table;
    table.columns = {param, "t_ESD", "t_rev", "avg_C_par", "avg_C_anti"};
    for (std::size_t k = 0; k < values.size(); ++k) {
        const ConcurrenceTrace& tr = traces[k];
        table.rows.push_back({numeric(values[k]), opt_val(tr.t_ESD), opt_val(tr.t_rev),
                              opt_val(tr.avg_par), opt_val(tr.avg_anti)});
        std::cout << param << " = " << values[k] << ": t_ESD = " << none_or(tr.t_ESD)
                  << ", t_rev = " << none_or(tr.t_rev)
                  << ", avg_C_par = " << none_or(tr.avg_par)
                  << ", avg_C_anti = " << none_or(tr.avg_anti) << "\n";
    }
    write_file(output_or(base, "sweep.csv"),
               [&](std::ostream& os) { write_summary_csv(os, base, "sweep", table); });
}

struct FigurePlan {
    // label column name, values, extra forced keys applied to every variant
    std::string param;
    std::vector<std::string> values;
    KeyValueList forced;
    bool traces = false;      // one trace CSV per value (else one summary CSV)
    bool dual_input = false;  // summaries evaluate psi+ (C_a) and phi+ (C_p)
    bool switching = false;   // evolve through the conserved-sigma^x pipeline
    std::vector<std::string> plot_columns;  // trace columns the plot script draws
    bool log_axes = false;
};

FigurePlan figure_plan(const std::string& id, const ExperimentConfig& base) {
    FigurePlan plan;
    if (id == "2") {
        plan.param = "J0";
        plan.values = {"0.5", "0.4", "0.2", "0.125"};
        plan.forced = {{"h", "0"}, {"h0", "0"}};
        plan.traces = true;
        plan.plot_columns = {"C"};
    } else if (id == "3a") {
        plan.param = "J0";
        plan.values = {"0.125", "0.2", "0.4", "0.5", "1", "3.5", "4", "4.5", "5"};
        plan.forced = {{"h", "0"}, {"h0", "0"}};
        plan.log_axes = true;
    } else if (id == "3b") {
        plan.param = "J0";
        plan.values = {"3.5", "4", "4.5", "5"};
        plan.forced = {{"h", "0"}, {"h0", "0"}};
    } else if (id == "4a" || id == "4b") {
        plan.param = "h0";
        plan.values = {"0.8", "0.9", "1", "1.1", "1.2", "1.5", "2"};
        plan.forced = {{"h", "0"}};
        plan.traces = (id == "4a");
        plan.dual_input = (id == "4b");
        if (plan.traces) plan.forced.emplace_back("initial_state", "psi+");
        plan.plot_columns = {"C_anti"};
    } else if (id == "5a" || id == "5b") {
        plan.param = "h";
        plan.values = {"0.8", "0.9", "1", "1.1", "1.5", "2", "5"};
        plan.forced = {{"h0", "0"}};
        plan.traces = (id == "5a");
        plan.dual_input = (id == "5b");
        if (plan.traces) plan.forced.emplace_back("initial_state", "psi+");
        plan.plot_columns = {"C_anti"};
    } else if (id == "6") {
        plan.param = "hA";
        plan.values = {"1", "2", "10"};
        plan.forced = {{"J0_x", format_double(base.side_A.J)},
                       {"J0_y", "0"},
                       {"h0", "0"},
                       {"hB", "0"}};
        plan.traces = true;
        plan.switching = true;
        plan.plot_columns = {"C_par", "C_anti"};
    } else {
        throw ConfigError("unknown figure id '" + id + "'");
    }
    return plan;
}

void emit_plot_script(const std::string& stem, const FigurePlan& plan,
                      const std::vector<std::string>& csv_files) {
    write_file(stem + ".py", [&](std::ostream& os) {
        os << "#!/usr/bin/env python3\n"
           << "# Companion plot script generated by spinchain " << version << ".\n"
           << "import io\n"
           << "import numpy as np\n"
           << "import matplotlib\n"
           << "matplotlib.use(\"Agg\")\n"
           << "import matplotlib.pyplot as plt\n\n"
           << "def load(path):\n"
           << "    with open(path) as fh:\n"
           << "        body = \"\".join(l for l in fh if not l.startswith(\"#\"))\n"
           << "    return np.genfromtxt(io.StringIO(body), delimiter=\",\", names=True)\n\n"
           << "files = [\n";
        for (std::size_t k = 0; k < csv_files.size(); ++k)
            os << "    (\"" << csv_files[k] << "\", \"" << plan.param << " = "
               << plan.values[k] << "\"),\n";
        os << "]\n\n"
           << "fig, ax = plt.subplots(figsize=(6, 4))\n";
        if (plan.traces) {
            os << "columns = [";
            for (std::size_t c = 0; c < plan.plot_columns.size(); ++c)
                os << (c ? ", " : "") << "\"" << plan.plot_columns[c] << "\"";
            os << "]\n"
               << "for path, label in files:\n"
               << "    d = load(path)\n"
               << "    for col in columns:\n"
               << "        suffix = \" [\" + col + \"]\" if len(columns) > 1 else \"\"\n"
               << "        ax.plot(d[\"t\"], d[col], label=label + suffix)\n"
               << "ax.set_xlabel(\"t\")\n"
               << "ax.set_ylabel(\"concurrence\")\n";
        } else {
            os << "path, _ = files[0]\n"
               << "d = load(path)\n"
               << "x = d.dtype.names[0]\n"
               << "for col in d.dtype.names[1:]:\n"
               << "    ax.plot(np.atleast_1d(d[x]), np.atleast_1d(d[col]), marker=\"o\", label=col)\n"
               << "ax.set_xlabel(x)\n";
            if (plan.log_axes) os << "ax.set_xscale(\"log\")\nax.set_yscale(\"log\")\n";
        }
        os << "ax.legend()\n"
           << "fig.tight_layout()\n"
           << "fig.savefig(\"" << stem << ".png\", dpi=160)\n";
    });
}

void cmd_figure(const KeyValueList& file_kv, const KeyValueList& overrides,
                const ExperimentConfig& base, const std::string& id,
                bool plot_script) {
    const FigurePlan plan = figure_plan(id, base);
    const std::string stem = stem_of(base, "figure_" + id);

    std::vector<ExperimentConfig> configs;
    std::vector<ExperimentConfig> configs_phi;  // dual-input partner (phi+)
    for (const std::string& v : plan.values) {
        KeyValueList kv = overrides;
        for (const auto& f : plan.forced) kv.push_back(f);
        kv.emplace_back(plan.param, v);
        if (plan.dual_input) {
            KeyValueList kv_a = kv, kv_p = kv;
            kv_a.emplace_back("initial_state", "psi+");
            kv_p.emplace_back("initial_state", "phi+");
            configs.push_back(build_config(file_kv, kv_a));
            configs_phi.push_back(build_config(file_kv, kv_p));
        } else {
            configs.push_back(build_config(file_kv, kv));
        }
        warn_horizon(configs.back());
    }

    const std::size_t n = plan.values.size();
    std::vector<ConcurrenceTrace> traces(n), traces_phi(plan.dual_input ? n : 0);
    parallel_for(n, [&](std::size_t k) {
        const ExperimentConfig& cfg = configs[k];
        if (plan.switching) {
            traces[k] = switching_trace(cfg.side_A.spec(), cfg.side_B.spec(),
                                        cfg.initial, time_grid(cfg.t_max, cfg.dt));
        } else {
            traces[k] = compute_trace(cfg);
        }
        maybe_average(cfg, traces[k]);
        if (plan.dual_input) {
            traces_phi[k] = compute_trace(configs_phi[k]);
            maybe_average(configs_phi[k], traces_phi[k]);
        }
    });

    std::vector<std::string> csv_files;
    if (plan.traces) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::string path =
                stem + "_" + plan.param + "-" + plan.values[k] + ".csv";
            csv_files.push_back(path);
            write_file(path, [&](std::ostream& os) {
                write_trace_csv(os, configs[k], "figure " + id, traces[k]);
            });
        }
    } else {
        SummaryTable table;
        if (plan.dual_input) {
            table.columns = {plan.param, "avg_C_a", "avg_C_p", "difference"};
            for (std::size_t k = 0; k < n; ++k) {
                const double ca = opt_val(traces[k].avg_anti);
                const double cp = opt_val(traces_phi[k].avg_par);
                table.rows.push_back({numeric(plan.values[k]), ca, cp, ca - cp});
            }
        } else {
            table.columns = {plan.param, "t_ESD", "t_rev", "pi_over_J0"};
            for (std::size_t k = 0; k < n; ++k) {
                const double j0 = numeric(plan.values[k]);
                table.rows.push_back({j0, opt_val(traces[k].t_ESD),
                                      opt_val(traces[k].t_rev), M_PI / j0});
            }
        }
        const std::string path = stem + ".csv";
        csv_files.push_back(path);
        write_file(path, [&](std::ostream& os) {
            write_summary_csv(os, base, "figure " + id, table);
        });
    }
    if (plot_script) emit_plot_script(stem, plan, csv_files);
}

void cmd_verify(const KeyValueList& file_kv, const KeyValueList& overrides,
                int oracle_N) {
    KeyValueList kv = overrides;
    kv.emplace_back("N", std::to_string(oracle_N));
    const ExperimentConfig cfg = build_config(file_kv, kv);
    if (cfg.mode != RunMode::finite)
        throw ConfigError("verify compares the finite pipeline, use mode = finite");

    const std::vector<double> grid =
        time_grid(std::min(cfg.t_max, 3.0), std::max(cfg.dt, 0.01));
    const SubsystemSpec spec_A = cfg.side_A.spec(), spec_B = cfg.side_B.spec();

    std::ostringstream rows;
    double worst = 0.0;
    for (const BellKind kind : {BellKind::phi_plus, BellKind::phi_minus,
                                BellKind::psi_plus, BellKind::psi_minus}) {
        const ConcurrenceTrace fast = concurrence_trace(spec_A, spec_B, kind, grid);
        const ConcurrenceTrace slow = oracle_concurrence_trace(spec_A, spec_B, kind, grid);
        double d = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            d = std::max(d, std::abs(fast.C[k] - slow.C[k]));
        worst = std::max(worst, d);
        rows << to_string(kind) << ',' << format_double(d) << '\n';
        std::cout << "initial " << to_string(kind)
                  << ": max |dC| = " << format_double(d) << "\n";
    }
    write_file(output_or(cfg, "verify.csv"), [&](std::ostream& os) {
        os << metadata_header(cfg, "verify");
        os << "initial,max_abs_dC\n" << rows.str();
    });
    std::cout << "verify: max |dC| = " << format_double(worst) << " over "
              << grid.size() << " grid points, 4 Bell inputs\n";
    if (worst > 1e-8)
        throw NumericalError("verify: pipeline deviates from the oracle by " +
                             format_double(worst));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of two qubits locally coupled to open XX chains"};
    // the default -h help short name would swallow the --h field override
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version", std::string("spinchain ") + version);
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "config file (flat key = value lines)");

    // raw override strings; numeric validation happens in the config builder
    std::vector<std::pair<std::string, std::optional<std::string>>> flag_keys = {
        {"N", std::nullopt},      {"J", std::nullopt},    {"h", std::nullopt},
        {"J0", std::nullopt},     {"J0_x", std::nullopt}, {"J0_y", std::nullopt},
        {"h0", std::nullopt},     {"hA", std::nullopt},   {"hB", std::nullopt},
        {"initial_state", std::nullopt}, {"time.max", std::nullopt},
        {"time.step", std::nullopt},     {"mode", std::nullopt},
        {"window.t1", std::nullopt},     {"window.t2", std::nullopt},
        {"output", std::nullopt},
    };
    const std::vector<std::pair<std::string, std::string>> flag_spec = {
        {"N", "--N"},           {"J", "--J"},         {"h", "--h"},
        {"J0", "--J0"},         {"J0_x", "--J0x"},    {"J0_y", "--J0y"},
        {"h0", "--h0"},         {"hA", "--hA"},       {"hB", "--hB"},
        {"initial_state", "--initial"}, {"time.max", "--tmax"},
        {"time.step", "--dt"},          {"mode", "--mode"},
        {"window.t1", "--window-start"}, {"window.t2", "--window-end"},
        {"output", "--output"},
    };
    for (std::size_t k = 0; k < flag_spec.size(); ++k)
        app.add_option(flag_spec[k].second,
                       [&flag_keys, k](const std::vector<std::string>& vals) {
                           flag_keys[k].second = vals.back();
                           return true;
                       },
                       "overrides config key " + flag_spec[k].first);

    CLI::App* sub_trace = app.add_subcommand("trace", "time series CSV");
    CLI::App* sub_esd = app.add_subcommand("esd", "first sustained zero of C(t)");
    CLI::App* sub_revival = app.add_subcommand("revival", "first concurrence revival");
    CLI::App* sub_average =
        app.add_subcommand("average", "windowed averages of C_par and C_anti");

    CLI::App* sub_sweep =
        app.add_subcommand("sweep", "one summary row per parameter value");
    std::string sweep_param, sweep_values;
    sub_sweep->add_option("--param", sweep_param, "config key to sweep")->required();
    sub_sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI::App* sub_figure =
        app.add_subcommand("figure", "parameter set of one published figure");
    std::string figure_id;
    sub_figure->add_option("id", figure_id, "2|3a|3b|4a|4b|5a|5b|6")
        ->required()
        ->check(CLI::IsMember({"2", "3a", "3b", "4a", "4b", "5a", "5b", "6"}));
    bool plot_script = false;
    sub_figure->add_flag("--plot-script", plot_script,
                         "emit a companion matplotlib script");

    CLI::App* sub_verify =
        app.add_subcommand("verify", "pipeline vs exact-diagonalization report");
    int oracle_N = 6;
    sub_verify->add_option("--N", oracle_N, "chain length per side (N+1 <= 13 sites)");

    // shared options may follow the subcommand name
    for (CLI::App* sub : {sub_trace, sub_esd, sub_revival, sub_average, sub_sweep,
                          sub_figure, sub_verify})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        KeyValueList file_kv;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            file_kv = parse_key_values(buf.str());
        }
        KeyValueList overrides;
        for (const auto& [key, value] : flag_keys)
            if (value) overrides.emplace_back(key, *value);

        const ExperimentConfig cfg = build_config(file_kv, overrides);

        if (sub_trace->parsed()) cmd_trace(cfg);
        else if (sub_esd->parsed()) cmd_esd(cfg);
        else if (sub_revival->parsed()) cmd_revival(cfg);
        else if (sub_average->parsed()) cmd_average(cfg);
        else if (sub_sweep->parsed()) cmd_sweep(file_kv, overrides, cfg, sweep_param, sweep_values);
        else if (sub_figure->parsed()) cmd_figure(file_kv, overrides, cfg, figure_id, plot_script);
        else if (sub_verify->parsed()) cmd_verify(file_kv, overrides, oracle_N);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const SizeCapError& e) {
        std::cerr << "size cap: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
