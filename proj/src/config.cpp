#include "spinchain/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spinchain/version.hpp"

namespace spinchain {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
    }
    if (trim(value.substr(used)).size() != 0 || !std::isfinite(x))
        throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
    return x;
}

int to_int(const std::string& key, const std::string& value) {
    const double x = to_double(key, value);
    const int n = static_cast<int>(std::lround(x));
    if (x != static_cast<double>(n))
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return n;
}

// Applies one side_X.field assignment; field is the part after the dot.
bool apply_side_key(SideConfig& side, const std::string& field,
                    const std::string& key, const std::string& value) {
    if (field == "N") side.N = to_int(key, value);
    else if (field == "J") side.J = to_double(key, value);
    else if (field == "h") side.h = to_double(key, value);
    else if (field == "h0") side.h0 = to_double(key, value);
    else if (field == "J0_x") side.J0_x = to_double(key, value);
    else if (field == "J0_y") side.J0_y = to_double(key, value);
    else if (field == "J0") side.J0_x = side.J0_y = to_double(key, value);
    else return false;
    return true;
}

void apply_global_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "initial_state") {
        cfg.initial = bell_kind_from_string(value);
    } else if (key == "time.max") {
        cfg.t_max = to_double(key, value);
    } else if (key == "time.step") {
        cfg.dt = to_double(key, value);
    } else if (key == "mode") {
        if (value == "finite") cfg.mode = RunMode::finite;
        else if (value == "thermodynamic") cfg.mode = RunMode::thermodynamic;
        else throw ConfigError("config key 'mode': expected finite or thermodynamic");
    } else if (key == "window.t1") {
        cfg.window_t1 = to_double(key, value);
    } else if (key == "window.t2") {
        cfg.window_t2 = to_double(key, value);
    } else if (key == "output") {
        cfg.output = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

// Override-only bare keys; return false if the key is not one of them.
bool apply_bare_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    static const char* both_sides[] = {"N", "J", "h", "h0", "J0", "J0_x", "J0_y"};
    for (const char* k : both_sides)
        if (key == k) {
            apply_side_key(cfg.side_A, key, key, value);
            apply_side_key(cfg.side_B, key, key, value);
            return true;
        }
    if (key == "hA") {
        cfg.side_A.h = to_double(key, value);
        return true;
    }
    if (key == "hB") {
        cfg.side_B.h = to_double(key, value);
        return true;
    }
    return false;
}

} // namespace

SubsystemSpec SideConfig::spec() const {
    return SubsystemSpec::homogeneous(N, J, h, J0_x, J0_y, h0);
}

void ExperimentConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("time.step must be > 0");
    if (!(t_max > 0.0)) throw ConfigError("time.max must be > 0");
    if (dt > t_max) throw ConfigError("time.step must not exceed time.max");
    if (!(window_t1 >= 0.0) || !(window_t1 < window_t2))
        throw ConfigError("window must satisfy 0 <= t1 < t2");
    side_A.spec().validate();
    side_B.spec().validate();
    if (mode == RunMode::thermodynamic) {
        for (const SideConfig* s : {&side_A, &side_B})
            if (s->J0_x != s->J || s->J0_y != s->J || s->h0 != s->h)
                throw ConfigError(
                    "mode=thermodynamic requires the homogeneous subsystem "
                    "J0_x = J0_y = J and h0 = h on both sides");
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    auto side = [&](const char* name, const SideConfig& s) {
        const std::string p = std::string(name) + ".";
        kv.emplace_back(p + "N", std::to_string(s.N));
        kv.emplace_back(p + "J", format_double(s.J));
        kv.emplace_back(p + "h", format_double(s.h));
        kv.emplace_back(p + "J0_x", format_double(s.J0_x));
        kv.emplace_back(p + "J0_y", format_double(s.J0_y));
        kv.emplace_back(p + "h0", format_double(s.h0));
    };
    side("side_A", side_A);
    side("side_B", side_B);
    kv.emplace_back("initial_state", std::string(to_string(initial)));
    kv.emplace_back("time.max", format_double(t_max));
    kv.emplace_back("time.step", format_double(dt));
    kv.emplace_back("mode", mode == RunMode::finite ? "finite" : "thermodynamic");
    kv.emplace_back("window.t1", format_double(window_t1));
    kv.emplace_back("window.t2", format_double(window_t2));
    if (!output.empty()) kv.emplace_back("output", output);
    return kv;
}

KeyValueList parse_key_values(const std::string& text) {
    KeyValueList kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        kv.emplace_back(key, value);
    }
    return kv;
}

ExperimentConfig build_config(const KeyValueList& file_keys,
                              const KeyValueList& overrides) {
    ExperimentConfig cfg;
    // side_A and globals first; side_B inherits side_A, then side_B keys apply
    KeyValueList side_B_keys;
    for (const auto& [key, value] : file_keys) {
        if (key.rfind("side_B.", 0) == 0) {
            side_B_keys.emplace_back(key, value);
        } else if (key.rfind("side_A.", 0) == 0) {
            if (!apply_side_key(cfg.side_A, key.substr(7), key, value))
                throw ConfigError("unknown config key '" + key + "'");
        } else {
            apply_global_key(cfg, key, value);
        }
    }
    cfg.side_B = cfg.side_A;
    for (const auto& [key, value] : side_B_keys)
        if (!apply_side_key(cfg.side_B, key.substr(7), key, value))
            throw ConfigError("unknown config key '" + key + "'");

    for (const auto& [key, value] : overrides) {
        if (key.rfind("side_A.", 0) == 0) {
            if (!apply_side_key(cfg.side_A, key.substr(7), key, value))
                throw ConfigError("unknown config key '" + key + "'");
        } else if (key.rfind("side_B.", 0) == 0) {
            if (!apply_side_key(cfg.side_B, key.substr(7), key, value))
                throw ConfigError("unknown config key '" + key + "'");
        } else if (!apply_bare_key(cfg, key, value)) {
            apply_global_key(cfg, key, value);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path, const KeyValueList& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return build_config(parse_key_values(buf.str()), overrides);
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string metadata_header(const ExperimentConfig& cfg, std::string_view command) {
    std::ostringstream os;
    os << "# spinchain " << version << "\n";
    os << "# command: " << command << "\n";
    for (const auto& [key, value] : cfg.echo())
        os << "# " << key << " = " << value << "\n";
    return os.str();
}

void write_trace_csv(std::ostream& os, const ExperimentConfig& cfg,
                     std::string_view command, const ConcurrenceTrace& trace) {
    os << metadata_header(cfg, command);
    if (trace.t_ESD) os << "# t_ESD = " << format_double(*trace.t_ESD) << "\n";
    if (trace.t_rev) os << "# t_rev = " << format_double(*trace.t_rev) << "\n";
    if (trace.avg_par) os << "# avg_C_par = " << format_double(*trace.avg_par) << "\n";
    if (trace.avg_anti) os << "# avg_C_anti = " << format_double(*trace.avg_anti) << "\n";
    os << "t,C,C_par,C_anti,rho11,rho22,rho33,rho44,"
          "rho14_re,rho14_im,rho23_re,rho23_im\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const XStateRow& r = trace.rho[k];
        os << format_double(trace.times[k]) << ',' << format_double(trace.C[k]) << ','
           << format_double(trace.C_par[k]) << ',' << format_double(trace.C_anti[k])
           << ',' << format_double(r.rho11) << ',' << format_double(r.rho22) << ','
           << format_double(r.rho33) << ',' << format_double(r.rho44) << ','
           << format_double(r.rho14.real()) << ',' << format_double(r.rho14.imag())
           << ',' << format_double(r.rho23.real()) << ','
           << format_double(r.rho23.imag()) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const ExperimentConfig& cfg,
                       std::string_view command, const SummaryTable& table) {
    os << metadata_header(cfg, command);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << table.columns[c] << (c + 1 < table.columns.size() ? ',' : '\n');
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << format_double(row[c]) << (c + 1 < row.size() ? ',' : '\n');
    }
}

} // namespace spinchain
