#include "filament/run_config.hpp"

#include "filament/experiments.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>
#include <sstream>

namespace filament {

namespace {

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table = {
        {"transform", Command::Transform},
        {"inverse-transform", Command::InverseTransform},
        {"evolve-vfe", Command::EvolveVfe},
        {"evolve-nls", Command::EvolveNls},
        {"equivalence", Command::Equivalence},
        {"arc-stability", Command::ArcStability},
        {"plane-stability", Command::PlaneStability},
        {"conserved", Command::Conserved},
    };
    return table;
}

// Keys accepted per command; anything else is a typo and is rejected.
std::set<std::string> accepted_keys(Command command) {
    std::set<std::string> keys = {"L", "R", "N", "out"};
    switch (command) {
        case Command::Transform:
        case Command::InverseTransform:
            keys.insert({"delta", "modes"});
            break;
        case Command::EvolveVfe:
            keys.insert({"T", "dt", "fp-tol", "fp-max-iter", "delta", "modes", "samples"});
            break;
        case Command::EvolveNls:
            keys.insert({"T", "dt-nls", "delta", "modes", "samples"});
            break;
        case Command::Equivalence:
            keys.erase("N");
            keys.insert({"T", "resolutions", "delta", "modes", "samples",
                         "distance-threshold", "min-order"});
            break;
        case Command::ArcStability:
            keys.insert({"T", "deltas", "modes", "samples", "slack", "seed"});
            break;
        case Command::PlaneStability:
            keys.insert({"T", "dt-nls", "deltas", "modes", "samples", "slack", "seed"});
            break;
        case Command::Conserved:
            keys.insert({"T", "delta", "modes", "samples", "drift-threshold", "min-dt-ratio"});
            break;
    }
    return keys;
}

double parse_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(value))
        throw ConfigError("key '" + key + "': malformed number '" + text + "'");
    return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("key '" + key + "': malformed integer '" + text + "'");
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) parts.push_back(token);
    }
    return parts;
}

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

const char* command_name(Command command) {
    for (const auto& [name, cmd] : command_table())
        if (cmd == command) return name.c_str();
    return "?";
}

Command parse_command(const std::string& name) {
    const auto& table = command_table();
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown command '" + name + "'");
    return it->second;
}

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_number) +
                              ": expected key=value, got '" + line + "'");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_number) + ": empty key");
        entries[key] = value;
    }
    return entries;
}

RunConfig parse_config(Command command, const std::map<std::string, std::string>& file_entries,
                       const std::map<std::string, std::string>& flag_entries) {
    const std::set<std::string> keys = accepted_keys(command);
    std::map<std::string, std::string> merged;
    for (const auto* source : {&file_entries, &flag_entries})
        for (const auto& [key, value] : *source) {
            if (!keys.count(key)) throw ConfigError("unknown key '" + key + "'");
            merged[key] = value;
        }

    RunConfig cfg;
    cfg.command = command;
    cfg.L = std::numbers::pi;
    cfg.R = 2.0;
    cfg.N = 256;
    cfg.delta = 0.01;
    cfg.deltas = {1e-3, 1e-2, 1e-1};
    cfg.modes = {1};
    cfg.resolutions = {128, 256, 512};
    switch (command) {
        case Command::Equivalence:
            cfg.T = 0.5;
            cfg.samples = 50;
            break;
        case Command::ArcStability:
        case Command::PlaneStability:
            cfg.T = 10.0;
            break;
        default:
            cfg.T = 1.0;
            break;
    }
    if (const char* env = std::getenv("FILAMENT_OUT_DIR"))
        cfg.out_dir = env;
    else
        cfg.out_dir = "out";

    const auto lookup = [&](const char* key) -> const std::string* {
        const auto it = merged.find(key);
        return it == merged.end() ? nullptr : &it->second;
    };
    const auto positive = [](const char* key, double value) {
        if (!(value > 0.0))
            throw ConfigError(std::string("key '") + key + "': must be positive");
        return value;
    };

    if (const auto* s = lookup("L")) cfg.L = positive("L", parse_double("L", *s));
    if (const auto* s = lookup("R")) cfg.R = positive("R", parse_double("R", *s));
    if (const auto* s = lookup("N")) {
        cfg.N = static_cast<int>(parse_integer("N", *s));
        if (cfg.N < 8) throw ConfigError("key 'N': need at least 8 cells");
    }
    if (const auto* s = lookup("T")) cfg.T = positive("T", parse_double("T", *s));
    if (const auto* s = lookup("dt")) cfg.dt = positive("dt", parse_double("dt", *s));
    if (const auto* s = lookup("dt-nls"))
        cfg.dt_nls = positive("dt-nls", parse_double("dt-nls", *s));
    if (const auto* s = lookup("fp-tol"))
        cfg.fp_tol = positive("fp-tol", parse_double("fp-tol", *s));
    if (const auto* s = lookup("fp-max-iter")) {
        cfg.fp_max_iter = static_cast<int>(parse_integer("fp-max-iter", *s));
        if (cfg.fp_max_iter < 1) throw ConfigError("key 'fp-max-iter': must be >= 1");
    }
    if (const auto* s = lookup("delta")) {
        cfg.delta = parse_double("delta", *s);
        if (cfg.delta < 0.0) throw ConfigError("key 'delta': must be >= 0");
    }
    if (const auto* s = lookup("deltas")) {
        cfg.deltas.clear();
        for (const std::string& token : split_list(*s)) {
            const double d = parse_double("deltas", token);
            if (d < 0.0) throw ConfigError("key 'deltas': entries must be >= 0");
            cfg.deltas.push_back(d);
        }
        if (cfg.deltas.empty()) throw ConfigError("key 'deltas': empty list");
        std::sort(cfg.deltas.begin(), cfg.deltas.end());
    }
    if (const auto* s = lookup("modes")) {
        cfg.modes.clear();
        for (const std::string& token : split_list(*s)) {
            const int k = static_cast<int>(parse_integer("modes", token));
            if (k < 1) throw ConfigError("key 'modes': mode indices must be >= 1");
            cfg.modes.push_back(k);
        }
        if (cfg.modes.empty()) throw ConfigError("key 'modes': empty list");
    }
    if (const auto* s = lookup("resolutions")) {
        cfg.resolutions.clear();
        for (const std::string& token : split_list(*s)) {
            const int n = static_cast<int>(parse_integer("resolutions", token));
            if (n < 8) throw ConfigError("key 'resolutions': need at least 8 cells");
            cfg.resolutions.push_back(n);
        }
        if (cfg.resolutions.empty()) throw ConfigError("key 'resolutions': empty list");
        std::sort(cfg.resolutions.begin(), cfg.resolutions.end());
    }
    if (const auto* s = lookup("samples")) {
        cfg.samples = static_cast<int>(parse_integer("samples", *s));
        if (cfg.samples < 1) throw ConfigError("key 'samples': must be >= 1");
    }
    if (const auto* s = lookup("seed"))
        cfg.seed = static_cast<std::uint64_t>(parse_integer("seed", *s));
    if (const auto* s = lookup("slack")) {
        cfg.slack = parse_double("slack", *s);
        if (cfg.slack < 1.0) throw ConfigError("key 'slack': must be >= 1");
    }
    if (const auto* s = lookup("distance-threshold"))
        cfg.distance_threshold = positive("distance-threshold", parse_double("distance-threshold", *s));
    if (const auto* s = lookup("min-order"))
        cfg.min_order = positive("min-order", parse_double("min-order", *s));
    if (const auto* s = lookup("drift-threshold"))
        cfg.drift_threshold = positive("drift-threshold", parse_double("drift-threshold", *s));
    if (const auto* s = lookup("min-dt-ratio"))
        cfg.min_dt_ratio = positive("min-dt-ratio", parse_double("min-dt-ratio", *s));
    if (const auto* s = lookup("out")) cfg.out_dir = *s;

    // Solver steps default to the dispersive scalings when not pinned.
    const double ds = cfg.L / cfg.N;
    if (cfg.dt == 0.0) cfg.dt = 0.25 * ds * ds;
    if (cfg.dt_nls == 0.0) {
        const double ratio = cfg.L / std::numbers::pi;
        cfg.dt_nls = 1e-3 * ratio * ratio;
    }

    if (command == Command::ArcStability || command == Command::PlaneStability) {
        const double c0 = 1.0 - (cfg.L * cfg.L) / (cfg.R * cfg.R * std::numbers::pi * std::numbers::pi);
        if (c0 <= 0.0)
            throw GateRejection("key 'R': stability gate refused, c0 = " + format_value(c0) +
                                " <= 0 (need R > L/pi)");
    }
    return cfg;
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> out;
    out["command"] = command_name(command);
    out["L"] = format_value(L);
    out["R"] = format_value(R);
    out["out"] = out_dir;
    const auto join_doubles = [](const std::vector<double>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ',';
            s += format_value(xs[i]);
        }
        return s;
    };
    const auto join_ints = [](const std::vector<int>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(xs[i]);
        }
        return s;
    };
    switch (command) {
        case Command::Transform:
        case Command::InverseTransform:
            out["N"] = std::to_string(N);
            out["delta"] = format_value(delta);
            out["modes"] = join_ints(modes);
            break;
        case Command::EvolveVfe:
            out["N"] = std::to_string(N);
            out["T"] = format_value(T);
            out["dt"] = format_value(dt);
            out["fp-tol"] = format_value(fp_tol);
            out["fp-max-iter"] = std::to_string(fp_max_iter);
            out["delta"] = format_value(delta);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            break;
        case Command::EvolveNls:
            out["N"] = std::to_string(N);
            out["T"] = format_value(T);
            out["dt-nls"] = format_value(dt_nls);
            out["delta"] = format_value(delta);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            break;
        case Command::Equivalence:
            out["T"] = format_value(T);
            out["resolutions"] = join_ints(resolutions);
            out["delta"] = format_value(delta);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            out["distance-threshold"] = format_value(distance_threshold);
            out["min-order"] = format_value(min_order);
            break;
        case Command::ArcStability:
            out["N"] = std::to_string(N);
            out["T"] = format_value(T);
            out["deltas"] = join_doubles(deltas);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            out["slack"] = format_value(slack);
            out["seed"] = std::to_string(seed);
            break;
        case Command::PlaneStability:
            out["N"] = std::to_string(N);
            out["T"] = format_value(T);
            out["dt-nls"] = format_value(dt_nls);
            out["deltas"] = join_doubles(deltas);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            out["slack"] = format_value(slack);
            out["seed"] = std::to_string(seed);
            break;
        case Command::Conserved:
            out["N"] = std::to_string(N);
            out["T"] = format_value(T);
            out["delta"] = format_value(delta);
            out["modes"] = join_ints(modes);
            out["samples"] = std::to_string(samples);
            out["drift-threshold"] = format_value(drift_threshold);
            out["min-dt-ratio"] = format_value(min_dt_ratio);
            break;
    }
    return out;
}

} // namespace filament
