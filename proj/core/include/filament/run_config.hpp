#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace filament {

enum class Command {
    Transform,
    InverseTransform,
    EvolveVfe,
    EvolveNls,
    Equivalence,
    ArcStability,
    PlaneStability,
    Conserved,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved run parameters: defaults filled, lists normalized, every
/// numeric value validated. Unknown keys are rejected at parse time.
struct RunConfig {
    Command command = Command::EvolveNls;

    double L = 0.0;
    double R = 0.0;
    int N = 0;
    double T = 0.0;
    double dt = 0.0;       // filament-side time step
    double dt_nls = 0.0;   // wave-side time step
    double fp_tol = 1e-12;
    int fp_max_iter = 100;
    double delta = 0.0;
    std::vector<double> deltas;
    std::vector<int> modes;
    std::vector<int> resolutions;
    int samples = 100;
    std::uint64_t seed = 1;
    double slack = 3.0;
    double distance_threshold = 1e-3;
    double min_order = 1.9;
    double drift_threshold = 1e-4;
    double min_dt_ratio = 3.0;
    std::string out_dir;

    /// Resolved key=value view (sorted by key), embedded in every artifact.
    std::map<std::string, std::string> echo() const;
};

const char* command_name(Command command);
/// Parses a subcommand name; throws ConfigError for unknown commands.
Command parse_command(const std::string& name);

/// Flat key=value config text: one entry per line, '#' comments, blank lines
/// ignored. Later duplicates override earlier ones.
std::map<std::string, std::string> parse_key_value_text(const std::string& text);

/// Builds a validated RunConfig for `command` from file entries and flag
/// entries; flags take precedence over the file, the file over defaults.
/// Rejects unknown keys and malformed numbers (ConfigError) and, for the
/// stability commands, configurations with R <= L/pi (GateRejection).
RunConfig parse_config(Command command, const std::map<std::string, std::string>& file_entries,
                       const std::map<std::string, std::string>& flag_entries);

} // namespace filament
