#pragma once

#include "filament/experiments.hpp"
#include "filament/report.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace filament {

using ConfigEcho = std::map<std::string, std::string>;

/// JSON report persistence. Numbers round-trip exactly; load(save(x)) == x.
void save_report(const ExperimentReport& report, const std::filesystem::path& path,
                 const ConfigEcho& echo = {});
ExperimentReport load_report(const std::filesystem::path& path);

/// CSV trajectory persistence: '#' header lines carry the grid, the config
/// echo and the file kind; one row per sampled time, 17 significant digits.
void save_trajectory(const VfeTrajectory& trajectory, const std::filesystem::path& path,
                     const ConfigEcho& echo = {});
void save_trajectory(const NlsTrajectory& trajectory, const std::filesystem::path& path,
                     const ConfigEcho& echo = {});
VfeTrajectory load_vfe_trajectory(const std::filesystem::path& path);
NlsTrajectory load_nls_trajectory(const std::filesystem::path& path);

/// One plot-ready CSV per report series, plus fitted-constant and
/// convergence-order tables and a column-layout README stub. Returns the
/// written paths; writes nothing for a report without series.
std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& report,
                                                  const std::filesystem::path& directory,
                                                  const ConfigEcho& echo = {});

} // namespace filament
