#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavity/config.hpp"
#include "cavity/dynamics.hpp"

namespace cavity {

struct ScenarioResult {
  Trajectory trajectory;
  std::vector<std::filesystem::path> files;
};

/// Integrates `cfg` and writes <out_dir>/<output>.csv, .meta and, when
/// requested, .svg.
[[nodiscard]] ScenarioResult run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Integrates without touching the filesystem.
[[nodiscard]] Trajectory simulate(const RunConfig& cfg);

/// Parameters shared by the figure presets: the defaults plus the
/// adjustments recorded in `note`.
[[nodiscard]] RunConfig preset_base();

/// Configurations for preset "fig1".."fig5". Throws ConfigError otherwise.
[[nodiscard]] std::vector<RunConfig> preset(const std::string& name);

struct SweepRow {
  double value = 0.0;
  double min_concurrence = 0.0;
  double max_concurrence = 0.0;
  std::optional<double> first_zero;  // see first_zero_touch
};

/// Worker count from CAVITY_SIM_THREADS, else hardware concurrency.
[[nodiscard]] unsigned sweep_threads();

[[nodiscard]] std::string sweep_summary_csv(const std::vector<SweepRow>& rows);

/// One run per value of `axis`, in parallel. Writes each run's files plus
/// <output>_sweep_<axis>.csv. The first failure stops the remaining runs; the
/// summary of completed runs is still written before the error is rethrown.
[[nodiscard]] std::vector<SweepRow> run_sweep(const RunConfig& base, const std::string& axis,
                                              const std::vector<double>& values,
                                              const std::filesystem::path& out_dir,
                                              unsigned threads = 0);

}  // namespace cavity
