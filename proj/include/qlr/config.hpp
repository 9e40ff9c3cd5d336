#pragma once

#include "qlr/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qlr::cli {

/// Configuration problems map to exit code 2; NumericalError to 3.
struct ConfigError : Error {
  using Error::Error;
};

struct SweepResult {
  std::vector<std::string> header_lines;  // emitted with a leading '# '
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunOptions {
  int jobs = 1;
  std::optional<double> epsilon;  // overrides the config / default
  bool timestamp = false;
};

nlohmann::json load_config_file(const std::string& path);

/// Executes one of: chi-time, chi-freq, mhr, gap-scaling, spectrum,
/// correlations, power. The config is fully validated (unknown keys are
/// errors) before any computation starts.
SweepResult run_subcommand(const std::string& name,
                           const nlohmann::json& config,
                           const RunOptions& opts);

/// CSV body with 17-significant-digit numbers; byte-identical for identical
/// configs.
std::string to_csv(const SweepResult& result);

void write_csv_file(const SweepResult& result, const std::string& path);

}  // namespace qlr::cli
