#pragma once

// The four CLI experiments. Each returns its artifacts as text so callers
// decide where they go; output is deterministic for a given config.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cqed/config.hpp"

namespace cqed {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPhysics = 3;

struct Artifact {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<Artifact> artifacts;
  std::string summary;  // human-readable, for stdout

  const Artifact& artifact(const std::string& name) const;
};

// Shortest representation that parses back to the same double.
std::string format_number(double x);
// RFC 4180 field quoting.
std::string csv_field(const std::string& field);

CommandResult cmd_truth_table(const RunConfig& config);
CommandResult cmd_qft_demo(const RunConfig& config,
                           double required_ratio = kDefaultRequiredRatio);

// Axes: delta_c (every detuning ratio scaled jointly, value = Delta_c/g),
// omega_tilde, omega_ref, m.
const std::vector<std::string>& sweep_axes();
CommandResult cmd_sweep(const RunConfig& config, const std::string& axis,
                        std::span<const double> values);
// Sets Delta_c = R g, Delta' = (2R-1)/(2R+1) Delta_c, Omega_ref = Delta'/R
// so that Delta_c/g = Delta'/Omega_ref = delta/chi = R.
RunConfig scaled_config(const RunConfig& config, double ratio);

CommandResult cmd_validate(const RunConfig& config,
                           double required_ratio = kDefaultRequiredRatio);

void write_artifacts(const CommandResult& result,
                     const std::filesystem::path& dir);

}  // namespace cqed
