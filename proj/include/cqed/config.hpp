#pragma once

// Run configuration (JSON).
//
// Frequencies are either dimensionless in units of g ("frequency_unit": "g",
// coupling.g must then be 1) or cyclic frequencies in Hz ("hz", where
// coupling.g sets the scale). Files mixing the two are rejected. Phases are
// always radians.

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/protocol.hpp"
#include "cqed/validate.hpp"

namespace cqed {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string frequency_unit = "g";
  Family family = Family::phase;
  std::array<double, 4> energies{0.0, 100.0, 140.0, 165.0};

  double g = 1.0;
  double delta_c = 10.0;
  double delta_prime = 9.0;
  double omega_tilde = 10.0;
  double omega_ref = 0.9;

  int n_targets = 1;
  bool qft = false;
  std::vector<double> theta;  // used when qft is false
  std::optional<int> m;

  // Decoherence references for the timing budget.
  std::optional<double> g_over_2pi_hz;  // g-unit files only
  std::optional<double> gamma2_inv_s;
  std::optional<double> quality_factor;
  std::optional<double> nu_c_hz;

  Mode mode = Mode::effective;
  int fock_cutoff = 2;
  // Error target for RK4 integrations (TdOptions::tolerance). The gate
  // protocol is piecewise constant and never integrates with RK4, so the
  // commands carry this value without consuming it.
  double tolerance = 1e-8;
  std::string out_dir = "out";

  // Copy with every frequency expressed in units of g.
  RunConfig in_g_units() const;
  // g/2pi in Hz if the file determines it.
  std::optional<double> g_hz() const;

  GateSpec gate() const;
  ScheduleOptions schedule_options() const;
  // Schedule in units of g.
  ScheduleParams schedule() const;
  ProtocolOptions protocol_options() const;
};

// Throws ConfigError with the line (syntax) or field path (content).
RunConfig parse_config(const std::string& text,
                       const std::string& source = "<config>");
// Six systems, QFT layer, Delta_c = 10g, Delta' = 9g, Omega_ref = 0.9g,
// Omega~ = 10g, g/2pi = 220 MHz, gamma2^-1 = 1 us, Q = 1e5, nu_c = 3 GHz.
RunConfig qft_reference_config();
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

}  // namespace cqed
