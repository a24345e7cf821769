#pragma once

// The six-step multi-target phase gate: one control (site 0) and n targets
// (sites 1..n) sharing one cavity mode.
//
//   (i)   Raman pulse on the control, |1>|0>_c -> |2>|1>_c        t1
//   (ii)  resonant pi pulses: control |2> -> |1>, targets |1> -> |2>   t2
//   (iii) off-resonant target drives, photon-conditional phase       t3
//   (iv)  wait, cancelling the photon Stark phase                    t4
//   (v)   step (ii) reversed                                         t2
//   (vi)  step (i) repeated                                          t1
//
// Effective mode exponentiates the adiabatically eliminated Hamiltonians.
// Full mode evolves the rotating-frame Hamiltonian of each step with the
// cavity coupling always on; the result is expressed in the interaction
// picture with respect to the bare energies.

#include <optional>
#include <string>
#include <vector>

#include "cqed/gates_metrics.hpp"
#include "cqed/hamiltonian.hpp"
#include "cqed/propagate.hpp"

namespace cqed {

enum class Mode { effective, full };
std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct ScheduleOptions {
  std::optional<int> m;         // override of the smallest feasible m
  std::optional<double> t3_cap; // reject schedules with t3 above this
};

struct ScheduleParams {
  double g = 1.0;
  double delta_c = 0.0;
  double delta_prime = 0.0;
  double delta = 0.0;          // Delta_c - Delta'
  double control_rabi = 0.0;   // fixed to g
  double omega_tilde = 0.0;
  double omega_ref = 0.0;
  std::vector<double> omega_k;
  std::vector<double> chi;
  int anchor = 0;              // target index whose phase fixes t3
  int m = 1;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;
  double tau = 0.0;

  double max_omega_k() const;
  double max_chi() const;
};

// t1 = pi Delta_c/(2g^2), t2 = pi/Omega~, t3 = theta_a delta/chi_a^2 for the
// anchor a (largest requested phase, driven at omega_ref),
// Omega_k = omega_ref sqrt(theta_k/theta_a), t3 + t4 = 2 m pi Delta_c/g^2.
// For delta < 0 the phase accrues backwards and theta_k - 2 pi is targeted.
ScheduleParams solve_schedule(const GateSpec& gate, double g,
                              const DerivedCouplings& couplings,
                              double omega_ref, double omega_tilde,
                              const ScheduleOptions& options = {});

struct StepRecord {
  std::string label;        // i .. vi
  std::string hamiltonian;
  std::vector<std::string> drives;
  double start = 0.0;
  double duration = 0.0;
  Mode mode = Mode::effective;
  double max_pop3 = 0.0;    // full mode only
};

struct ProtocolOptions {
  int fock_cutoff = 2;
  // Effective mode: include the photon Stark shift during the pi pulses.
  bool pulse_stark = false;
  // Full mode: sampling interval is this over the fastest frequency.
  double sample_scale = 0.3;
  // Effective mode: photon number left at the end that signals a bug.
  double photon_threshold = 1e-6;
};

struct ProtocolRun {
  HilbertSpec spec{1, 1};
  Eigen::MatrixXcd evolved;      // full-space columns, one per input
  std::vector<StepRecord> steps;
  Trajectory trajectory;         // absolute times
  double max_pop3 = 0.0;
  double final_photons = 0.0;    // largest over inputs
  IntegratorStats stats;
};

// Evolves the given full-space columns through the six steps.
ProtocolRun run_protocol(const GateSpec& gate, const ScheduleParams& schedule,
                         Mode mode, const Eigen::MatrixXcd& inputs,
                         const ProtocolOptions& options = {});
ProtocolRun run_protocol(const GateSpec& gate, const ScheduleParams& schedule,
                         Mode mode, const StateVector& initial,
                         const ProtocolOptions& options = {});

struct GateRun {
  ProtocolRun run;
  GateReport report;
};

// Every computational input; the report compares against the requested gate.
GateRun run_gate(const GateSpec& gate, const ScheduleParams& schedule,
                 Mode mode, const ProtocolOptions& options = {});

struct ResidualPhase {
  double phase = 0.0;         // 2 g^2 t2 / Delta_c
  double timing_ratio = 0.0;  // 2 t2 / (t3 + t4)
};
ResidualPhase residual_phase(const ScheduleParams& schedule);

struct TruthRow {
  std::string input;          // e.g. "101", control first
  double phase = 0.0;         // relative to the all-zeros input, [0, 2 pi)
  double ideal_phase = 0.0;
  double leakage = 0.0;
};

// Throws std::domain_error when the simulated gate is not diagonal.
std::vector<TruthRow> truth_table(const GateSpec& gate,
                                  const ScheduleParams& schedule, Mode mode,
                                  const ProtocolOptions& options = {});
std::vector<TruthRow> truth_table(const GateSpec& gate, const GateRun& run);

}  // namespace cqed
