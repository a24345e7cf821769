#pragma once

// Regime, level-structure and timing checks for a solved schedule.
//
// "a >> b" passes when |a|/|b| >= required (10 by default); "a << b" is the
// same test on b/a with a fixed factor of 10; orderings are strict.

#include <array>
#include <string>
#include <vector>

#include "cqed/protocol.hpp"

namespace cqed {

enum class ConditionKind { much_greater, much_less, ordering };

struct Condition {
  std::string name;
  ConditionKind kind = ConditionKind::much_greater;
  double left = 0.0;
  double right = 0.0;
  double required = 0.0;
  double actual = 0.0;
  bool pass = false;
  // Implied by the family's level ordering; computed as a consistency check.
  bool automatic = false;
};

struct RegimeReport {
  std::vector<Condition> conditions;

  bool pass() const;
  std::vector<std::string> failures() const;
  const Condition& find(const std::string& name) const;
};

inline constexpr double kDefaultRequiredRatio = 10.0;
inline constexpr double kMuchLessFactor = 10.0;

// Seven conditions, always in this order:
//   Delta_c >> g, Delta_prime >> max Omega_k, delta >> g^2/Delta_c,
//   delta >> max Omega_k^2/Delta_prime, delta >> max chi_k,
//   2 t2 << t3+t4, Omega_tilde >> g^2/(m Delta_c)
// The control drive has Omega = g and Delta = Delta_c, so its Delta >> Omega
// requirement is the first entry.
RegimeReport regime_check(const ScheduleParams& schedule,
                          double required_ratio = kDefaultRequiredRatio);

enum class Family { charge, phase, flux };
std::string to_string(Family family);
Family parse_family(const std::string& text);

struct PulseLine {
  std::string name;
  double omega = 0.0;
  double rabi = 0.0;
};

struct LevelStructure {
  Family family = Family::phase;
  std::array<double, 4> energies{};
  double omega_c = 0.0;
  double g = 1.0;
  std::vector<PulseLine> pulses;

  // |E_l - E_0 - omega| for l = 1, 2, 3
  std::array<double, 3> pulse_detunings(double omega) const;
  // Delta_c^1 = |E1 - E0 - omega_c|, Delta_c^2 = |E2 - E1 - omega_c|
  double cavity_detuning_01() const;
  double cavity_detuning_12() const;
};

// omega_c = omega_32 - Delta_c, Raman pulse at omega_31 - Delta_c (Omega = g),
// target pulses at omega_31 - Delta' (largest Omega_k).
LevelStructure level_structure_for(Family family,
                                   const std::array<double, 4>& energies,
                                   const ScheduleParams& schedule);

// Family ordering plus the large detunings keeping |0> idle. Throws
// std::invalid_argument unless E0 < E1 < E2 < E3.
RegimeReport level_structure_check(const LevelStructure& ls,
                                   double required_ratio = kDefaultRequiredRatio);

struct TimingBudget {
  double tau_g = 0.0;       // tau in units of 1/g
  double tau_s = 0.0;
  double gamma2_inv_s = 0.0;
  double kappa_inv_s = 0.0;
  double tau_gamma2 = 0.0;  // tau / gamma2^-1
  double tau_kappa = 0.0;   // tau / kappa^-1
  double threshold = 0.2;

  bool gamma2_ok() const { return tau_gamma2 < threshold; }
  bool kappa_ok() const { return tau_kappa < threshold; }
  bool pass() const { return gamma2_ok() && kappa_ok(); }
};

// kappa^-1 = Q/(2 pi nu_c); tau_s = tau g / (2 pi g_hz).
TimingBudget timing_budget(const ScheduleParams& schedule, double g_over_2pi_hz,
                           double gamma2_inv_s, double quality_factor,
                           double nu_c_hz, double threshold = 0.2);

}  // namespace cqed
