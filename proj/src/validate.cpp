#include "cqed/validate.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

namespace {

// Absorbs rounding when a design sits exactly on the threshold.
constexpr double kSlack = 1e-9;

double ratio(double left, double right) {
  if (right == 0.0) return HUGE_VAL;
  return std::abs(left) / std::abs(right);
}

Condition much_greater(std::string name, double left, double right,
                       double required, bool automatic = false) {
  Condition c{std::move(name), ConditionKind::much_greater, left, right,
              required, ratio(left, right), false, automatic};
  c.pass = c.actual >= required * (1.0 - kSlack);
  return c;
}

Condition much_less(std::string name, double left, double right) {
  Condition c{std::move(name), ConditionKind::much_less, left, right,
              kMuchLessFactor, ratio(right, left), false, false};
  c.pass = c.actual >= kMuchLessFactor * (1.0 - kSlack);
  return c;
}

Condition ordering(std::string name, double left, double right) {
  Condition c{std::move(name), ConditionKind::ordering, left, right, 1.0,
              ratio(left, right), left > right, false};
  return c;
}

}  // namespace

bool RegimeReport::pass() const {
  for (const auto& c : conditions)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> RegimeReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (!c.pass) out.push_back(c.name);
  return out;
}

const Condition& RegimeReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw std::out_of_range("no condition named '" + name + "'");
}

RegimeReport regime_check(const ScheduleParams& s, double required_ratio) {
  const double omax = s.max_omega_k();
  const double g2 = s.g * s.g;
  RegimeReport r;
  r.conditions.push_back(
      much_greater("Delta_c >> g", s.delta_c, s.g, required_ratio));
  r.conditions.push_back(much_greater("Delta_prime >> max Omega_k",
                                      s.delta_prime, omax, required_ratio));
  r.conditions.push_back(much_greater("delta >> g^2/Delta_c", s.delta,
                                      g2 / s.delta_c, required_ratio));
  r.conditions.push_back(much_greater("delta >> max Omega_k^2/Delta_prime",
                                      s.delta, omax * omax / s.delta_prime,
                                      required_ratio));
  r.conditions.push_back(
      much_greater("delta >> max chi_k", s.delta, s.max_chi(), required_ratio));
  r.conditions.push_back(
      much_less("2 t2 << t3+t4", 2.0 * s.t2, s.t3 + s.t4));
  r.conditions.push_back(much_greater("Omega_tilde >> g^2/(m Delta_c)",
                                      s.omega_tilde, g2 / (s.m * s.delta_c),
                                      required_ratio));
  return r;
}

std::string to_string(Family family) {
  switch (family) {
    case Family::charge: return "charge";
    case Family::phase: return "phase";
    case Family::flux: return "flux";
  }
  return "unknown";
}

Family parse_family(const std::string& text) {
  if (text == "charge") return Family::charge;
  if (text == "phase") return Family::phase;
  if (text == "flux") return Family::flux;
  throw std::invalid_argument("unknown level family '" + text +
                              "' (expected charge, phase or flux)");
}

std::array<double, 3> LevelStructure::pulse_detunings(double omega) const {
  return {std::abs(energies[1] - energies[0] - omega),
          std::abs(energies[2] - energies[0] - omega),
          std::abs(energies[3] - energies[0] - omega)};
}

double LevelStructure::cavity_detuning_01() const {
  return std::abs(energies[1] - energies[0] - omega_c);
}

double LevelStructure::cavity_detuning_12() const {
  return std::abs(energies[2] - energies[1] - omega_c);
}

LevelStructure level_structure_for(Family family,
                                   const std::array<double, 4>& energies,
                                   const ScheduleParams& s) {
  LevelStructure ls;
  ls.family = family;
  ls.energies = energies;
  ls.g = s.g;
  const double w31 = energies[3] - energies[1];
  const double w32 = energies[3] - energies[2];
  ls.omega_c = w32 - s.delta_c;
  ls.pulses.push_back({"raman", w31 - s.delta_c, s.control_rabi});
  ls.pulses.push_back({"target", w31 - s.delta_prime, s.max_omega_k()});
  return ls;
}

RegimeReport level_structure_check(const LevelStructure& ls,
                                   double required_ratio) {
  const auto& e = ls.energies;
  for (int l = 0; l < 3; ++l)
    if (!(e[l] < e[l + 1]))
      throw std::invalid_argument("energies must satisfy E0 < E1 < E2 < E3");
  const double s10 = e[1] - e[0];
  const double s21 = e[2] - e[1];
  const double s32 = e[3] - e[2];

  RegimeReport r;
  // Which pulse detunings (Delta_1..3) are required vs implied.
  std::array<bool, 3> pulse_required{};
  bool c01_required = false;
  bool c12_required = false;
  switch (ls.family) {
    case Family::charge:
      r.conditions.push_back(ordering("E2-E1 > E1-E0", s21, s10));
      r.conditions.push_back(ordering("E2-E1 > E3-E2", s21, s32));
      r.conditions.push_back(ordering("E1-E0 > E3-E2", s10, s32));
      pulse_required = {true, true, false};
      c01_required = true;
      break;
    case Family::phase:
      r.conditions.push_back(ordering("E1-E0 > E2-E1", s10, s21));
      r.conditions.push_back(ordering("E2-E1 > E3-E2", s21, s32));
      pulse_required = {true, false, false};
      c12_required = true;
      break;
    case Family::flux:
      r.conditions.push_back(ordering("E2-E1 > E1-E0", s21, s10));
      r.conditions.push_back(ordering("E2-E1 > E3-E2", s21, s32));
      r.conditions.push_back(ordering("E3-E2 > E1-E0", s32, s10));
      pulse_required = {false, true, true};
      c01_required = true;
      break;
  }

  for (const auto& pulse : ls.pulses) {
    const auto d = ls.pulse_detunings(pulse.omega);
    for (int l = 0; l < 3; ++l)
      r.conditions.push_back(much_greater(
          "Delta_" + std::to_string(l + 1) + " >> Omega (" + pulse.name + ")",
          d[l], pulse.rabi, required_ratio, !pulse_required[l]));
  }
  r.conditions.push_back(much_greater("Delta_c^1 >> g", ls.cavity_detuning_01(),
                                      ls.g, required_ratio, !c01_required));
  if (ls.family == Family::phase)
    r.conditions.push_back(much_greater("Delta_c^2 >> g",
                                        ls.cavity_detuning_12(), ls.g,
                                        required_ratio, !c12_required));
  r.conditions.push_back(much_greater("cavity 0<->2 detuning >> g",
                                      std::abs(e[2] - e[0] - ls.omega_c), ls.g,
                                      required_ratio, true));
  r.conditions.push_back(much_greater("cavity 0<->3 detuning >> g",
                                      std::abs(e[3] - e[0] - ls.omega_c), ls.g,
                                      required_ratio, true));
  return r;
}

TimingBudget timing_budget(const ScheduleParams& s, double g_over_2pi_hz,
                           double gamma2_inv_s, double quality_factor,
                           double nu_c_hz, double threshold) {
  if (!(g_over_2pi_hz > 0.0) || !(gamma2_inv_s > 0.0) ||
      !(quality_factor > 0.0) || !(nu_c_hz > 0.0))
    throw std::invalid_argument(
        "timing budget needs positive g/2pi, gamma2^-1, Q and nu_c");
  TimingBudget b;
  b.threshold = threshold;
  b.tau_g = s.tau * s.g;
  b.tau_s = b.tau_g / (2.0 * kPi * g_over_2pi_hz);
  b.gamma2_inv_s = gamma2_inv_s;
  b.kappa_inv_s = quality_factor / (2.0 * kPi * nu_c_hz);
  b.tau_gamma2 = b.tau_s / b.gamma2_inv_s;
  b.tau_kappa = b.tau_s / b.kappa_inv_s;
  return b;
}

}  // namespace cqed
