#include "cqed/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cqed {

using json = nlohmann::ordered_json;

const Artifact& CommandResult::artifact(const std::string& name) const {
  for (const auto& a : artifacts)
    if (a.name == name) return a;
  throw std::out_of_range("no artifact named '" + name + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

namespace {

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\r\n";
}

json schedule_json(const ScheduleParams& s) {
  return {{"t1", s.t1},         {"t2", s.t2},
          {"t3", s.t3},         {"t4", s.t4},
          {"m", s.m},           {"tau", s.tau},
          {"tau_over_pi", s.tau / kPi},
          {"omega_tilde", s.omega_tilde},
          {"omega_k", s.omega_k}, {"chi_k", s.chi},
          {"delta", s.delta}};
}

json report_json(const RegimeReport& r) {
  json out = json::array();
  for (const auto& c : r.conditions) {
    const char* kind = c.kind == ConditionKind::much_greater ? ">>"
                       : c.kind == ConditionKind::much_less  ? "<<"
                                                             : ">";
    out.push_back({{"name", c.name},
                   {"kind", kind},
                   {"left", c.left},
                   {"right", c.right},
                   {"required", c.required},
                   {"actual", std::isinf(c.actual) ? json("inf") : json(c.actual)},
                   {"pass", c.pass},
                   {"automatic", c.automatic}});
  }
  return out;
}

json timing_json(const TimingBudget& b) {
  return {{"tau_over_g", b.tau_g},       {"tau_s", b.tau_s},
          {"gamma2_inv_s", b.gamma2_inv_s}, {"kappa_inv_s", b.kappa_inv_s},
          {"tau_gamma2", b.tau_gamma2},   {"tau_kappa", b.tau_kappa},
          {"threshold", b.threshold},     {"pass", b.pass()}};
}

std::string describe(const RegimeReport& r, const std::string& title) {
  std::ostringstream os;
  os << title << (r.pass() ? ": pass" : ": FAIL") << "\n";
  for (const auto& c : r.conditions) {
    os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
    if (c.kind == ConditionKind::ordering)
      os << "  (" << format_number(c.left) << " vs " << format_number(c.right)
         << ")";
    else
      os << "  ratio " << format_number(c.actual) << " (need "
         << format_number(c.required) << ")";
    if (c.automatic) os << "  [implied by ordering]";
    os << "\n";
  }
  return os.str();
}

std::string describe(const TimingBudget& b) {
  std::ostringstream os;
  os << "timing budget" << (b.pass() ? ": pass" : ": FAIL") << "\n"
     << "  tau = " << format_number(b.tau_g / kPi) << " pi/g = "
     << format_number(b.tau_s * 1e6) << " us\n"
     << "  tau/gamma2^-1 = " << format_number(b.tau_gamma2) << " (limit "
     << format_number(b.threshold) << ")\n"
     << "  tau/kappa^-1 = " << format_number(b.tau_kappa) << " (kappa^-1 = "
     << format_number(b.kappa_inv_s * 1e6) << " us)\n";
  return os.str();
}

struct Validation {
  RegimeReport regime;
  RegimeReport levels;
  std::optional<TimingBudget> timing;

  bool pass() const {
    return regime.pass() && levels.pass() && (!timing || timing->pass());
  }
};

Validation run_validation(const RunConfig& config, const ScheduleParams& s,
                          double ratio) {
  const RunConfig c = config.in_g_units();
  Validation v;
  v.regime = regime_check(s, ratio);
  v.levels = level_structure_check(
      level_structure_for(c.family, c.energies, s), ratio);
  const auto g_hz = config.g_hz();
  if (g_hz && c.gamma2_inv_s && c.quality_factor && c.nu_c_hz)
    v.timing = timing_budget(s, *g_hz, *c.gamma2_inv_s, *c.quality_factor,
                             *c.nu_c_hz);
  return v;
}

json validation_json(const Validation& v) {
  json out;
  out["pass"] = v.pass();
  out["regime"] = report_json(v.regime);
  out["level_structure"] = report_json(v.levels);
  out["timing"] = v.timing ? timing_json(*v.timing) : json(nullptr);
  json failures = json::array();
  for (const auto& f : v.regime.failures()) failures.push_back(f);
  for (const auto& f : v.levels.failures()) failures.push_back(f);
  if (v.timing) {
    if (!v.timing->gamma2_ok()) failures.push_back("tau << 1/gamma2");
    if (!v.timing->kappa_ok()) failures.push_back("tau << 1/kappa");
  }
  out["failures"] = failures;
  return out;
}

std::string validation_text(const Validation& v) {
  std::string text = describe(v.regime, "regime conditions") +
                     describe(v.levels, "level structure");
  text += v.timing ? describe(*v.timing)
                   : std::string("timing budget: not evaluated "
                                 "(decoherence references missing)\n");
  return text;
}

json phases_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json gate_json(const GateReport& r, const ProtocolRun& run) {
  json out;
  out["diagonal"] = !r.theta.empty();
  out["theta"] = phases_json(r.theta);
  out["fidelity"] = r.fidelity;
  out["infidelity"] = 1.0 - r.fidelity;
  out["leakage"] = r.leakage;
  out["off_diagonal_weight"] = r.off_diagonal;
  out["global_phase"] = r.global_phase;
  out["final_photons"] = run.final_photons;
  out["max_pop3"] = run.max_pop3;
  return out;
}

}  // namespace

CommandResult cmd_truth_table(const RunConfig& config) {
  const RunConfig c = config.in_g_units();
  const GateSpec gate = c.gate();
  const ScheduleParams s = c.schedule();
  const ProtocolOptions opts = c.protocol_options();

  const GateRun eff = run_gate(gate, s, Mode::effective, opts);
  const std::vector<TruthRow> eff_rows = truth_table(gate, eff);
  std::optional<GateRun> full;
  std::vector<TruthRow> full_rows;
  bool full_diagonal = true;
  if (c.mode == Mode::full) {
    full = run_gate(gate, s, Mode::full, opts);
    full_diagonal = !full->report.theta.empty();
    if (full_diagonal) full_rows = truth_table(gate, *full);
  }

  std::vector<std::string> header{"input", "ideal_phase", "effective_phase",
                                  "effective_leakage"};
  if (full) {
    header.push_back("full_phase");
    header.push_back("full_leakage");
  }
  std::string csv = csv_row(header);
  for (std::size_t i = 0; i < eff_rows.size(); ++i) {
    std::vector<std::string> row{eff_rows[i].input,
                                 format_number(eff_rows[i].ideal_phase),
                                 format_number(eff_rows[i].phase),
                                 format_number(eff_rows[i].leakage)};
    if (full) {
      row.push_back(full_diagonal ? format_number(full_rows[i].phase) : "");
      row.push_back(full_diagonal ? format_number(full_rows[i].leakage) : "");
    }
    csv += csv_row(row);
  }

  json summary;
  summary["mode"] = to_string(c.mode);
  summary["n_targets"] = gate.n_targets;
  summary["theta_requested"] = phases_json(gate.theta);
  summary["schedule"] = schedule_json(s);
  summary["effective"] = gate_json(eff.report, eff.run);
  if (full) summary["full"] = gate_json(full->report, full->run);

  CommandResult result;
  result.artifacts.push_back({"truth_table.csv", csv});
  result.artifacts.push_back({"truth_table.json", summary.dump(2) + "\n"});
  std::ostringstream os;
  os << "truth table for " << gate.n_targets + 1 << " systems ("
     << to_string(c.mode) << " mode)\n"
     << "  effective fidelity " << format_number(eff.report.fidelity) << "\n";
  if (full) {
    os << "  full fidelity " << format_number(full->report.fidelity)
       << ", leakage " << format_number(full->report.leakage) << "\n";
    if (!full_diagonal) {
      os << "  full-mode gate is not diagonal (off-diagonal weight "
         << format_number(full->report.off_diagonal) << ")\n";
      result.exit_code = kExitPhysics;
    }
  }
  result.summary = os.str();
  return result;
}

CommandResult cmd_qft_demo(const RunConfig& config, double required_ratio) {
  RunConfig c = config.in_g_units();
  if (!c.qft) {
    c.qft = true;
    c.n_targets = 5;
    c.theta.clear();
  }
  const GateSpec gate = c.gate();
  const ScheduleParams s = c.schedule();
  const GateRun run = run_gate(gate, s, Mode::effective, c.protocol_options());
  const Validation v = run_validation(config, s, required_ratio);
  const ResidualPhase rp = residual_phase(s);

  double max_err = 0.0;
  for (std::size_t k = 0; k < gate.theta.size(); ++k)
    max_err = std::max(max_err,
                       phase_distance(run.report.theta[k], gate.theta[k]));

  json out;
  out["n_targets"] = gate.n_targets;
  out["theta_requested"] = phases_json(gate.theta);
  out["theta_extracted"] = phases_json(run.report.theta);
  out["max_phase_error"] = max_err;
  out["fidelity"] = run.report.fidelity;
  out["schedule"] = schedule_json(s);
  out["residual_phase"] = rp.phase;
  out["residual_phase_over_pi"] = rp.phase / kPi;
  out["pulse_to_window_ratio"] = rp.timing_ratio;
  out["validation"] = validation_json(v);

  CommandResult result;
  result.artifacts.push_back({"qft_demo.json", out.dump(2) + "\n"});
  std::ostringstream os;
  os << "QFT phase layer, " << gate.n_targets << " targets (effective mode)\n";
  for (std::size_t k = 0; k < gate.theta.size(); ++k)
    os << "  theta_" << k + 2 << " = " << format_number(run.report.theta[k] / kPi)
       << " pi (requested " << format_number(gate.theta[k] / kPi) << " pi)\n";
  os << "  tau = " << format_number(s.tau / kPi) << " pi/g, m = " << s.m << "\n"
     << "  residual phase = " << format_number(rp.phase / kPi) << " pi\n"
     << validation_text(v);
  result.summary = os.str();
  if (!v.pass()) result.exit_code = kExitPhysics;
  return result;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"delta_c", "omega_tilde",
                                             "omega_ref", "m"};
  return axes;
}

RunConfig scaled_config(const RunConfig& config, double ratio) {
  if (!(ratio > 0.5)) throw std::invalid_argument("scaling ratio must exceed 1/2");
  RunConfig c = config.in_g_units();
  const double x = (2.0 * ratio - 1.0) / (2.0 * ratio + 1.0);
  c.delta_c = ratio * c.g;
  c.delta_prime = x * c.delta_c;
  c.omega_ref = c.delta_prime / ratio;
  c.m.reset();
  return c;
}

CommandResult cmd_sweep(const RunConfig& config, const std::string& axis,
                        std::span<const double> values) {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) ==
      sweep_axes().end())
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");

  const RunConfig base = config.in_g_units();
  std::string csv = csv_row({"axis", "value", "fidelity", "infidelity",
                             "leakage", "max_pop3", "tau", "residual_phase",
                             "m"});
  for (double value : values) {
    RunConfig c = base;
    if (axis == "delta_c") {
      c = scaled_config(base, value);
    } else if (axis == "omega_tilde") {
      c.omega_tilde = value;
    } else if (axis == "omega_ref") {
      c.omega_ref = value;
    } else {
      if (value != std::floor(value) || value < 1)
        throw std::invalid_argument("m values must be positive integers");
      c.m = static_cast<int>(value);
    }
    const ScheduleParams s = c.schedule();
    const GateRun run = run_gate(c.gate(), s, c.mode, c.protocol_options());
    csv += csv_row(
        {axis, format_number(value), format_number(run.report.fidelity),
         format_number(1.0 - run.report.fidelity),
         format_number(run.report.leakage),
         c.mode == Mode::full ? format_number(run.run.max_pop3) : "",
         format_number(s.tau), format_number(residual_phase(s).phase),
         std::to_string(s.m)});
  }
  CommandResult result;
  result.artifacts.push_back({"sweep.csv", csv});
  result.summary = "sweep over " + axis + ": " +
                   std::to_string(values.size()) + " points\n";
  return result;
}

CommandResult cmd_validate(const RunConfig& config, double required_ratio) {
  const ScheduleParams s = config.schedule();
  const Validation v = run_validation(config, s, required_ratio);
  json out = validation_json(v);
  out["required_ratio"] = required_ratio;
  out["schedule"] = schedule_json(s);
  out["residual_phase"] = residual_phase(s).phase;

  CommandResult result;
  result.summary = validation_text(v);
  result.artifacts.push_back({"validate.json", out.dump(2) + "\n"});
  result.artifacts.push_back({"validate.txt", result.summary});
  if (!v.pass()) result.exit_code = kExitPhysics;
  return result;
}

void write_artifacts(const CommandResult& result,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& a : result.artifacts) {
    std::ofstream out(dir / a.name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / a.name).string());
    out << a.content;
  }
}

}  // namespace cqed
