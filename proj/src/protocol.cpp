#include "cqed/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqed {

std::string to_string(Mode mode) {
  return mode == Mode::effective ? "effective" : "full";
}

Mode parse_mode(const std::string& text) {
  if (text == "effective") return Mode::effective;
  if (text == "full") return Mode::full;
  throw std::invalid_argument("unknown mode '" + text +
                              "' (expected effective or full)");
}

double ScheduleParams::max_omega_k() const {
  double m = 0.0;
  for (double o : omega_k) m = std::max(m, std::abs(o));
  return m;
}

double ScheduleParams::max_chi() const {
  double m = 0.0;
  for (double c : chi) m = std::max(m, std::abs(c));
  return m;
}

ScheduleParams solve_schedule(const GateSpec& gate, double g,
                              const DerivedCouplings& couplings,
                              double omega_ref, double omega_tilde,
                              const ScheduleOptions& options) {
  gate.validate();
  if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
  if (!(couplings.delta_c > 0.0))
    throw std::invalid_argument("Delta_c must be positive");
  if (!(omega_tilde > 0.0))
    throw std::invalid_argument("Omega~ must be positive");

  ScheduleParams s;
  s.g = g;
  s.delta_c = couplings.delta_c;
  s.delta_prime = couplings.delta_prime;
  s.delta = couplings.delta_c - couplings.delta_prime;
  s.control_rabi = g;
  s.omega_tilde = omega_tilde;
  s.omega_ref = omega_ref;
  if (s.delta == 0.0)
    throw std::invalid_argument("Delta' == Delta_c leaves no dispersive gap");

  // Phase actually accrued per target: delta < 0 winds the other way.
  std::vector<double> target(gate.theta.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double th = wrap_phase(gate.theta[k]);
    target[k] = th == 0.0 ? 0.0 : (s.delta > 0.0 ? th : th - 2.0 * kPi);
  }
  s.anchor = 0;
  for (std::size_t k = 1; k < target.size(); ++k)
    if (std::abs(target[k]) > std::abs(target[s.anchor]))
      s.anchor = static_cast<int>(k);
  const double anchor_phase = std::abs(target[s.anchor]);

  s.omega_k.assign(target.size(), 0.0);
  if (anchor_phase > 0.0) {
    if (!(omega_ref > 0.0))
      throw std::invalid_argument("Omega_ref must be positive");
    const double chi_a =
        chi_coupling(omega_ref, g, s.delta_c, s.delta_prime);
    s.t3 = anchor_phase * std::abs(s.delta) / (chi_a * chi_a);
    for (std::size_t k = 0; k < target.size(); ++k)
      s.omega_k[k] = omega_ref * std::sqrt(std::abs(target[k]) / anchor_phase);
  }
  for (double o : s.omega_k)
    s.chi.push_back(chi_coupling(o, g, s.delta_c, s.delta_prime));

  if (options.t3_cap && s.t3 > *options.t3_cap)
    throw std::domain_error("schedule infeasible: t3 = " +
                            std::to_string(s.t3) + " exceeds the cap " +
                            std::to_string(*options.t3_cap));

  const double period = 2.0 * kPi * s.delta_c / (g * g);
  const int m_min =
      std::max(1, static_cast<int>(std::ceil(s.t3 / period - 1e-12)));
  s.m = options.m.value_or(m_min);
  if (s.m < 1) throw std::invalid_argument("m must be a positive integer");
  s.t4 = s.m * period - s.t3;
  if (s.t4 < -1e-12 * period)
    throw std::invalid_argument(
        "m = " + std::to_string(s.m) + " too small: t3 = " +
        std::to_string(s.t3) + " exceeds 2 m pi Delta_c/g^2 = " +
        std::to_string(s.m * period));
  s.t4 = std::max(s.t4, 0.0);

  s.t1 = kPi * s.delta_c / (2.0 * g * g);
  s.t2 = kPi / omega_tilde;
  s.tau = 2.0 * s.t1 + 2.0 * s.t2 + s.t3 + s.t4;
  return s;
}

namespace {

struct StepPlan {
  StepRecord record;
  Operator effective;
  // Rotating-frame description for full mode.
  double drive_detuning = 0.0;
  std::vector<OffResonantDrive> drives;
  std::vector<ResonantPulse> pulses;
};

std::vector<int> all_sites(const HilbertSpec& spec) {
  std::vector<int> s(spec.n_systems());
  for (int i = 0; i < spec.n_systems(); ++i) s[i] = i;
  return s;
}

std::vector<StepPlan> plan_steps(const HilbertSpec& spec,
                                 const ScheduleParams& s,
                                 const ProtocolOptions& options) {
  const CavityCoupling cav{s.g, s.delta_c};
  const int n_targets = spec.n_systems() - 1;
  const std::vector<int> sites = all_sites(spec);

  auto raman = [&](const std::string& label) {
    StepPlan p;
    p.record = {label, "resonant Raman (control)", {"control 1<->3"}, 0.0,
                s.t1};
    p.effective = eff_raman_h(spec, cav, 0, s.control_rabi, s.delta_c, kPi);
    p.drive_detuning = s.delta_c;
    p.drives.push_back({0, s.control_rabi, kPi});
    return p;
  };
  auto pulses = [&](const std::string& label, double control_phase) {
    StepPlan p;
    p.record = {label, "resonant 1<->2 pulses", {}, 0.0, s.t2};
    p.pulses.push_back({0, s.omega_tilde, control_phase});
    p.record.drives.push_back("control 1<->2");
    for (int k = 1; k <= n_targets; ++k) {
      p.pulses.push_back({k, s.omega_tilde, -control_phase});
      p.record.drives.push_back("target " + std::to_string(k + 1) + " 1<->2");
    }
    p.effective = Operator(spec.dim(), spec.dim());
    for (const auto& pulse : p.pulses)
      p.effective += resonant_pulse_h(spec, pulse.site, pulse.rabi, pulse.phase);
    if (options.pulse_stark) p.effective += eff_photon_stark_h(spec, cav, sites);
    p.drive_detuning = s.delta_c;
    return p;
  };

  std::vector<StepPlan> plan;
  plan.push_back(raman("i"));
  plan.push_back(pulses("ii", kPi / 2.0));

  StepPlan drive;
  drive.record = {"iii", "dispersive target drives", {}, 0.0, s.t3};
  std::vector<TargetDrive> targets;
  for (int k = 1; k <= n_targets; ++k) {
    const double rabi = s.omega_k[k - 1];
    targets.push_back({k, rabi, 0.0});
    if (rabi == 0.0) continue;
    drive.drives.push_back({k, rabi, 0.0});
    drive.record.drives.push_back("target " + std::to_string(k + 1) +
                                  " 1<->3");
  }
  drive.effective = eff_phase_h(spec, cav, s.delta_prime, targets);
  drive.drive_detuning = s.delta_prime;
  plan.push_back(std::move(drive));

  StepPlan wait;
  wait.record = {"iv", "cavity only", {}, 0.0, s.t4};
  wait.effective = eff_photon_stark_h(spec, cav, sites);
  wait.drive_detuning = s.delta_c;
  plan.push_back(std::move(wait));

  plan.push_back(pulses("v", -kPi / 2.0));
  plan.push_back(raman("vi"));
  return plan;
}

void require_computational(const HilbertSpec& spec,
                           const Eigen::MatrixXcd& inputs) {
  for (Eigen::Index c = 0; c < inputs.cols(); ++c)
    for (std::size_t i = 0; i < spec.dim(); ++i) {
      if (std::abs(inputs(i, c)) == 0.0) continue;
      bool ok = spec.photons_at(i) == 0;
      for (int site = 0; ok && site < spec.n_systems(); ++site)
        ok = spec.level_at(i, site) <= 1;
      if (!ok)
        throw std::invalid_argument(
            "protocol inputs must use levels {0,1} with the cavity in vacuum");
    }
}

void append(Trajectory& into, const Trajectory& part, double offset) {
  for (std::size_t i = 0; i < part.times.size(); ++i) {
    into.times.push_back(offset + part.times[i]);
    into.max_pop3.push_back(part.max_pop3[i]);
    into.photons.push_back(part.photons[i]);
  }
}

}  // namespace

ProtocolRun run_protocol(const GateSpec& gate, const ScheduleParams& schedule,
                         Mode mode, const Eigen::MatrixXcd& inputs,
                         const ProtocolOptions& options) {
  gate.validate();
  if (static_cast<int>(schedule.omega_k.size()) != gate.n_targets)
    throw std::invalid_argument("schedule was solved for a different gate");
  if (options.fock_cutoff < 1)
    throw std::invalid_argument(
        "the protocol creates a photon; fock_cutoff must be >= 1");

  ProtocolRun run;
  run.spec = HilbertSpec(gate.n_targets + 1, options.fock_cutoff);
  if (inputs.rows() != static_cast<Eigen::Index>(run.spec.dim()))
    throw std::invalid_argument("input dimension does not match the space");
  require_computational(run.spec, inputs);

  const double fastest = std::max({std::abs(schedule.delta_c),
                                   std::abs(schedule.delta_prime),
                                   schedule.omega_tilde, schedule.g});
  const double sample_dt = options.sample_scale / fastest;

  Eigen::MatrixXcd block = inputs;
  double clock = 0.0;
  for (StepPlan& step : plan_steps(run.spec, schedule, options)) {
    step.record.start = clock;
    step.record.mode = mode;
    const double dur = step.record.duration;
    if (mode == Mode::effective) {
      block = evolve_const(step.effective, dur, block);
    } else {
      RotatingForm rf =
          rotating_h(run.spec, schedule.g, schedule.delta_c,
                     step.drive_detuning, step.drives, step.pulses);
      block = rf.frame.to_rotating(block, clock);
      BlockEvolution ev =
          evolve_const_monitored(run.spec, rf.h, dur, block, sample_dt);
      block = rf.frame.from_rotating(ev.block, clock + dur);
      step.record.max_pop3 = *std::max_element(ev.trajectory.max_pop3.begin(),
                                               ev.trajectory.max_pop3.end());
      run.max_pop3 = std::max(run.max_pop3, step.record.max_pop3);
      append(run.trajectory, ev.trajectory, clock);
      run.stats.steps += ev.stats.steps;
      run.stats.max_norm_drift =
          std::max(run.stats.max_norm_drift, ev.stats.max_norm_drift);
    }
    clock += dur;
    run.steps.push_back(std::move(step.record));
  }

  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    run.final_photons =
        std::max(run.final_photons, photon_number(run.spec, block.col(c)));
    run.stats.max_norm_drift = std::max(run.stats.max_norm_drift,
                                        std::abs(block.col(c).norm() - 1.0));
  }
  if (mode == Mode::effective && run.final_photons > options.photon_threshold)
    throw std::runtime_error("photon left in the cavity after the gate (" +
                             std::to_string(run.final_photons) +
                             "); step sequencing is broken");
  run.evolved = std::move(block);
  return run;
}

ProtocolRun run_protocol(const GateSpec& gate, const ScheduleParams& schedule,
                         Mode mode, const StateVector& initial,
                         const ProtocolOptions& options) {
  Eigen::MatrixXcd block = initial;
  return run_protocol(gate, schedule, mode, block, options);
}

GateRun run_gate(const GateSpec& gate, const ScheduleParams& schedule,
                 Mode mode, const ProtocolOptions& options) {
  gate.validate();
  const HilbertSpec spec(gate.n_targets + 1, std::max(options.fock_cutoff, 1));
  GateRun out;
  out.run = run_protocol(gate, schedule, mode, computational_inputs(spec),
                         options);
  out.report = make_report(out.run.spec, out.run.evolved, gate.theta);
  return out;
}

ResidualPhase residual_phase(const ScheduleParams& schedule) {
  ResidualPhase r;
  r.phase = 2.0 * schedule.g * schedule.g * schedule.t2 / schedule.delta_c;
  const double window = schedule.t3 + schedule.t4;
  r.timing_ratio = window > 0.0 ? 2.0 * schedule.t2 / window : HUGE_VAL;
  return r;
}

std::vector<TruthRow> truth_table(const GateSpec& gate, const GateRun& run) {
  const Eigen::MatrixXcd& u = run.report.unitary;
  const std::vector<double> phases = diagonal_phases(u);
  const std::vector<double> ideal = diagonal_phases(ideal_multi_phase(gate.theta));
  const int n = gate.n_targets + 1;
  std::vector<TruthRow> rows;
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    TruthRow row;
    for (int b = n - 1; b >= 0; --b) row.input += ((c >> b) & 1) ? '1' : '0';
    row.phase = phases[c];
    row.ideal_phase = ideal[c];
    row.leakage = std::max(0.0, run.run.evolved.col(c).squaredNorm() -
                                    u.col(c).squaredNorm());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TruthRow> truth_table(const GateSpec& gate,
                                  const ScheduleParams& schedule, Mode mode,
                                  const ProtocolOptions& options) {
  return truth_table(gate, run_gate(gate, schedule, mode, options));
}

}  // namespace cqed
