#include "cqed/protocol.hpp"
#include "doctest.h"

using namespace cqed;

namespace {

ScheduleParams make_schedule(const GateSpec& gate, double delta_c = 10.0,
                             double delta_prime = 9.0, double omega_ref = 0.9,
                             double omega_tilde = 10.0,
                             const ScheduleOptions& opts = {}) {
  const std::vector<double> rabi{omega_ref};
  return solve_schedule(gate, 1.0,
                        couplings_from_detunings(1.0, delta_c, delta_prime, rabi),
                        omega_ref, omega_tilde, opts);
}

}  // namespace

TEST_CASE("mode names round trip") {
  CHECK(parse_mode("full") == Mode::full);
  CHECK(to_string(Mode::effective) == "effective");
  CHECK_THROWS_AS(parse_mode("exact"), std::invalid_argument);
}

TEST_CASE("reference schedule for the five-target QFT layer") {
  const ScheduleParams s = make_schedule(qft_phase_layer(5));
  CHECK(s.m == 3);
  CHECK(s.t1 / kPi == doctest::Approx(5.0));
  CHECK(s.t2 / kPi == doctest::Approx(0.1));
  CHECK(s.t3 / kPi == doctest::Approx(55.40166).epsilon(1e-6));
  CHECK((s.t3 + s.t4) / kPi == doctest::Approx(60.0).epsilon(1e-14));
  CHECK(s.tau / kPi == doctest::Approx(70.2));
  CHECK(s.delta == doctest::Approx(1.0));
  CHECK(s.anchor == 0);
  for (std::size_t k = 0; k + 1 < s.omega_k.size(); ++k)
    CHECK(s.omega_k[k + 1] / s.omega_k[k] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s.max_omega_k() == doctest::Approx(0.9));
  CHECK(s.max_chi() == doctest::Approx(chi_coupling(0.9, 1.0, 10.0, 9.0)));
  const ResidualPhase r = residual_phase(s);
  CHECK(r.phase / kPi == doctest::Approx(0.02));
  CHECK(r.timing_ratio == doctest::Approx(1.0 / 300.0));
}

TEST_CASE("uniform phases use equal drives and t3 = theta delta / chi^2") {
  const ScheduleParams s = make_schedule(uniform_gate(3, kPi));
  const double chi = chi_coupling(0.9, 1.0, 10.0, 9.0);
  CHECK(s.t3 == doctest::Approx(kPi * 1.0 / (chi * chi)));
  for (double o : s.omega_k) CHECK(o == doctest::Approx(0.9));
}

TEST_CASE("the largest phase anchors the drive strengths") {
  const GateSpec gate{3, {0.5, 2.0, 1.0}};
  const ScheduleParams s = make_schedule(gate);
  CHECK(s.anchor == 1);
  CHECK(s.omega_k[1] == doctest::Approx(0.9));
  CHECK(s.omega_k[0] == doctest::Approx(0.9 * 0.5));
  CHECK(s.omega_k[2] == doctest::Approx(0.9 * std::sqrt(0.5)));
}

TEST_CASE("zero phases need no target drive") {
  const ScheduleParams s = make_schedule(uniform_gate(2, 0.0));
  CHECK(s.t3 == 0.0);
  CHECK(s.m == 1);
  CHECK(s.t4 == doctest::Approx(20.0 * kPi));
  for (double o : s.omega_k) CHECK(o == 0.0);
  const GateRun run = run_gate(uniform_gate(2, 0.0), s, Mode::effective);
  CHECK(run.report.fidelity == doctest::Approx(1.0));
}

TEST_CASE("m overrides and caps") {
  const GateSpec gate = qft_phase_layer(5);
  ScheduleOptions opts;
  opts.m = 5;
  const ScheduleParams s = make_schedule(gate, 10.0, 9.0, 0.9, 10.0, opts);
  CHECK(s.m == 5);
  CHECK((s.t3 + s.t4) / kPi == doctest::Approx(100.0));
  opts.m = 2;
  CHECK_THROWS_AS(make_schedule(gate, 10.0, 9.0, 0.9, 10.0, opts),
                  std::invalid_argument);
  ScheduleOptions cap;
  cap.t3_cap = 50.0 * kPi;
  CHECK_THROWS_AS(make_schedule(gate, 10.0, 9.0, 0.9, 10.0, cap), std::domain_error);
}

TEST_CASE("degenerate detunings are rejected") {
  CHECK_THROWS_AS(make_schedule(uniform_gate(1, 1.0), 10.0, 10.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(uniform_gate(1, 1.0), 0.0, 9.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(uniform_gate(1, 1.0), 10.0, 9.0, 0.9, 0.0),
                  std::invalid_argument);
}

TEST_CASE("three-system truth table in the effective model") {
  const GateSpec gate{2, {kPi, kPi / 2.0}};
  const auto rows = truth_table(gate, make_schedule(gate), Mode::effective);
  REQUIRE(rows.size() == 8);
  const std::vector<std::string> labels{"000", "001", "010", "011",
                                        "100", "101", "110", "111"};
  const std::vector<double> expected{0, 0, 0, 0, 0, kPi / 2.0, kPi, 1.5 * kPi};
  for (int i = 0; i < 8; ++i) {
    CHECK(rows[i].input == labels[i]);
    CHECK(phase_distance(rows[i].phase, expected[i]) < 1e-9);
    CHECK(rows[i].ideal_phase == doctest::Approx(expected[i]));
    CHECK(rows[i].leakage < 1e-12);
  }
}

TEST_CASE("negative dispersive gap winds the phase backwards") {
  const GateSpec gate{2, {kPi / 2.0, 0.3}};
  const ScheduleParams s = make_schedule(gate, 10.0, 11.0);
  CHECK(s.delta == doctest::Approx(-1.0));
  CHECK(s.anchor == 1);  // 0.3 - 2 pi is the longer backward winding
  const GateRun run = run_gate(gate, s, Mode::effective);
  REQUIRE(run.report.theta.size() == 2);
  CHECK(phase_distance(run.report.theta[0], kPi / 2.0) < 1e-9);
  CHECK(phase_distance(run.report.theta[1], 0.3) < 1e-9);
}

TEST_CASE("steps tile the schedule") {
  const GateSpec gate{1, {kPi}};
  const ScheduleParams s = make_schedule(gate);
  const GateRun run = run_gate(gate, s, Mode::effective);
  REQUIRE(run.run.steps.size() == 6);
  const std::vector<std::string> labels{"i", "ii", "iii", "iv", "v", "vi"};
  double t = 0.0;
  for (int i = 0; i < 6; ++i) {
    CHECK(run.run.steps[i].label == labels[i]);
    CHECK(run.run.steps[i].start == doctest::Approx(t));
    t += run.run.steps[i].duration;
  }
  CHECK(t == doctest::Approx(s.tau));
  CHECK(run.run.final_photons < 1e-12);
}

TEST_CASE("single-state runs agree with the block run") {
  const GateSpec gate{2, {kPi, 1.0}};
  const ScheduleParams s = make_schedule(gate);
  const GateRun block = run_gate(gate, s, Mode::effective);
  const HilbertSpec& spec = block.run.spec;
  const std::vector<int> levels{1, 1, 0};
  const ProtocolRun one =
      run_protocol(gate, s, Mode::effective, product_state(spec, levels, 0));
  const auto idx = computational_indices(spec);
  CHECK((one.evolved.col(0) - block.run.evolved.col(6)).norm() < 1e-12);
  CHECK(idx[6] == spec.index(levels, 0));
}

TEST_CASE("inputs outside the computational subspace are rejected") {
  const GateSpec gate{1, {kPi}};
  const ScheduleParams s = make_schedule(gate);
  const HilbertSpec spec(2, 2);
  const std::vector<int> excited{2, 0};
  CHECK_THROWS_AS(
      run_protocol(gate, s, Mode::effective, product_state(spec, excited, 0)),
      std::invalid_argument);
  const std::vector<int> ground{0, 0};
  CHECK_THROWS_AS(
      run_protocol(gate, s, Mode::effective, product_state(spec, ground, 1)),
      std::invalid_argument);
}

TEST_CASE("Stark shift during the pulses costs the residual phase") {
  const GateSpec gate{1, {kPi}};
  const ScheduleParams s = make_schedule(gate);
  ProtocolOptions opts;
  opts.pulse_stark = true;
  // The shift detunes the pi pulses, so a little photon is left behind.
  opts.photon_threshold = 1e-3;
  const GateRun exact = run_gate(gate, s, Mode::effective);
  const GateRun stark = run_gate(gate, s, Mode::effective, opts);
  CHECK(exact.report.fidelity == doctest::Approx(1.0));
  CHECK(stark.report.fidelity < 1.0 - 1e-6);
  CHECK(stark.report.fidelity > 0.99);
  CHECK(stark.run.final_photons > 0.0);
  CHECK(stark.run.final_photons < 1e-4);
}

TEST_CASE("full model approximates the gate at Delta_c = 10 g") {
  const GateSpec gate{1, {kPi}};
  const double r = 10.0;
  const double dp = (2.0 * r - 1.0) / (2.0 * r + 1.0) * r;
  const ScheduleParams s = make_schedule(gate, r, dp, dp / r, 5.0);
  const GateRun run = run_gate(gate, s, Mode::full);
  CHECK(run.report.fidelity > 0.9);
  CHECK(run.report.leakage < 0.1);
  CHECK(run.run.max_pop3 <= 5.0 / (r * r));
  CHECK(run.run.max_pop3 > 0.0);
  CHECK_FALSE(run.run.trajectory.times.empty());
  for (const auto& step : run.run.steps) CHECK(step.mode == Mode::full);
}
