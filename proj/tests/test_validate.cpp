#include <algorithm>

#include "cqed/validate.hpp"
#include "doctest.h"

using namespace cqed;

namespace {

ScheduleParams schedule(double delta_c = 10.0, double delta_prime = 9.0,
                        double g = 1.0) {
  const std::vector<double> rabi{0.9};
  return solve_schedule(qft_phase_layer(5), g,
                        couplings_from_detunings(g, delta_c, delta_prime, rabi),
                        0.9, 10.0);
}

const std::array<double, 4> kPhaseLevels{0.0, 100.0, 140.0, 165.0};

}  // namespace

TEST_CASE("reference design satisfies all seven regime conditions") {
  const RegimeReport r = regime_check(schedule());
  REQUIRE(r.conditions.size() == 7);
  const std::vector<std::string> names{"Delta_c >> g",
                                       "Delta_prime >> max Omega_k",
                                       "delta >> g^2/Delta_c",
                                       "delta >> max Omega_k^2/Delta_prime",
                                       "delta >> max chi_k",
                                       "2 t2 << t3+t4",
                                       "Omega_tilde >> g^2/(m Delta_c)"};
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.conditions[i].name == names[i]);
  CHECK(r.pass());
  CHECK(r.failures().empty());
  // Sitting exactly on the threshold passes.
  CHECK(r.find("Delta_c >> g").actual == doctest::Approx(10.0));
  CHECK(r.find("Delta_prime >> max Omega_k").actual == doctest::Approx(10.0));
  CHECK(r.find("delta >> g^2/Delta_c").actual == doctest::Approx(10.0));
  CHECK(r.find("2 t2 << t3+t4").actual == doctest::Approx(300.0));
  CHECK_THROWS_AS(r.find("no such condition"), std::out_of_range);
}

TEST_CASE("a stricter ratio turns threshold conditions into failures") {
  const RegimeReport r = regime_check(schedule(), 20.0);
  CHECK_FALSE(r.pass());
  const auto f = r.failures();
  CHECK(std::find(f.begin(), f.end(), "Delta_c >> g") != f.end());
  // The much-less factor does not follow the ratio.
  CHECK(r.find("2 t2 << t3+t4").pass);
}

TEST_CASE("small cavity detuning fails only Delta_c >> g") {
  const ScheduleParams s = schedule(2.0, 9.0);
  CHECK(s.delta == doctest::Approx(-7.0));
  const RegimeReport r = regime_check(s);
  CHECK(r.failures() == std::vector<std::string>{"Delta_c >> g"});
  const RegimeReport ls =
      level_structure_check(level_structure_for(Family::phase, kPhaseLevels, s));
  CHECK(ls.pass());
}

TEST_CASE("vanishing denominators give infinite ratios") {
  ScheduleParams s = schedule();
  s.omega_k.assign(s.omega_k.size(), 0.0);
  s.chi.assign(s.chi.size(), 0.0);
  const RegimeReport r = regime_check(s);
  CHECK(std::isinf(r.find("Delta_prime >> max Omega_k").actual));
  CHECK(std::isinf(r.find("delta >> max chi_k").actual));
  CHECK(r.find("delta >> max chi_k").pass);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::charge, Family::phase, Family::flux})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("transmon"), std::invalid_argument);
}

TEST_CASE("phase family level structure of the reference design") {
  const ScheduleParams s = schedule();
  const LevelStructure ls = level_structure_for(Family::phase, kPhaseLevels, s);
  CHECK(ls.omega_c == doctest::Approx(15.0));
  REQUIRE(ls.pulses.size() == 2);
  CHECK(ls.pulses[0].omega == doctest::Approx(55.0));
  CHECK(ls.pulses[1].omega == doctest::Approx(56.0));
  const RegimeReport r = level_structure_check(ls);
  CHECK(r.pass());
  CHECK(r.find("E1-E0 > E2-E1").kind == ConditionKind::ordering);
  CHECK_FALSE(r.find("Delta_1 >> Omega (raman)").automatic);
  CHECK(r.find("Delta_2 >> Omega (raman)").automatic);
  CHECK_FALSE(r.find("Delta_c^2 >> g").automatic);
  CHECK(r.find("Delta_c^1 >> g").automatic);
}

TEST_CASE("broken phase ordering is named") {
  const std::array<double, 4> e{0.0, 35.0, 75.0, 100.0};
  const RegimeReport r =
      level_structure_check(level_structure_for(Family::phase, e, schedule()));
  CHECK(r.failures() == std::vector<std::string>{"E1-E0 > E2-E1"});
}

TEST_CASE("charge and flux families carry their own orderings") {
  const std::array<double, 4> charge{0.0, 60.0, 160.0, 200.0};
  const RegimeReport rc =
      level_structure_check(level_structure_for(Family::charge, charge, schedule()));
  CHECK(rc.find("E2-E1 > E1-E0").pass);
  CHECK(rc.find("E1-E0 > E3-E2").pass);
  CHECK_THROWS(rc.find("Delta_c^2 >> g"));

  const std::array<double, 4> flux{0.0, 20.0, 140.0, 200.0};
  const RegimeReport rf =
      level_structure_check(level_structure_for(Family::flux, flux, schedule()));
  CHECK(rf.find("E3-E2 > E1-E0").pass);
  CHECK_FALSE(rf.find("Delta_c^1 >> g").automatic);
  CHECK_FALSE(rf.find("Delta_3 >> Omega (target)").automatic);

  const std::array<double, 4> wrong{0.0, 100.0, 140.0, 165.0};
  const RegimeReport bad =
      level_structure_check(level_structure_for(Family::flux, wrong, schedule()));
  const auto f = bad.failures();
  CHECK(std::find(f.begin(), f.end(), "E2-E1 > E1-E0") != f.end());
}

TEST_CASE("unordered energies are rejected") {
  const std::array<double, 4> e{0.0, 10.0, 5.0, 20.0};
  CHECK_THROWS_AS(
      level_structure_check(level_structure_for(Family::phase, e, schedule())),
      std::invalid_argument);
}

TEST_CASE("timing budget of the reference design") {
  const TimingBudget b = timing_budget(schedule(), 220e6, 1e-6, 1e5, 3e9);
  CHECK(b.tau_g / kPi == doctest::Approx(70.2));
  CHECK(b.tau_s * 1e6 == doctest::Approx(0.15955).epsilon(1e-4));
  CHECK(b.kappa_inv_s * 1e6 == doctest::Approx(5.3052).epsilon(1e-4));
  CHECK(b.tau_gamma2 == doctest::Approx(0.15955).epsilon(1e-4));
  CHECK(b.pass());

  const TimingBudget slow = timing_budget(schedule(2.0, 9.0), 220e6, 1e-6, 1e5, 3e9);
  CHECK_FALSE(slow.gamma2_ok());
  CHECK(slow.kappa_ok());
  CHECK_THROWS_AS(timing_budget(schedule(), 0.0, 1e-6, 1e5, 3e9),
                  std::invalid_argument);
}
