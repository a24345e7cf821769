#include <random>

#include "cqed/propagate.hpp"
#include "doctest.h"

using namespace cqed;

namespace {

Operator random_hermitian(std::size_t dim, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t i = 0; i < dim; ++i) {
    trips.emplace_back(i, i, u(rng));
    for (std::size_t j = i + 1; j < dim; ++j)
      if ((u(rng) + 1.0) / 2.0 < density) {
        const cplx v(u(rng), u(rng));
        trips.emplace_back(i, j, v);
        trips.emplace_back(j, i, std::conj(v));
      }
  }
  Operator h(dim, dim);
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

Eigen::MatrixXcd reference_expm(const Operator& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig{Eigen::MatrixXcd(h)};
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::polar(1.0, -eig.eigenvalues()(i) * t);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("dense exponential matches a spectral reference") {
  const Operator h = random_hermitian(40, 0.2, 1);
  CHECK((propagator(h, 1.7) - reference_expm(h, 1.7)).norm() < 1e-11);
}

TEST_CASE("Lanczos path matches a spectral reference") {
  const Operator h = random_hermitian(kDenseExpmMaxDim + 88, 0.01, 2);
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  StateVector psi(h.rows());
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = cplx(n(rng), n(rng));
  psi.normalize();
  const StateVector got = evolve_const(h, 2.5, psi);
  CHECK((got - reference_expm(h, 2.5) * psi).norm() < 1e-10);
  CHECK(got.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sparse inputs on a large space evolve through small components") {
  const HilbertSpec s(5, 1);  // 2048 states
  REQUIRE(s.dim() > kDenseExpmMaxDim);
  const Operator h = eff_raman_h(s, {1.0, 10.0}, 0, 1.0, 10.0, kPi);
  const double t = 7.3;
  const std::vector<int> levels{1, 0, 1, 0, 0};
  const StateVector out = evolve_const(h, t, product_state(s, levels, 0));
  const HilbertSpec one(1, 1);
  const StateVector ref = closed_form_raman(one, t, 1.0, 10.0, RamanInput::one_vacuum);
  const std::vector<int> l10{1, 0, 1, 0, 0}, l21{2, 0, 1, 0, 0};
  CHECK(std::abs(out(s.index(l10, 0)) - ref(one.index(std::vector<int>{1}, 0))) < 1e-12);
  CHECK(std::abs(out(s.index(l21, 1)) - ref(one.index(std::vector<int>{2}, 1))) < 1e-12);
  CHECK(out.norm() == doctest::Approx(1.0));
}

TEST_CASE("constant evolution composes as a one-parameter group") {
  const Operator h = random_hermitian(24, 0.3, 4);
  const StateVector psi = StateVector::Unit(24, 5);
  const StateVector a = evolve_const(h, 1.1, evolve_const(h, 0.8, psi));
  CHECK((a - evolve_const(h, 1.9, psi)).norm() < 1e-12);
  CHECK((evolve_const(h, -0.8, evolve_const(h, 0.8, psi)) - psi).norm() < 1e-12);
  CHECK((evolve_const(h, 0.0, psi) - psi).norm() == 0.0);
}

TEST_CASE("diagonal Hamiltonians evolve by exact phases") {
  const HilbertSpec s(2, 2);
  const Operator h = 0.3 * number_op(s) + 1.2 * projector(s, 1, 2);
  const std::vector<int> levels{0, 2};
  const StateVector out = evolve_const(h, 2.0, product_state(s, levels, 2));
  CHECK(std::abs(out(s.index(levels, 2)) - std::polar(1.0, -2.0 * (0.6 + 1.2))) <
        1e-14);
}

TEST_CASE("non-Hermitian and mismatched inputs are rejected") {
  const HilbertSpec s(1, 1);
  const Operator bad = transition_op(s, 0, 1, 2);
  CHECK_THROWS_AS(evolve_const(bad, 1.0, product_state(s, {1}, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve_const(number_op(s), 1.0, StateVector(StateVector::Zero(3))),
                  std::invalid_argument);
}

TEST_CASE("Raman closed form: resonant exchange with a Stark phase") {
  const HilbertSpec s(1, 2);
  const double g = 1.0, dc = 10.0, e = g * g / dc;
  const Operator h = eff_raman_h(s, {g, dc}, 0, g, dc, kPi);
  for (double t : {0.0, 3.0, kPi / (2.0 * e), 21.0}) {
    for (RamanInput in : {RamanInput::ground_vacuum, RamanInput::one_vacuum,
                          RamanInput::two_photon}) {
      const StateVector start = closed_form_raman(s, 0.0, g, dc, in);
      CHECK((evolve_const(h, t, start) - closed_form_raman(s, t, g, dc, in)).norm() <
            1e-12);
    }
  }
  // A quarter period maps |1,0> fully onto |2,1>.
  const StateVector swap =
      closed_form_raman(s, kPi / (2.0 * e), g, dc, RamanInput::one_vacuum);
  CHECK(std::abs(swap(s.index(std::vector<int>{2}, 1))) == doctest::Approx(1.0));
  CHECK_THROWS(closed_form_raman(HilbertSpec(2, 1), 1.0, g, dc, RamanInput::one_vacuum));
}

TEST_CASE("resonant rotation closed form") {
  const HilbertSpec s(1, 1);
  const double w = 3.0;
  for (double phi : {0.0, 1.0, -kPi / 2.0}) {
    const Operator h = resonant_pulse_h(s, 0, w, phi);
    for (int level : {1, 2})
      for (double t : {0.2, kPi / w, 1.9}) {
        const StateVector out = evolve_const(h, t, product_state(s, {level}, 0));
        const Eigen::Vector2cd amp = closed_form_rotation(t, w, phi, level);
        CHECK(std::abs(out(s.index(std::vector<int>{1}, 0)) - amp(0)) < 1e-12);
        CHECK(std::abs(out(s.index(std::vector<int>{2}, 0)) - amp(1)) < 1e-12);
      }
  }
  CHECK_THROWS(closed_form_rotation(1.0, w, 0.0, 3));
}

TEST_CASE("RK4 reproduces a constant Hamiltonian and reports drift") {
  const Operator h = random_hermitian(16, 0.3, 5);
  TimeDependentHamiltonian td(16);
  td.add_static(h);
  const StateVector psi = StateVector::Unit(16, 2);
  TdOptions opts;
  opts.tolerance = 1e-10;
  const EvolutionResult r = evolve_td(td, 0.0, 3.0, psi, opts);
  CHECK((r.state - evolve_const(h, 3.0, psi)).norm() < 1e-9);
  CHECK(r.stats.steps > 0);
  CHECK(r.stats.error_estimate < 1e-10);
  CHECK(r.stats.max_norm_drift < 1e-9);
}

TEST_CASE("RK4 handles an oscillating drive against the interaction picture") {
  // H = w/2 (e^{i nu t}|1><2| + h.c.) checked against its rotating frame.
  const HilbertSpec s(1, 0);
  const double w = 0.8, nu = 2.0;
  TimeDependentHamiltonian td(s.dim());
  td.add_oscillating(0.5 * w * transition_op(s, 0, 2, 1), nu);
  TdOptions opts;
  opts.tolerance = 1e-11;
  const double t = 4.0;
  const StateVector out = evolve_td(td, 0.0, t, product_state(s, {1}, 0), opts).state;
  // In the frame exp(i K t), K = nu |2><2|, the problem is static.
  Operator k = nu * projector(s, 0, 2);
  Operator hr = 0.5 * w * (transition_op(s, 0, 2, 1) + transition_op(s, 0, 1, 2));
  hr -= k;
  const StateVector rot = evolve_const(hr, t, product_state(s, {1}, 0));
  RotatingFrame f{Eigen::VectorXd(Eigen::MatrixXcd(k).diagonal().real())};
  CHECK((f.from_rotating(rot, t) - out).norm() < 1e-9);
}

TEST_CASE("step-size underflow is reported") {
  const Operator h = random_hermitian(8, 0.5, 6);
  TimeDependentHamiltonian td(8);
  td.add_static(h);
  TdOptions opts;
  opts.tolerance = 1e-14;
  opts.max_steps = 64;
  CHECK_THROWS_AS(evolve_td(td, 0.0, 50.0, StateVector::Unit(8, 0), opts),
                  std::runtime_error);
}

TEST_CASE("zero Hamiltonian leaves the state alone") {
  TimeDependentHamiltonian td(6);
  const StateVector psi = StateVector::Unit(6, 3);
  CHECK((evolve_td(td, 0.0, 10.0, psi).state - psi).norm() == 0.0);
  CHECK((evolve_const(Operator(6, 6), 10.0, psi) - psi).norm() == 0.0);
}

TEST_CASE("propagators are unitary") {
  const Operator h = random_hermitian(30, 0.2, 7);
  CHECK(unitarity_error(propagator(h, 5.0)) < 1e-12);
  TimeDependentHamiltonian td(30);
  td.add_static(h);
  td.add_oscillating(random_hermitian(30, 0.1, 8), 1.5);
  IntegratorStats stats;
  TdOptions opts;
  opts.tolerance = 1e-10;
  CHECK(unitarity_error(propagator(td, 0.0, 1.0, opts, &stats)) < 1e-9);
  CHECK(stats.max_norm_drift < 1e-9);
}

TEST_CASE("monitored evolution samples the |3> population") {
  const HilbertSpec s(1, 2);
  SystemParams p;
  p.energies = {0.0, 10.0, 14.0, 20.0};
  p.omega_c = p.omega32() - 5.0;
  const DrivenForm f = full_raman_h(s, p, {0, {p.omega31() - 5.0, 1.0, kPi, {1, 3}}});
  const Eigen::MatrixXcd in = product_state(s, {1}, 0);
  const BlockEvolution r = evolve_const_monitored(s, f.rotating, 9.0, in, 0.05);
  CHECK((r.block - evolve_const(f.rotating, 9.0, in)).norm() < 1e-11);
  REQUIRE(r.trajectory.times.size() >= 180);
  for (std::size_t i = 1; i < r.trajectory.times.size(); ++i)
    CHECK(r.trajectory.times[i] - r.trajectory.times[i - 1] <= 0.05 + 1e-12);
  const double peak =
      *std::max_element(r.trajectory.max_pop3.begin(), r.trajectory.max_pop3.end());
  CHECK(peak > 0.0);
  CHECK(peak < 4.0 / 25.0);  // ~ (2 Omega/Delta)^2 at most
  CHECK_THROWS_AS(evolve_const_monitored(s, f.rotating, 1.0, in, 0.0),
                  std::invalid_argument);
}
