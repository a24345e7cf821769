#pragma once

// Time evolution: constant Hamiltonians by matrix exponential (dense
// scaling-and-squaring for small spaces, Lanczos for large ones),
// time-dependent Hamiltonians by RK4 with a step-doubling error check, and
// the closed-form two-level solutions used as oracles.

#include <functional>
#include <optional>

#include "cqed/hamiltonian.hpp"
#include "cqed/statespace.hpp"

namespace cqed {

struct IntegratorStats {
  std::size_t steps = 0;
  double max_norm_drift = 0.0;
  double error_estimate = 0.0;  // step-doubling difference (RK4 only)
};

// Sampled observables. max_pop3 is the largest |3> population over all
// sites (and all evolved columns for block evolution).
struct Trajectory {
  std::vector<double> times;
  std::vector<double> max_pop3;
  std::vector<double> photons;
};

struct EvolutionResult {
  StateVector state;
  Trajectory trajectory;
  IntegratorStats stats;
};

struct BlockEvolution {
  Eigen::MatrixXcd block;
  Trajectory trajectory;
  IntegratorStats stats;
};

// Above this dimension the Lanczos path replaces the dense exponential.
inline constexpr std::size_t kDenseExpmMaxDim = 512;

// psi(t) = exp(-i H t) psi. Throws std::invalid_argument for non-Hermitian H.
StateVector evolve_const(const Operator& h, double t, const StateVector& psi);
Eigen::MatrixXcd evolve_const(const Operator& h, double t,
                              const Eigen::MatrixXcd& block);

// As evolve_const on every column, sampling populations at substeps no
// longer than max_sample_dt. Sample times are offsets from the start.
BlockEvolution evolve_const_monitored(const HilbertSpec& spec,
                                      const Operator& h, double t,
                                      const Eigen::MatrixXcd& block,
                                      double max_sample_dt);

// out = H(t) psi
using HamiltonianAction =
    std::function<void(double t, const StateVector& psi, StateVector& out)>;

struct TdOptions {
  double tolerance = 1e-8;
  // Initial step satisfies norm_bound * h <= initial_step_scale.
  double initial_step_scale = 0.05;
  std::size_t max_steps = 20'000'000;
};

// Solves i dpsi/dt = H(t) psi on [t0, t1]. The step count doubles until two
// successive solutions agree within tolerance. No renormalization is done;
// the norm drift is reported. Throws std::runtime_error on step underflow.
EvolutionResult evolve_td(const HamiltonianAction& h, double norm_bound,
                          double t0, double t1, const StateVector& psi,
                          const TdOptions& options = {});
EvolutionResult evolve_td(const TimeDependentHamiltonian& h, double t0,
                          double t1, const StateVector& psi,
                          const TdOptions& options = {});

// Full unitary, column by column.
Eigen::MatrixXcd propagator(const Operator& h, double t);
Eigen::MatrixXcd propagator(const TimeDependentHamiltonian& h, double t0,
                            double t1, const TdOptions& options = {},
                            IntegratorStats* stats = nullptr);

// max |U^dagger U - I|
double unitarity_error(const Eigen::MatrixXcd& u);

enum class RamanInput { ground_vacuum, one_vacuum, two_photon };

// Resonant Raman transfer for Omega = g, Delta = Delta_c on a single system:
//   |2>|1>_c -> e^{i e t}[cos(e t)|2>|1>_c - i sin(e t)|1>|0>_c]
//   |1>|0>_c -> e^{i e t}[-i sin(e t)|2>|1>_c + cos(e t)|1>|0>_c]
//   |0>|0>_c unchanged,  e = g^2/Delta_c.
StateVector closed_form_raman(const HilbertSpec& spec, double t, double g,
                              double delta_c, RamanInput input);

// Resonant |1> <-> |2> rotation; returns the (|1>, |2>) amplitudes.
//   |1> -> cos(W t/2)|1> - i e^{-i phi} sin(W t/2)|2>
//   |2> -> -i e^{i phi} sin(W t/2)|1> + cos(W t/2)|2>
Eigen::Vector2cd closed_form_rotation(double t, double omega_tilde, double phi,
                                      int input_level);

}  // namespace cqed
