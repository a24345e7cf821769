#pragma once

// Hamiltonians for four-level systems coupled to one cavity mode.
//
// Units: hbar = 1, every frequency is an angular frequency. Level |0> is
// carried in the space but only couples to anything when the level-0 stress
// option is enabled. Site 0 is system 1 (the control in the gate protocol).
//
// Three pictures are used throughout:
//   lab          H(t) in the Schroedinger picture, bare energies included
//   interaction  w.r.t. H0 = sum_l E_l |l><l| + omega_c a^+ a
//   rotating     a further diagonal frame in which the driven problem is
//                time independent

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cqed/statespace.hpp"

namespace cqed {

struct SystemParams {
  std::array<double, 4> energies{0.0, 1.0, 2.0, 3.0};
  double omega_c = 0.0;
  double g = 1.0;
  // Decoherence references; only used by the timing budget.
  double gamma2 = 0.0;
  double quality_factor = 0.0;
  double nu_c_hz = 0.0;

  double omega21() const { return energies[2] - energies[1]; }
  double omega31() const { return energies[3] - energies[1]; }
  double omega32() const { return energies[3] - energies[2]; }
  // Delta_c = omega_32 - omega_c
  double cavity_detuning() const { return omega32() - omega_c; }

  // Throws std::invalid_argument unless g > 0 and E0 < E1 < E2 < E3.
  void validate() const;
};

// A classical pulse: Omega (e^{i phi} e^{i omega t} |from><to| + h.c.).
struct DriveParams {
  double omega = 0.0;
  double rabi = 0.0;
  double phase = 0.0;
  std::array<int, 2> transition{1, 3};
};

struct SiteDrive {
  int site = 0;
  DriveParams drive;
};

// Resonant |1> <-> |2> pulse (omega_r = omega_21).
struct ResonantPulse {
  int site = 0;
  double rabi = 0.0;
  double phase = 0.0;
};

struct DerivedCouplings {
  double delta = 0.0;        // omega_31 - omega (Raman pulse on the control)
  double delta_c = 0.0;      // omega_32 - omega_c
  double delta_prime = 0.0;  // omega_31 - omega' (target pulses)
  double delta_gap = 0.0;    // delta = Delta_c - Delta'
  std::vector<double> chi;   // per-target off-resonant Raman coupling
};

// chi = Omega g (1/Delta_c + 1/Delta') / 2
double chi_coupling(double rabi, double g, double delta_c, double delta_prime);

DerivedCouplings derive_couplings(const SystemParams& params,
                                  double raman_omega, double target_omega,
                                  std::span<const double> target_rabi);
DerivedCouplings couplings_from_detunings(double g, double delta_c,
                                          double delta_prime,
                                          std::span<const double> target_rabi);

// H(t) = H_static + sum_j (e^{i w_j t} A_j + e^{-i w_j t} A_j^dagger)
class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(std::size_t dim);

  void add_static(const Operator& h);
  void add_oscillating(const Operator& a, double freq);

  std::size_t dim() const { return dim_; }
  Operator at(double t) const;
  void apply(double t, const StateVector& psi, StateVector& out) const;
  // Upper bound on ||H(t)||_2 valid for all t.
  double norm_bound() const;

 private:
  struct Term {
    Operator a;
    Operator a_dag;
    double freq;
  };
  std::size_t dim_;
  Operator static_;
  std::vector<Term> terms_;
};

// Diagonal frame: psi_rot(t) = exp(i K t) psi(t).
struct RotatingFrame {
  Eigen::VectorXd generator;

  StateVector to_rotating(const StateVector& psi, double t) const;
  StateVector from_rotating(const StateVector& psi, double t) const;
  Eigen::MatrixXcd to_rotating(const Eigen::MatrixXcd& block, double t) const;
  Eigen::MatrixXcd from_rotating(const Eigen::MatrixXcd& block,
                                 double t) const;
};

struct DrivenForm {
  TimeDependentHamiltonian lab;
  TimeDependentHamiltonian interaction;
  Operator rotating;
  RotatingFrame lab_frame;          // lab -> rotating
  RotatingFrame interaction_frame;  // interaction -> rotating
};

struct DrivenOptions {
  // Adds far-detuned couplings of level |0> (drives on 0<->1,2,3 and the
  // cavity on 0<->1, 1<->2) to the lab and interaction forms. The rotating
  // form always holds the baseline model.
  bool level0_couplings = false;
};

// Cavity coupled to 2<->3 of every site, plus the given 1<->3 drives and
// resonant 1<->2 pulses. All 1<->3 drives must share one frequency.
DrivenForm full_driven_h(const HilbertSpec& spec, const SystemParams& params,
                         std::span<const SiteDrive> drives,
                         std::span<const ResonantPulse> pulses,
                         const DrivenOptions& options = {});

// Single Raman drive on one site (system 1 in the protocol).
DrivenForm full_raman_h(const HilbertSpec& spec, const SystemParams& params,
                        const SiteDrive& drive,
                        const DrivenOptions& options = {});

// Drives of a common frequency omega' on each listed site.
DrivenForm full_multidrive_h(const HilbertSpec& spec,
                             const SystemParams& params,
                             std::span<const SiteDrive> drives,
                             const DrivenOptions& options = {});

// Cavity only; the lab form is static and the interaction form oscillates at
// Delta_c.
DrivenForm full_dispersive_h(const HilbertSpec& spec,
                             const SystemParams& params);

// Rotating-frame Hamiltonian from detunings alone, relative to the
// interaction picture. drive_detuning is the common detuning of the 1<->3
// drives (ignored when there are none).
struct RotatingForm {
  Operator h;
  RotatingFrame frame;
};
struct OffResonantDrive {
  int site = 0;
  double rabi = 0.0;
  double phase = 0.0;
};
RotatingForm rotating_h(const HilbertSpec& spec, double g, double delta_c,
                        double drive_detuning,
                        std::span<const OffResonantDrive> drives,
                        std::span<const ResonantPulse> pulses);

// ---- effective (adiabatically eliminated) Hamiltonians ----

struct CavityCoupling {
  double g = 1.0;
  double delta_c = 10.0;
};

struct RegimeMargin {
  std::string condition;
  double ratio = 0.0;
  double required = 10.0;
  bool ok() const { return ratio >= required; }
};
using MarginSink = std::vector<RegimeMargin>*;

// Resonant Raman coupling on one site; requires delta == delta_c.
// -[Omega^2/Delta n_1 + g^2/Delta_c a^+a n_2
//   + (Omega g/Delta_c)(e^{-i phi} a^+ s12^+ + h.c.)]
Operator eff_raman_h(const HilbertSpec& spec, const CavityCoupling& cav,
                     int site, double rabi, double delta, double phase,
                     MarginSink margins = nullptr);

struct TargetDrive {
  int site = 0;
  double rabi = 0.0;
  double phase = 0.0;
};

TimeDependentHamiltonian eff_offres_raman_h(const HilbertSpec& spec,
                                            const CavityCoupling& cav,
                                            double delta_prime,
                                            std::span<const TargetDrive> targets,
                                            MarginSink margins = nullptr);

Operator eff_dispersive_raman_h(const HilbertSpec& spec,
                                const CavityCoupling& cav, double delta_prime,
                                std::span<const TargetDrive> targets,
                                MarginSink margins = nullptr);

// -sum_k (g^2/Delta_c + chi_k^2/delta) a^+a |2><2|_k, diagonal.
Operator eff_phase_h(const HilbertSpec& spec, const CavityCoupling& cav,
                     double delta_prime, std::span<const TargetDrive> targets,
                     MarginSink margins = nullptr);

Operator eff_dispersive_h(const HilbertSpec& spec, const CavityCoupling& cav,
                          std::span<const int> sites,
                          MarginSink margins = nullptr);

// -sum_k (g^2/Delta_c) a^+a |2><2|_k, diagonal.
Operator eff_photon_stark_h(const HilbertSpec& spec, const CavityCoupling& cav,
                            std::span<const int> sites);

// (Omega~/2)(e^{i phi}|1><2| + h.c.) on one site.
Operator resonant_pulse_h(const HilbertSpec& spec, int site, double rabi,
                          double phase);

}  // namespace cqed
