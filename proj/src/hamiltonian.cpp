#include "cqed/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqed {

namespace {

Operator zero_op(const HilbertSpec& spec) {
  return Operator(spec.dim(), spec.dim());
}

Operator total_projector(const HilbertSpec& spec, int level) {
  Operator sum = zero_op(spec);
  for (int s = 0; s < spec.n_systems(); ++s) sum += projector(spec, s, level);
  return sum;
}

Eigen::VectorXd diag_real(const Operator& op) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(op.rows());
  for (int k = 0; k < op.outerSize(); ++k)
    for (Operator::InnerIterator it(op, k); it; ++it)
      if (it.row() == it.col()) d(it.row()) += it.value().real();
  return d;
}

// sum_l E_l n_l + omega_c a^+ a
Operator bare_h(const HilbertSpec& spec, const SystemParams& p) {
  Operator h = p.omega_c * number_op(spec);
  for (int s = 0; s < spec.n_systems(); ++s)
    for (int l = 0; l < HilbertSpec::kLevels; ++l)
      h += p.energies[l] * projector(spec, s, l);
  return h;
}

void require_13(const DriveParams& d) {
  if (d.transition != std::array<int, 2>{1, 3})
    throw std::invalid_argument(
        "off-resonant drives must address the 1<->3 transition, got " +
        std::to_string(d.transition[0]) + "<->" +
        std::to_string(d.transition[1]));
}

void add_margin(MarginSink sink, std::string name, double big, double small,
                double required = 10.0) {
  if (sink == nullptr) return;
  const double ratio = small == 0.0 ? HUGE_VAL : std::abs(big / small);
  sink->push_back({std::move(name), ratio, required});
}

double max_rabi(std::span<const TargetDrive> targets) {
  double m = 0.0;
  for (const auto& t : targets) m = std::max(m, std::abs(t.rabi));
  return m;
}

}  // namespace

void SystemParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
  for (int l = 0; l < 3; ++l)
    if (!(energies[l] < energies[l + 1]))
      throw std::invalid_argument("energies must satisfy E0 < E1 < E2 < E3");
}

double chi_coupling(double rabi, double g, double delta_c, double delta_prime) {
  return rabi * g * (1.0 / delta_c + 1.0 / delta_prime) / 2.0;
}

DerivedCouplings couplings_from_detunings(double g, double delta_c,
                                          double delta_prime,
                                          std::span<const double> target_rabi) {
  DerivedCouplings c;
  c.delta = delta_c;
  c.delta_c = delta_c;
  c.delta_prime = delta_prime;
  c.delta_gap = delta_c - delta_prime;
  for (double rabi : target_rabi)
    c.chi.push_back(chi_coupling(rabi, g, delta_c, delta_prime));
  return c;
}

DerivedCouplings derive_couplings(const SystemParams& params,
                                  double raman_omega, double target_omega,
                                  std::span<const double> target_rabi) {
  DerivedCouplings c = couplings_from_detunings(
      params.g, params.cavity_detuning(), params.omega31() - target_omega,
      target_rabi);
  c.delta = params.omega31() - raman_omega;
  return c;
}

// ---------------------------------------------------------------------------

TimeDependentHamiltonian::TimeDependentHamiltonian(std::size_t dim)
    : dim_(dim), static_(dim, dim) {}

void TimeDependentHamiltonian::add_static(const Operator& h) { static_ += h; }

void TimeDependentHamiltonian::add_oscillating(const Operator& a, double freq) {
  terms_.push_back({a, Operator(a.adjoint()), freq});
}

Operator TimeDependentHamiltonian::at(double t) const {
  Operator h = static_;
  for (const auto& term : terms_) {
    const cplx phase = std::polar(1.0, term.freq * t);
    h += phase * term.a + std::conj(phase) * term.a_dag;
  }
  return h;
}

void TimeDependentHamiltonian::apply(double t, const StateVector& psi,
                                     StateVector& out) const {
  out.noalias() = static_ * psi;
  for (const auto& term : terms_) {
    const cplx phase = std::polar(1.0, term.freq * t);
    out.noalias() += phase * (term.a * psi);
    out.noalias() += std::conj(phase) * (term.a_dag * psi);
  }
}

double TimeDependentHamiltonian::norm_bound() const {
  double b = cqed::norm_bound(static_);
  for (const auto& term : terms_) b += 2.0 * cqed::norm_bound(term.a);
  return b;
}

StateVector RotatingFrame::to_rotating(const StateVector& psi, double t) const {
  StateVector out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    out(i) = std::polar(1.0, generator(i) * t) * psi(i);
  return out;
}

StateVector RotatingFrame::from_rotating(const StateVector& psi,
                                         double t) const {
  StateVector out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    out(i) = std::polar(1.0, -generator(i) * t) * psi(i);
  return out;
}

Eigen::MatrixXcd RotatingFrame::to_rotating(const Eigen::MatrixXcd& block,
                                            double t) const {
  Eigen::VectorXcd phases(generator.size());
  for (Eigen::Index i = 0; i < generator.size(); ++i)
    phases(i) = std::polar(1.0, generator(i) * t);
  return phases.asDiagonal() * block;
}

Eigen::MatrixXcd RotatingFrame::from_rotating(const Eigen::MatrixXcd& block,
                                              double t) const {
  Eigen::VectorXcd phases(generator.size());
  for (Eigen::Index i = 0; i < generator.size(); ++i)
    phases(i) = std::polar(1.0, -generator(i) * t);
  return phases.asDiagonal() * block;
}

// ---------------------------------------------------------------------------

RotatingForm rotating_h(const HilbertSpec& spec, double g, double delta_c,
                        double drive_detuning,
                        std::span<const OffResonantDrive> drives,
                        std::span<const ResonantPulse> pulses) {
  const double det = drives.empty() ? delta_c : drive_detuning;
  const Operator a = annihilation(spec);
  const Operator ad = creation(spec);
  const Operator n3 = total_projector(spec, 3);
  const Operator nc = number_op(spec);

  // K = -det n_3 + (Delta_c - det) a^+a removes every oscillating factor.
  Operator k_op = -det * n3 + (delta_c - det) * nc;
  Operator h = -k_op;
  for (int s = 0; s < spec.n_systems(); ++s) {
    Operator c = g * (ad * transition_op(spec, s, 3, 2));
    h += c + Operator(c.adjoint());
  }
  for (const auto& d : drives) {
    Operator c = d.rabi * std::polar(1.0, d.phase) *
                 transition_op(spec, d.site, 3, 1);
    h += c + Operator(c.adjoint());
  }
  for (const auto& p : pulses)
    h += resonant_pulse_h(spec, p.site, p.rabi, p.phase);
  h.prune(cplx(0.0));
  return {h, RotatingFrame{diag_real(k_op)}};
}

DrivenForm full_driven_h(const HilbertSpec& spec, const SystemParams& params,
                         std::span<const SiteDrive> drives,
                         std::span<const ResonantPulse> pulses,
                         const DrivenOptions& options) {
  params.validate();
  for (const auto& d : drives) {
    spec.check_site(d.site);
    require_13(d.drive);
  }
  for (const auto& p : pulses) spec.check_site(p.site);
  for (std::size_t i = 1; i < drives.size(); ++i)
    if (drives[i].drive.omega != drives[0].drive.omega)
      throw std::invalid_argument(
          "all off-resonant drives must share one frequency");

  const double delta_c = params.cavity_detuning();
  const double drive_det =
      drives.empty() ? delta_c : params.omega31() - drives[0].drive.omega;
  const std::size_t dim = spec.dim();
  const Operator ad = creation(spec);
  const Operator h0 = bare_h(spec, params);
  const auto& e = params.energies;

  DrivenForm form{TimeDependentHamiltonian(dim), TimeDependentHamiltonian(dim),
                  Operator(dim, dim), RotatingFrame{}, RotatingFrame{}};
  form.lab.add_static(h0);

  // Cavity on 2<->3 of every site.
  for (int s = 0; s < spec.n_systems(); ++s) {
    Operator c = params.g * (ad * transition_op(spec, s, 3, 2));
    form.lab.add_static(c + Operator(c.adjoint()));
    form.interaction.add_oscillating(c, -delta_c);
    if (options.level0_couplings) {
      Operator c01 = params.g * (ad * transition_op(spec, s, 1, 0));
      Operator c12 = params.g * (ad * transition_op(spec, s, 2, 1));
      form.lab.add_static(c01 + Operator(c01.adjoint()));
      form.lab.add_static(c12 + Operator(c12.adjoint()));
      form.interaction.add_oscillating(c01, params.omega_c - (e[1] - e[0]));
      form.interaction.add_oscillating(c12, params.omega_c - (e[2] - e[1]));
    }
  }

  std::vector<OffResonantDrive> rot_drives;
  for (const auto& d : drives) {
    const auto& dp = d.drive;
    Operator c = dp.rabi * std::polar(1.0, dp.phase) *
                 transition_op(spec, d.site, 3, 1);
    form.lab.add_oscillating(c, dp.omega);
    form.interaction.add_oscillating(c, dp.omega - params.omega31());
    rot_drives.push_back({d.site, dp.rabi, dp.phase});
    if (options.level0_couplings) {
      for (int l = 1; l < 4; ++l) {
        Operator c0 = dp.rabi * std::polar(1.0, dp.phase) *
                      transition_op(spec, d.site, l, 0);
        form.lab.add_oscillating(c0, dp.omega);
        form.interaction.add_oscillating(c0, dp.omega - (e[l] - e[0]));
      }
    }
  }

  for (const auto& p : pulses) {
    Operator c = 0.5 * p.rabi * std::polar(1.0, p.phase) *
                 transition_op(spec, p.site, 2, 1);
    form.lab.add_oscillating(c, params.omega21());
    form.interaction.add_oscillating(c, 0.0);
  }

  RotatingForm rot =
      rotating_h(spec, params.g, delta_c, drive_det, rot_drives, pulses);
  form.rotating = std::move(rot.h);
  form.interaction_frame = rot.frame;
  form.lab_frame.generator = diag_real(h0) + rot.frame.generator;
  return form;
}

DrivenForm full_raman_h(const HilbertSpec& spec, const SystemParams& params,
                        const SiteDrive& drive, const DrivenOptions& options) {
  return full_driven_h(spec, params, std::span<const SiteDrive>(&drive, 1), {},
                       options);
}

DrivenForm full_multidrive_h(const HilbertSpec& spec,
                             const SystemParams& params,
                             std::span<const SiteDrive> drives,
                             const DrivenOptions& options) {
  return full_driven_h(spec, params, drives, {}, options);
}

DrivenForm full_dispersive_h(const HilbertSpec& spec,
                             const SystemParams& params) {
  return full_driven_h(spec, params, {}, {});
}

// ---------------------------------------------------------------------------

Operator eff_raman_h(const HilbertSpec& spec, const CavityCoupling& cav,
                     int site, double rabi, double delta, double phase,
                     MarginSink margins) {
  spec.check_site(site);
  if (std::abs(delta - cav.delta_c) > 1e-12 * std::max(1.0, std::abs(delta)))
    throw std::invalid_argument(
        "resonant Raman coupling requires Delta == Delta_c");
  add_margin(margins, "Delta_c >> g", cav.delta_c, cav.g);
  add_margin(margins, "Delta >> Omega", delta, rabi);

  const Operator ad = creation(spec);
  const Operator nc = number_op(spec);
  Operator h = -(rabi * rabi / delta) * projector(spec, site, 1) -
               (cav.g * cav.g / cav.delta_c) * (nc * projector(spec, site, 2));
  Operator c = -(rabi * cav.g / cav.delta_c) * std::polar(1.0, -phase) *
               (ad * transition_op(spec, site, 1, 2));
  h += c + Operator(c.adjoint());
  h.prune(cplx(0.0));
  return h;
}

namespace {

void offres_margins(MarginSink margins, const CavityCoupling& cav,
                    double delta_prime, std::span<const TargetDrive> targets,
                    bool dispersive) {
  if (margins == nullptr) return;
  const double omax = max_rabi(targets);
  add_margin(margins, "Delta_c >> g", cav.delta_c, cav.g);
  add_margin(margins, "Delta' >> max Omega_k", delta_prime, omax);
  if (!dispersive) return;
  const double gap = cav.delta_c - delta_prime;
  const double chimax = chi_coupling(omax, cav.g, cav.delta_c, delta_prime);
  add_margin(margins, "delta >> g^2/Delta_c", gap, cav.g * cav.g / cav.delta_c);
  add_margin(margins, "delta >> max Omega_k^2/Delta'", gap,
             omax * omax / delta_prime);
  add_margin(margins, "delta >> max chi_k", gap, chimax);
}

}  // namespace

TimeDependentHamiltonian eff_offres_raman_h(const HilbertSpec& spec,
                                            const CavityCoupling& cav,
                                            double delta_prime,
                                            std::span<const TargetDrive> targets,
                                            MarginSink margins) {
  offres_margins(margins, cav, delta_prime, targets, false);
  const double gap = cav.delta_c - delta_prime;
  const Operator ad = creation(spec);
  const Operator nc = number_op(spec);
  TimeDependentHamiltonian h(spec.dim());
  for (const auto& t : targets) {
    spec.check_site(t.site);
    const double chi = chi_coupling(t.rabi, cav.g, cav.delta_c, delta_prime);
    h.add_static(-(t.rabi * t.rabi / delta_prime) * projector(spec, t.site, 1) -
                 (cav.g * cav.g / cav.delta_c) *
                     (nc * projector(spec, t.site, 2)));
    Operator c = -chi * std::polar(1.0, -t.phase) *
                 (ad * transition_op(spec, t.site, 1, 2));
    h.add_oscillating(c, -gap);
  }
  return h;
}

Operator eff_dispersive_raman_h(const HilbertSpec& spec,
                                const CavityCoupling& cav, double delta_prime,
                                std::span<const TargetDrive> targets,
                                MarginSink margins) {
  offres_margins(margins, cav, delta_prime, targets, true);
  const double gap = cav.delta_c - delta_prime;
  const Operator a = annihilation(spec);
  const Operator ad = creation(spec);
  const Operator nc = ad * a;
  const Operator aad = a * ad;
  Operator h = zero_op(spec);
  std::vector<double> chi;
  for (const auto& t : targets) {
    spec.check_site(t.site);
    chi.push_back(chi_coupling(t.rabi, cav.g, cav.delta_c, delta_prime));
    const Operator n1 = projector(spec, t.site, 1);
    const Operator n2 = projector(spec, t.site, 2);
    h += -(t.rabi * t.rabi / delta_prime) * n1 -
         (cav.g * cav.g / cav.delta_c) * (nc * n2);
    h += -(chi.back() * chi.back() / gap) * (nc * n2 - aad * n1);
  }
  // Cavity-mediated exchange, one term per unordered pair.
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      const cplx coef = chi[i] * chi[j] / gap *
                        std::polar(1.0, targets[j].phase - targets[i].phase);
      Operator c = coef * (transition_op(spec, targets[i].site, 1, 2) *
                           transition_op(spec, targets[j].site, 2, 1));
      h += c + Operator(c.adjoint());
    }
  h.prune(cplx(0.0));
  return h;
}

Operator eff_phase_h(const HilbertSpec& spec, const CavityCoupling& cav,
                     double delta_prime, std::span<const TargetDrive> targets,
                     MarginSink margins) {
  offres_margins(margins, cav, delta_prime, targets, true);
  const double gap = cav.delta_c - delta_prime;
  const Operator nc = number_op(spec);
  Operator h = zero_op(spec);
  for (const auto& t : targets) {
    spec.check_site(t.site);
    const double chi = chi_coupling(t.rabi, cav.g, cav.delta_c, delta_prime);
    h += -(cav.g * cav.g / cav.delta_c + chi * chi / gap) *
         (nc * projector(spec, t.site, 2));
  }
  h.prune(cplx(0.0));
  return h;
}

Operator eff_dispersive_h(const HilbertSpec& spec, const CavityCoupling& cav,
                          std::span<const int> sites, MarginSink margins) {
  add_margin(margins, "Delta_c >> g", cav.delta_c, cav.g);
  const Operator a = annihilation(spec);
  const Operator ad = creation(spec);
  const double s = cav.g * cav.g / cav.delta_c;
  Operator h = zero_op(spec);
  for (int site : sites) {
    spec.check_site(site);
    h += -s * ((ad * a) * projector(spec, site, 2) -
               (a * ad) * projector(spec, site, 3));
  }
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      Operator c = s * (transition_op(spec, sites[i], 2, 3) *
                        transition_op(spec, sites[j], 3, 2));
      h += c + Operator(c.adjoint());
    }
  h.prune(cplx(0.0));
  return h;
}

Operator eff_photon_stark_h(const HilbertSpec& spec, const CavityCoupling& cav,
                            std::span<const int> sites) {
  const Operator nc = number_op(spec);
  Operator h = zero_op(spec);
  for (int site : sites) {
    spec.check_site(site);
    h += -(cav.g * cav.g / cav.delta_c) * (nc * projector(spec, site, 2));
  }
  h.prune(cplx(0.0));
  return h;
}

Operator resonant_pulse_h(const HilbertSpec& spec, int site, double rabi,
                          double phase) {
  Operator c =
      0.5 * rabi * std::polar(1.0, phase) * transition_op(spec, site, 2, 1);
  Operator h = c + Operator(c.adjoint());
  h.prune(cplx(0.0));
  return h;
}

}  // namespace cqed
