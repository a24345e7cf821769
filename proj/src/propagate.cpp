#include "cqed/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace cqed {

namespace {

constexpr int kKrylovDim = 30;
// ||H|| dt per Lanczos substep; (4^30/30!) keeps the truncation near 1e-14.
constexpr double kKrylovStep = 4.0;

void require_hermitian(const Operator& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("Hamiltonian must be square");
  double scale = 1.0;
  for (int k = 0; k < h.outerSize(); ++k)
    for (Operator::InnerIterator it(h, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  const double err = hermiticity_error(h);
  if (err > 1e-10 * scale)
    throw std::invalid_argument("Hamiltonian is not Hermitian (|H - H^+| = " +
                                std::to_string(err) + ")");
}

Eigen::MatrixXcd dense_expm(const Operator& h, double t) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd(h) * cplx(0.0, -t);
  return a.exp();
}

StateVector diagonal_evolve(const Operator& h, double t,
                            const StateVector& psi) {
  StateVector out = psi;
  for (int k = 0; k < h.outerSize(); ++k)
    for (Operator::InnerIterator it(h, k); it; ++it)
      out(it.row()) *= std::polar(1.0, -it.value().real() * t);
  return out;
}

StateVector lanczos_step(const Operator& h, double dt, const StateVector& v) {
  const double beta0 = v.norm();
  if (beta0 == 0.0) return v;

  std::vector<StateVector> q;
  std::vector<double> alpha;
  std::vector<double> beta;
  q.push_back(v / beta0);
  const double breakdown = 1e-13 * std::max(1.0, norm_bound(h));
  for (int j = 0; j < kKrylovDim; ++j) {
    StateVector w = h * q[j];
    alpha.push_back(q[j].dot(w).real());
    // Full reorthogonalization; the basis is short.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) w -= qi * qi.dot(w);
    const double b = w.norm();
    if (b < breakdown || j + 1 == kKrylovDim) break;
    beta.push_back(b);
    q.push_back(w / b);
  }

  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) tri(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) tri(i, i + 1) = tri(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
  Eigen::VectorXcd y(m);
  const auto& s = eig.eigenvectors();
  for (int i = 0; i < m; ++i) {
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k)
      acc += s(i, k) * std::polar(1.0, -eig.eigenvalues()(k) * dt) * s(0, k);
    y(i) = acc;
  }
  StateVector out = StateVector::Zero(v.size());
  for (int i = 0; i < m; ++i) out += (beta0 * y(i)) * q[i];
  return out;
}

StateVector krylov_evolve(const Operator& h, double t, const StateVector& psi) {
  const double bound = norm_bound(h);
  const int n_sub =
      std::max(1, static_cast<int>(std::ceil(bound * std::abs(t) / kKrylovStep)));
  const double dt = t / n_sub;
  StateVector out = psi;
  for (int i = 0; i < n_sub; ++i) out = lanczos_step(h, dt, out);
  return out;
}

// Evolution restricted to the part of the space reachable from the support of
// the block. H is block diagonal over the connected components of its
// sparsity graph; when every touched component is small, each is exponentiated
// densely on its own. Returns false when the shortcut does not apply.
bool component_evolve(const Operator& h, double t, const Eigen::MatrixXcd& block,
                      Eigen::MatrixXcd& out) {
  const Eigen::Index n = h.rows();
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Eigen::Index>> members;
  std::size_t reached = 0;
  for (Eigen::Index seed = 0; seed < n; ++seed) {
    if (component[seed] >= 0 || block.row(seed).squaredNorm() == 0.0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back(1, seed);
    component[seed] = id;
    for (std::size_t head = 0; head < members[id].size(); ++head) {
      for (Operator::InnerIterator it(h, members[id][head]); it; ++it) {
        if (component[it.row()] >= 0 || it.value() == cplx(0.0)) continue;
        component[it.row()] = id;
        members[id].push_back(it.row());
      }
      if (members[id].size() > kDenseExpmMaxDim) return false;
    }
    reached += members[id].size();
  }
  if (reached * 2 > static_cast<std::size_t>(n)) return false;

  out = Eigen::MatrixXcd::Zero(block.rows(), block.cols());
  for (const auto& idx : members) {
    const Eigen::Index c = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub = Eigen::MatrixXcd::Zero(c, c);
    Eigen::MatrixXcd rows(c, block.cols());
    for (Eigen::Index j = 0; j < c; ++j) {
      rows.row(j) = block.row(idx[j]);
      for (Eigen::Index i = 0; i < c; ++i) sub(i, j) = h.coeff(idx[i], idx[j]);
    }
    const Eigen::MatrixXcd u = (sub * cplx(0.0, -t)).exp();
    const Eigen::MatrixXcd evolved = u * rows;
    for (Eigen::Index j = 0; j < c; ++j) out.row(idx[j]) = evolved.row(j);
  }
  return true;
}

struct Monitor {
  const HilbertSpec& spec;
  std::vector<std::vector<Eigen::Index>> level3;  // per site

  explicit Monitor(const HilbertSpec& s) : spec(s), level3(s.n_systems()) {
    for (std::size_t i = 0; i < spec.dim(); ++i)
      for (int site = 0; site < spec.n_systems(); ++site)
        if (spec.level_at(i, site) == 3)
          level3[site].push_back(static_cast<Eigen::Index>(i));
  }

  void sample(double t, const Eigen::MatrixXcd& block, Trajectory& traj,
              IntegratorStats& stats) const {
    double pop3 = 0.0;
    double photons = 0.0;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      for (const auto& idx : level3) {
        double p = 0.0;
        for (Eigen::Index i : idx) p += std::norm(block(i, c));
        pop3 = std::max(pop3, p);
      }
      photons = std::max(photons, photon_number(spec, block.col(c)));
      stats.max_norm_drift =
          std::max(stats.max_norm_drift, std::abs(block.col(c).norm() - 1.0));
    }
    traj.times.push_back(t);
    traj.max_pop3.push_back(pop3);
    traj.photons.push_back(photons);
  }
};

void rk4_step(const HamiltonianAction& h, double t, double dt, StateVector& psi,
              StateVector& k1, StateVector& k2, StateVector& k3,
              StateVector& k4, StateVector& tmp) {
  const cplx mi(0.0, -1.0);
  h(t, psi, k1);
  k1 *= mi;
  tmp = psi + (0.5 * dt) * k1;
  h(t + 0.5 * dt, tmp, k2);
  k2 *= mi;
  tmp = psi + (0.5 * dt) * k2;
  h(t + 0.5 * dt, tmp, k3);
  k3 *= mi;
  tmp = psi + dt * k3;
  h(t + dt, tmp, k4);
  k4 *= mi;
  psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

StateVector rk4_run(const HamiltonianAction& h, double t0, double t1,
                    std::size_t n, const StateVector& psi, double& drift) {
  const double dt = (t1 - t0) / static_cast<double>(n);
  const double norm0 = psi.norm();
  StateVector cur = psi;
  StateVector k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()),
      tmp(psi.size());
  drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rk4_step(h, t0 + static_cast<double>(i) * dt, dt, cur, k1, k2, k3, k4,
             tmp);
    drift = std::max(drift, std::abs(cur.norm() - norm0));
  }
  return cur;
}

}  // namespace

StateVector evolve_const(const Operator& h, double t, const StateVector& psi) {
  require_hermitian(h);
  if (static_cast<Eigen::Index>(psi.size()) != h.rows())
    throw std::invalid_argument("state dimension does not match Hamiltonian");
  if (t == 0.0) return psi;
  if (is_diagonal(h)) return diagonal_evolve(h, t, psi);
  if (static_cast<std::size_t>(h.rows()) <= kDenseExpmMaxDim)
    return dense_expm(h, t) * psi;
  Eigen::MatrixXcd local;
  if (component_evolve(h, t, psi, local)) return local.col(0);
  return krylov_evolve(h, t, psi);
}

Eigen::MatrixXcd evolve_const(const Operator& h, double t,
                              const Eigen::MatrixXcd& block) {
  require_hermitian(h);
  if (block.rows() != h.rows())
    throw std::invalid_argument("block dimension does not match Hamiltonian");
  if (t == 0.0) return block;
  Eigen::MatrixXcd out(block.rows(), block.cols());
  if (is_diagonal(h)) {
    for (Eigen::Index c = 0; c < block.cols(); ++c)
      out.col(c) = diagonal_evolve(h, t, block.col(c));
  } else if (static_cast<std::size_t>(h.rows()) <= kDenseExpmMaxDim) {
    out = dense_expm(h, t) * block;
  } else if (!component_evolve(h, t, block, out)) {
    for (Eigen::Index c = 0; c < block.cols(); ++c)
      out.col(c) = krylov_evolve(h, t, block.col(c));
  }
  return out;
}

BlockEvolution evolve_const_monitored(const HilbertSpec& spec,
                                      const Operator& h, double t,
                                      const Eigen::MatrixXcd& block,
                                      double max_sample_dt) {
  require_hermitian(h);
  if (block.rows() != static_cast<Eigen::Index>(spec.dim()) ||
      h.rows() != block.rows())
    throw std::invalid_argument("block dimension does not match the space");
  if (!(max_sample_dt > 0.0))
    throw std::invalid_argument("sample interval must be positive");
  if (t < 0.0) throw std::invalid_argument("duration must be non-negative");

  const Monitor monitor(spec);
  BlockEvolution out{block, {}, {}};
  monitor.sample(0.0, out.block, out.trajectory, out.stats);
  if (t == 0.0) return out;

  const auto n_sub =
      static_cast<std::size_t>(std::max(1.0, std::ceil(t / max_sample_dt)));
  const double dt = t / static_cast<double>(n_sub);
  const bool dense = static_cast<std::size_t>(h.rows()) <= kDenseExpmMaxDim &&
                     !is_diagonal(h);
  Eigen::MatrixXcd u_dt;
  if (dense) u_dt = dense_expm(h, dt);
  for (std::size_t i = 1; i <= n_sub; ++i) {
    if (dense)
      out.block = u_dt * out.block;
    else
      out.block = evolve_const(h, dt, out.block);
    monitor.sample(static_cast<double>(i) * dt, out.block, out.trajectory,
                   out.stats);
  }
  out.stats.steps = n_sub;
  return out;
}

EvolutionResult evolve_td(const HamiltonianAction& h, double norm_bound,
                          double t0, double t1, const StateVector& psi,
                          const TdOptions& options) {
  if (t1 < t0) throw std::invalid_argument("evolve_td requires t1 >= t0");
  if (!(options.tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  EvolutionResult out{psi, {}, {}};
  if (t1 == t0) return out;

  std::size_t n = static_cast<std::size_t>(std::max(
      1.0, std::ceil(norm_bound * (t1 - t0) / options.initial_step_scale)));
  double drift = 0.0;
  StateVector prev = rk4_run(h, t0, t1, n, psi, drift);
  while (true) {
    if (2 * n > options.max_steps)
      throw std::runtime_error(
          "step-size underflow: " + std::to_string(2 * n) +
          " steps exceed the limit without meeting tolerance");
    n *= 2;
    StateVector cur = rk4_run(h, t0, t1, n, psi, drift);
    const double err = (cur - prev).norm();
    if (err < options.tolerance) {
      out.state = std::move(cur);
      out.stats.steps = n;
      out.stats.max_norm_drift = drift;
      out.stats.error_estimate = err;
      return out;
    }
    prev = std::move(cur);
  }
}

EvolutionResult evolve_td(const TimeDependentHamiltonian& h, double t0,
                          double t1, const StateVector& psi,
                          const TdOptions& options) {
  if (psi.size() != static_cast<Eigen::Index>(h.dim()))
    throw std::invalid_argument("state dimension does not match Hamiltonian");
  for (double t : {t0, 0.5 * (t0 + t1), t1})
    require_hermitian(h.at(t));
  auto action = [&h](double t, const StateVector& v, StateVector& o) {
    h.apply(t, v, o);
  };
  return evolve_td(action, h.norm_bound(), t0, t1, psi, options);
}

Eigen::MatrixXcd propagator(const Operator& h, double t) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  return evolve_const(h, t, id);
}

Eigen::MatrixXcd propagator(const TimeDependentHamiltonian& h, double t0,
                            double t1, const TdOptions& options,
                            IntegratorStats* stats) {
  const auto dim = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd u(dim, dim);
  IntegratorStats total;
  for (Eigen::Index c = 0; c < dim; ++c) {
    StateVector e = StateVector::Zero(dim);
    e(c) = 1.0;
    EvolutionResult r = evolve_td(h, t0, t1, e, options);
    u.col(c) = r.state;
    total.steps += r.stats.steps;
    total.max_norm_drift = std::max(total.max_norm_drift, r.stats.max_norm_drift);
    total.error_estimate = std::max(total.error_estimate, r.stats.error_estimate);
  }
  if (stats != nullptr) *stats = total;
  return u;
}

double unitarity_error(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd d =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

StateVector closed_form_raman(const HilbertSpec& spec, double t, double g,
                              double delta_c, RamanInput input) {
  if (spec.n_systems() != 1 || spec.fock_cutoff() < 1)
    throw std::invalid_argument(
        "closed-form Raman solution needs one system and fock_cutoff >= 1");
  const double e = g * g / delta_c;
  const cplx pre = std::polar(1.0, e * t);
  const cplx c = std::cos(e * t);
  const cplx s = cplx(0.0, -1.0) * std::sin(e * t);
  const std::size_t i10 = spec.index(std::vector<int>{1}, 0);
  const std::size_t i21 = spec.index(std::vector<int>{2}, 1);
  StateVector psi = StateVector::Zero(spec.dim());
  switch (input) {
    case RamanInput::ground_vacuum:
      psi(spec.index(std::vector<int>{0}, 0)) = 1.0;
      break;
    case RamanInput::one_vacuum:
      psi(i21) = pre * s;
      psi(i10) = pre * c;
      break;
    case RamanInput::two_photon:
      psi(i21) = pre * c;
      psi(i10) = pre * s;
      break;
  }
  return psi;
}

Eigen::Vector2cd closed_form_rotation(double t, double omega_tilde, double phi,
                                      int input_level) {
  const double c = std::cos(0.5 * omega_tilde * t);
  const double s = std::sin(0.5 * omega_tilde * t);
  const cplx mi(0.0, -1.0);
  if (input_level == 1) return {c, mi * std::polar(1.0, -phi) * s};
  if (input_level == 2) return {mi * std::polar(1.0, phi) * s, c};
  throw std::invalid_argument("rotation input must be level 1 or 2");
}

}  // namespace cqed
