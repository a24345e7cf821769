#include "cqed/gates_metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

void GateSpec::validate() const {
  if (n_targets < 1)
    throw std::invalid_argument("gate needs at least one target, got " +
                                std::to_string(n_targets));
  if (static_cast<int>(theta.size()) != n_targets)
    throw std::invalid_argument("expected " + std::to_string(n_targets) +
                                " target phases, got " +
                                std::to_string(theta.size()));
  for (double t : theta)
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite phase");
}

GateSpec uniform_gate(int n_targets, double theta) {
  GateSpec g{n_targets, std::vector<double>(std::max(n_targets, 0), theta)};
  g.validate();
  return g;
}

GateSpec qft_phase_layer(int n_targets) {
  if (n_targets < 1)
    throw std::invalid_argument("QFT layer needs at least one target");
  GateSpec g{n_targets, {}};
  for (int k = 2; k <= n_targets + 1; ++k)
    g.theta.push_back(2.0 * kPi / std::ldexp(1.0, k));
  return g;
}

Eigen::Matrix4cd ideal_r1k(double theta) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = std::polar(1.0, theta);
  return u;
}

Eigen::MatrixXcd ideal_multi_phase(std::span<const double> theta) {
  const int n = static_cast<int>(theta.size());
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    double phase = 0.0;
    if ((idx >> n) & 1)
      for (int j = 0; j < n; ++j)
        if ((idx >> (n - 1 - j)) & 1) phase += theta[j];
    u(idx, idx) = std::polar(1.0, phase);
  }
  return u;
}

CnotCertificate cnot_layer_equivalence(int n_targets, double tol) {
  if (n_targets < 1) throw std::invalid_argument("need at least one target");
  const Eigen::Index half = Eigen::Index{1} << n_targets;
  const Eigen::Index dim = 2 * half;

  Eigen::Matrix2cd h1;
  h1 << 1.0, 1.0, 1.0, -1.0;
  h1 /= std::sqrt(2.0);
  Eigen::MatrixXcd h_targets = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n_targets; ++k) {
    Eigen::MatrixXcd next(h_targets.rows() * 2, h_targets.cols() * 2);
    for (Eigen::Index i = 0; i < h_targets.rows(); ++i)
      for (Eigen::Index j = 0; j < h_targets.cols(); ++j)
        next.block<2, 2>(2 * i, 2 * j) = h_targets(i, j) * h1;
    h_targets = next;
  }
  Eigen::MatrixXcd h_all = Eigen::MatrixXcd::Zero(dim, dim);
  h_all.topLeftCorner(half, half) = h_targets;
  h_all.bottomRightCorner(half, half) = h_targets;

  // Control set: flip every target bit.
  Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const Eigen::Index out = idx >= half ? half + ((half - 1) ^ (idx - half)) : idx;
    cnot(out, idx) = 1.0;
  }

  const std::vector<double> theta(n_targets, kPi);
  const Eigen::MatrixXcd lhs = h_all * ideal_multi_phase(theta) * h_all;
  CnotCertificate cert{n_targets, (lhs - cnot).cwiseAbs().maxCoeff(), false};
  cert.holds = cert.max_error < tol;
  return cert;
}

double process_fidelity(const Eigen::MatrixXcd& u_sim,
                        const Eigen::MatrixXcd& u_ideal) {
  if (u_sim.rows() != u_ideal.rows() || u_sim.cols() != u_ideal.cols() ||
      u_sim.rows() != u_sim.cols())
    throw std::invalid_argument("process_fidelity: dimension mismatch");
  return std::abs((u_ideal.adjoint() * u_sim).trace()) /
         static_cast<double>(u_sim.rows());
}

double off_diagonal_weight(const Eigen::MatrixXcd& u) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    double w = u.col(c).squaredNorm() - std::norm(u(c, c));
    worst = std::max(worst, w);
  }
  return worst;
}

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

double phase_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return std::min(d, 2.0 * kPi - d);
}

std::vector<double> diagonal_phases(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0)
    throw std::invalid_argument("diagonal_phases: expected a square matrix");
  const double w = off_diagonal_weight(u);
  if (w >= tol)
    throw std::domain_error("gate is not diagonal: off-diagonal weight " +
                            std::to_string(w));
  const double ref = std::arg(u(0, 0));
  std::vector<double> phases(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    phases[i] = wrap_phase(std::arg(u(i, i)) - ref);
  phases[0] = 0.0;
  return phases;
}

std::vector<double> extract_phases(const Eigen::MatrixXcd& u, double tol) {
  const std::vector<double> phases = diagonal_phases(u, tol);
  const int n = static_cast<int>(std::lround(std::log2(u.rows()))) - 1;
  if (n < 1 || (Eigen::Index{1} << (n + 1)) != u.rows())
    throw std::invalid_argument("extract_phases: dimension is not 2^(n+1)");
  std::vector<double> theta(n);
  for (int j = 0; j < n; ++j)
    theta[j] = phases[(std::size_t{1} << n) | (std::size_t{1} << (n - 1 - j))];
  return theta;
}

std::vector<std::size_t> computational_indices(const HilbertSpec& spec) {
  const int n = spec.n_systems();
  std::vector<std::size_t> out(std::size_t{1} << n);
  std::vector<int> levels(n);
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (int site = 0; site < n; ++site)
      levels[site] = static_cast<int>((c >> (n - 1 - site)) & 1);
    out[c] = spec.index(levels, 0);
  }
  return out;
}

Eigen::MatrixXcd computational_inputs(const HilbertSpec& spec) {
  const auto idx = computational_indices(spec);
  Eigen::MatrixXcd block =
      Eigen::MatrixXcd::Zero(spec.dim(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c)
    block(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
  return block;
}

Eigen::MatrixXcd restrict_to_computational(const HilbertSpec& spec,
                                           const Eigen::MatrixXcd& evolved) {
  const auto idx = computational_indices(spec);
  if (evolved.rows() != static_cast<Eigen::Index>(spec.dim()))
    throw std::invalid_argument("evolved block does not match the space");
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(idx.size()), evolved.cols());
  for (std::size_t r = 0; r < idx.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = evolved.row(idx[r]);
  return out;
}

double leakage(const HilbertSpec& spec, const Eigen::MatrixXcd& evolved) {
  const Eigen::MatrixXcd inside = restrict_to_computational(spec, evolved);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < evolved.cols(); ++c)
    worst = std::max(worst, evolved.col(c).squaredNorm() -
                                inside.col(c).squaredNorm());
  return std::max(worst, 0.0);
}

GateReport make_report(const HilbertSpec& spec, const Eigen::MatrixXcd& evolved,
                       std::span<const double> ideal_theta,
                       double diagonal_tol) {
  GateReport r;
  r.unitary = restrict_to_computational(spec, evolved);
  r.leakage = leakage(spec, evolved);
  r.off_diagonal = off_diagonal_weight(r.unitary);
  r.global_phase = std::arg(r.unitary(0, 0));
  r.fidelity = process_fidelity(r.unitary, ideal_multi_phase(ideal_theta));
  if (r.off_diagonal < diagonal_tol) {
    r.phases = diagonal_phases(r.unitary, diagonal_tol);
    r.theta = extract_phases(r.unitary, diagonal_tol);
  }
  return r;
}

}  // namespace cqed
