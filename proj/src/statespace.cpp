#include "cqed/statespace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

HilbertSpec::HilbertSpec(int n_systems, int fock_cutoff)
    : n_systems_(n_systems), fock_cutoff_(fock_cutoff) {
  if (n_systems < 1)
    throw std::invalid_argument("n_systems must be positive, got " +
                                std::to_string(n_systems));
  if (fock_cutoff < 0)
    throw std::invalid_argument("fock_cutoff must be non-negative, got " +
                                std::to_string(fock_cutoff));
  if (n_systems > 10)
    throw std::invalid_argument("n_systems > 10 exceeds the dense state budget");

  strides_.resize(n_systems);
  std::size_t stride = static_cast<std::size_t>(fock_dim());
  for (int site = n_systems - 1; site >= 0; --site) {
    strides_[site] = stride;
    stride *= kLevels;
  }
  dim_ = stride;
}

void HilbertSpec::check_site(int site) const {
  if (site < 0 || site >= n_systems_)
    throw std::out_of_range("site " + std::to_string(site) +
                            " outside 0.." + std::to_string(n_systems_ - 1));
}

std::size_t HilbertSpec::index(std::span<const int> levels, int photons) const {
  if (static_cast<int>(levels.size()) != n_systems_)
    throw std::invalid_argument("expected " + std::to_string(n_systems_) +
                                " levels, got " + std::to_string(levels.size()));
  if (photons < 0 || photons > fock_cutoff_)
    throw std::out_of_range("photon number " + std::to_string(photons) +
                            " exceeds fock cutoff " +
                            std::to_string(fock_cutoff_));
  std::size_t idx = static_cast<std::size_t>(photons);
  for (int site = 0; site < n_systems_; ++site) {
    check_level(levels[site]);
    idx += static_cast<std::size_t>(levels[site]) * strides_[site];
  }
  return idx;
}

BasisLabel HilbertSpec::label(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("basis index out of range");
  BasisLabel out;
  out.levels.resize(n_systems_);
  for (int site = 0; site < n_systems_; ++site)
    out.levels[site] = level_at(index, site);
  out.photons = photons_at(index);
  return out;
}

HilbertSpec build_space(int n_systems, int fock_cutoff) {
  return HilbertSpec(n_systems, fock_cutoff);
}

void check_level(int level) {
  if (level < 0 || level >= HilbertSpec::kLevels)
    throw std::out_of_range("level " + std::to_string(level) +
                            " outside 0..3");
}

Operator transition_op(const HilbertSpec& spec, int site, int from, int to) {
  spec.check_site(site);
  check_level(from);
  check_level(to);
  const std::size_t stride = spec.site_stride(site);
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(spec.dim() / HilbertSpec::kLevels);
  for (std::size_t col = 0; col < spec.dim(); ++col) {
    if (spec.level_at(col, site) != from) continue;
    const std::size_t row = col - from * stride + to * stride;
    entries.emplace_back(static_cast<int>(row), static_cast<int>(col), 1.0);
  }
  Operator op(spec.dim(), spec.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

Operator projector(const HilbertSpec& spec, int site, int level) {
  return transition_op(spec, site, level, level);
}

Operator annihilation(const HilbertSpec& spec) {
  std::vector<Eigen::Triplet<cplx>> entries;
  for (std::size_t col = 0; col < spec.dim(); ++col) {
    const int n = spec.photons_at(col);
    if (n == 0) continue;
    entries.emplace_back(static_cast<int>(col - 1), static_cast<int>(col),
                         std::sqrt(static_cast<double>(n)));
  }
  Operator op(spec.dim(), spec.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

Operator creation(const HilbertSpec& spec) {
  return Operator(annihilation(spec).adjoint());
}

Operator number_op(const HilbertSpec& spec) {
  std::vector<Eigen::Triplet<cplx>> entries;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    const int n = spec.photons_at(i);
    if (n != 0) entries.emplace_back(static_cast<int>(i), static_cast<int>(i),
                                     static_cast<double>(n));
  }
  Operator op(spec.dim(), spec.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

Operator identity_op(const HilbertSpec& spec) {
  Operator op(spec.dim(), spec.dim());
  op.setIdentity();
  return op;
}

StateVector product_state(const HilbertSpec& spec, std::span<const int> levels,
                          int photons) {
  StateVector psi = StateVector::Zero(spec.dim());
  psi(spec.index(levels, photons)) = 1.0;
  return psi;
}

StateVector product_state(const HilbertSpec& spec,
                          std::initializer_list<int> levels, int photons) {
  std::vector<int> v(levels);
  return product_state(spec, std::span<const int>(v), photons);
}

double population(const HilbertSpec& spec, const StateVector& psi, int site,
                  int level) {
  spec.check_site(site);
  check_level(level);
  double p = 0.0;
  for (std::size_t i = 0; i < spec.dim(); ++i)
    if (spec.level_at(i, site) == level) p += std::norm(psi(i));
  return p;
}

double photon_number(const HilbertSpec& spec, const StateVector& psi) {
  double n = 0.0;
  for (std::size_t i = 0; i < spec.dim(); ++i)
    n += spec.photons_at(i) * std::norm(psi(i));
  return n;
}

double hermiticity_error(const Operator& op) {
  Operator diff = op - Operator(op.adjoint());
  double err = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Operator::InnerIterator it(diff, k); it; ++it)
      err = std::max(err, std::abs(it.value()));
  return err;
}

bool is_hermitian(const Operator& op, double tol) {
  return op.rows() == op.cols() && hermiticity_error(op) < tol;
}

bool is_diagonal(const Operator& op) {
  for (int k = 0; k < op.outerSize(); ++k)
    for (Operator::InnerIterator it(op, k); it; ++it)
      if (it.row() != it.col() && it.value() != cplx(0.0)) return false;
  return true;
}

double norm_bound(const Operator& op) {
  if (op.nonZeros() == 0) return 0.0;
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(op.rows());
  Eigen::VectorXd cols = Eigen::VectorXd::Zero(op.cols());
  for (int k = 0; k < op.outerSize(); ++k)
    for (Operator::InnerIterator it(op, k); it; ++it) {
      rows(it.row()) += std::abs(it.value());
      cols(it.col()) += std::abs(it.value());
    }
  return std::sqrt(rows.maxCoeff() * cols.maxCoeff());
}

}  // namespace cqed
