#pragma once

// Composite Hilbert space of (n+1) four-level systems and one truncated
// cavity mode.
//
// Basis ordering: the cavity photon number varies fastest and system 1
// (site 0) varies slowest, i.e.
//
//   index = ((l_0 * 4 + l_1) * 4 + ... + l_{n}) * (N_max + 1) + photons
//
// This ordering is fixed; golden files and truth tables depend on it.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cqed {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::SparseMatrix<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

struct BasisLabel {
  std::vector<int> levels;
  int photons = 0;

  bool operator==(const BasisLabel&) const = default;
};

class HilbertSpec {
 public:
  static constexpr int kLevels = 4;

  HilbertSpec(int n_systems, int fock_cutoff);

  int n_systems() const { return n_systems_; }
  int fock_cutoff() const { return fock_cutoff_; }
  int fock_dim() const { return fock_cutoff_ + 1; }
  std::size_t dim() const { return dim_; }

  std::size_t index(std::span<const int> levels, int photons) const;
  BasisLabel label(std::size_t index) const;

  int level_at(std::size_t index, int site) const {
    return static_cast<int>((index / strides_[site]) % kLevels);
  }
  int photons_at(std::size_t index) const {
    return static_cast<int>(index % static_cast<std::size_t>(fock_dim()));
  }
  // Index offset between |l>_site and |l+1>_site with everything else fixed.
  std::size_t site_stride(int site) const { return strides_[site]; }

  void check_site(int site) const;

 private:
  int n_systems_;
  int fock_cutoff_;
  std::size_t dim_;
  std::vector<std::size_t> strides_;
};

HilbertSpec build_space(int n_systems, int fock_cutoff);

void check_level(int level);

// |to><from| acting on one site, identity on the rest of the space.
Operator transition_op(const HilbertSpec& spec, int site, int from, int to);
Operator projector(const HilbertSpec& spec, int site, int level);

Operator annihilation(const HilbertSpec& spec);
Operator creation(const HilbertSpec& spec);
Operator number_op(const HilbertSpec& spec);
Operator identity_op(const HilbertSpec& spec);

StateVector product_state(const HilbertSpec& spec, std::span<const int> levels,
                          int photons);
StateVector product_state(const HilbertSpec& spec,
                          std::initializer_list<int> levels, int photons);

double population(const HilbertSpec& spec, const StateVector& psi, int site,
                  int level);
double photon_number(const HilbertSpec& spec, const StateVector& psi);

// Max-abs entry of H - H^dagger.
double hermiticity_error(const Operator& op);
bool is_hermitian(const Operator& op, double tol = 1e-12);
bool is_diagonal(const Operator& op);
// sqrt(||A||_1 ||A||_inf), an upper bound on the spectral norm.
double norm_bound(const Operator& op);

}  // namespace cqed
