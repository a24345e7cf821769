#pragma once

// Ideal multi-target phase gates and the metrics used to compare simulated
// gates against them.
//
// Qubit ordering in the 2^(n+1) computational space: the control (system 1)
// is the most significant bit, target k = 2..n+1 follows in order.

#include <span>
#include <vector>

#include "cqed/statespace.hpp"

namespace cqed {

struct GateSpec {
  int n_targets = 0;
  std::vector<double> theta;  // theta_k for k = 2..n+1

  // Throws std::invalid_argument if n_targets < 1 or the sizes disagree.
  void validate() const;
};

GateSpec uniform_gate(int n_targets, double theta);
// theta_k = 2 pi / 2^k, k = 2..n+1
GateSpec qft_phase_layer(int n_targets);

// diag(1, 1, 1, e^{i theta}) on |00>, |01>, |10>, |11>
Eigen::Matrix4cd ideal_r1k(double theta);
// Phase of |c b_2 ... b_{n+1}> is c * sum_k b_k theta_k.
Eigen::MatrixXcd ideal_multi_phase(std::span<const double> theta);

// Hadamards on every target turn the theta = pi gate into a CNOT fan-out.
struct CnotCertificate {
  int n_targets = 0;
  double max_error = 0.0;
  bool holds = false;
};
CnotCertificate cnot_layer_equivalence(int n_targets, double tol = 1e-12);

// |Tr(U_ideal^dagger U_sim)| / d
double process_fidelity(const Eigen::MatrixXcd& u_sim,
                        const Eigen::MatrixXcd& u_ideal);

// Largest off-diagonal weight sum_{i != j} |U_ij|^2 over columns.
double off_diagonal_weight(const Eigen::MatrixXcd& u);

// Phases of every diagonal entry relative to entry 0, wrapped to [0, 2 pi).
// Throws std::domain_error if off_diagonal_weight(u) >= tol.
std::vector<double> diagonal_phases(const Eigen::MatrixXcd& u,
                                    double tol = 1e-3);
// theta_k read from the basis state with only the control and target k set.
std::vector<double> extract_phases(const Eigen::MatrixXcd& u,
                                   double tol = 1e-3);

double wrap_phase(double phi);
// Distance on the circle, in [0, pi].
double phase_distance(double a, double b);

// Full-space indices of |b_1 ... b_{n+1}>|0>_c, ordered by the computational
// index (control most significant).
std::vector<std::size_t> computational_indices(const HilbertSpec& spec);
// Full-space columns for every computational input.
Eigen::MatrixXcd computational_inputs(const HilbertSpec& spec);
// Rows of the evolved columns restricted to the computational subspace.
Eigen::MatrixXcd restrict_to_computational(const HilbertSpec& spec,
                                           const Eigen::MatrixXcd& evolved);
// Largest weight outside computational (x) vacuum over the evolved inputs.
double leakage(const HilbertSpec& spec, const Eigen::MatrixXcd& evolved);

struct GateReport {
  Eigen::MatrixXcd unitary;       // computational block
  std::vector<double> theta;      // empty when the block is not diagonal
  std::vector<double> phases;     // every diagonal entry, same gauge
  double off_diagonal = 0.0;
  double fidelity = 0.0;
  double leakage = 0.0;
  double global_phase = 0.0;      // arg of the all-zeros entry
};

GateReport make_report(const HilbertSpec& spec, const Eigen::MatrixXcd& evolved,
                       std::span<const double> ideal_theta,
                       double diagonal_tol = 1e-3);

}  // namespace cqed
