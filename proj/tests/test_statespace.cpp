#include <set>

#include "cqed/statespace.hpp"
#include "doctest.h"

using namespace cqed;

TEST_CASE("dimensions follow 4^(n+1) (N+1)") {
  CHECK(HilbertSpec(1, 1).dim() == 8);
  CHECK(HilbertSpec(3, 2).dim() == 192);
  CHECK(HilbertSpec(6, 1).dim() == 8192);
  CHECK_THROWS_AS(HilbertSpec(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(HilbertSpec(2, -1), std::invalid_argument);
}

TEST_CASE("index and label are inverse and the cavity varies fastest") {
  const HilbertSpec s(3, 2);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const BasisLabel l = s.label(i);
    CHECK(s.index(l.levels, l.photons) == i);
    seen.insert(s.index(l.levels, l.photons));
  }
  CHECK(seen.size() == s.dim());
  const std::vector<int> a{0, 0, 0}, b{0, 0, 1}, c{1, 0, 0};
  CHECK(s.index(a, 1) == 1);
  CHECK(s.index(b, 0) == 3);
  CHECK(s.index(c, 0) == 48);
  CHECK(s.level_at(s.index(c, 2), 0) == 1);
  CHECK(s.photons_at(s.index(c, 2)) == 2);
}

TEST_CASE("out-of-range labels are rejected") {
  const HilbertSpec s(2, 1);
  const std::vector<int> bad_level{0, 4}, short_levels{0};
  CHECK_THROWS(s.index(bad_level, 0));
  CHECK_THROWS(s.index(short_levels, 0));
  const std::vector<int> ok{0, 1};
  CHECK_THROWS(s.index(ok, 2));
  CHECK_THROWS(transition_op(s, 2, 1, 3));
}

TEST_CASE("ladder operators obey the truncated commutator") {
  const HilbertSpec s(1, 3);
  const Operator a = annihilation(s), ad = creation(s);
  const Eigen::MatrixXcd comm = Eigen::MatrixXcd(a * ad - ad * a);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double expected = s.photons_at(i) == 3 ? -3.0 : 1.0;
    CHECK(comm(i, i).real() == doctest::Approx(expected));
  }
  CHECK((Eigen::MatrixXcd(ad * a) - Eigen::MatrixXcd(number_op(s))).norm() ==
        doctest::Approx(0.0));
  const StateVector two = product_state(s, {1}, 2);
  const StateVector lowered = a * two;
  CHECK(std::abs(lowered(s.index(std::vector<int>{1}, 1))) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("operators on different sites commute") {
  const HilbertSpec s(3, 1);
  const Operator x = transition_op(s, 0, 1, 3) + transition_op(s, 0, 3, 1);
  const Operator y = transition_op(s, 2, 2, 3) + transition_op(s, 2, 3, 2);
  CHECK(Eigen::MatrixXcd(x * y - y * x).norm() == doctest::Approx(0.0));
  const Operator sum = projector(s, 1, 0) + projector(s, 1, 1) +
                       projector(s, 1, 2) + projector(s, 1, 3);
  CHECK((Eigen::MatrixXcd(sum) - Eigen::MatrixXcd(identity_op(s))).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("populations and photon numbers of product states") {
  const HilbertSpec s(2, 2);
  const StateVector psi = product_state(s, {1, 3}, 2);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(population(s, psi, 0, 1) == doctest::Approx(1.0));
  CHECK(population(s, psi, 1, 3) == doctest::Approx(1.0));
  CHECK(population(s, psi, 1, 0) == doctest::Approx(0.0));
  CHECK(photon_number(s, psi) == doctest::Approx(2.0));
}

TEST_CASE("matrix diagnostics") {
  const HilbertSpec s(1, 1);
  Operator h = transition_op(s, 0, 1, 2);
  CHECK_FALSE(is_hermitian(h));
  CHECK(hermiticity_error(h) == doctest::Approx(1.0));
  h += transition_op(s, 0, 2, 1);
  CHECK(is_hermitian(h));
  CHECK_FALSE(is_diagonal(h));
  CHECK(is_diagonal(number_op(s)));
  CHECK(norm_bound(h) >= 1.0 - 1e-12);
}
