#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schatlab/errors.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/rng.hpp"

using namespace schatlab;

namespace {
CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("svd reconstructs and orders singular values") {
  // [[1,1],[0,1]] has singular values sqrt((3 +- sqrt 5)/2).
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = 1.0;
  x(0, 1) = 1.0;
  x(1, 1) = 1.0;
  const SvdResult r = svd(x);
  CHECK(r.s(0) ==
        doctest::Approx(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)));
  CHECK(r.s(1) ==
        doctest::Approx(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0)));
  const CMatrix back = r.u * r.s.cast<Complex>().asDiagonal() * r.v.adjoint();
  CHECK((back - x).norm() < 1e-12);
}

TEST_CASE("rank cutoff counts only significant singular values") {
  RVector s(3);
  s << 2.0, 1e-6, 1e-14;
  CHECK(rank_from_singular_values(s, 1e-10) == 2);
  CHECK(rank_from_singular_values(s, 1e-3) == 1);
}

TEST_CASE("polar splits into partial isometry times psd") {
  Rng rng(7, 0);
  const CMatrix x = rng.ginibre(4, 4);
  const PolarResult pr = polar(x);
  CHECK(is_partial_isometry(pr.u));
  CHECK(min_eigenvalue(pr.absx) > -1e-12);
  CHECK((pr.u * pr.absx - x).norm() < 1e-10);
}

TEST_CASE("fractional powers act on the spectrum") {
  const CMatrix h = diag2(4.0, 9.0);
  CHECK((frac_power(h, 0.5) - diag2(2.0, 3.0)).norm() < 1e-12);
  CHECK((frac_power(h, -0.5) - diag2(0.5, 1.0 / 3.0)).norm() < 1e-12);
  // Power zero yields the support projection, even with a kernel.
  CHECK((frac_power(diag2(5.0, 0.0), 0.0) - diag2(1.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("kron matches the hand-computed block layout") {
  CMatrix a = diag2(1.0, 2.0);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 3.0;
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Complex(3.0));
  CHECK(k(2, 3) == Complex(6.0));
  CHECK(k.cwiseAbs().sum() == doctest::Approx(9.0));
}

TEST_CASE("direct sum stacks blocks diagonally") {
  const CMatrix d = direct_sum({diag2(1.0, 2.0), diag2(3.0, 4.0)});
  REQUIRE(d.rows() == 4);
  CHECK(d(2, 2) == Complex(3.0));
  CHECK(d(0, 2) == Complex(0.0));
}

TEST_CASE("hermitian eigensystem recovers known spectrum") {
  CMatrix sx = CMatrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const HermEig e = herm_eig(sx);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(sx) == doctest::Approx(-1.0));
}

TEST_CASE("orthonormal_columns drops dependent columns") {
  Rng rng(11, 0);
  Eigen::MatrixXcd cols(5, 3);
  cols.col(0) = rng.cvector(5);
  cols.col(1) = rng.cvector(5);
  cols.col(2) = 2.0 * cols.col(0) - cols.col(1);
  const Eigen::MatrixXcd q = orthonormal_columns(cols, 1e-10);
  CHECK(q.cols() == 2);
  CHECK((q.adjoint() * q - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("haar unitaries and psd draws have the advertised shape") {
  Rng rng(3, 5);
  const CMatrix u = rng.haar_unitary(4);
  CHECK((u * u.adjoint() - CMatrix::Identity(4, 4)).norm() < 1e-12);
  const CMatrix h = rng.psd(4);
  CHECK((h - h.adjoint()).norm() < 1e-12);
  CHECK(min_eigenvalue(h) > -1e-12);
  const CMatrix inj = rng.psd_injective(4);
  CHECK(min_eigenvalue(inj) > 1e-4);
}
