#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schatlab/errors.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/schatten.hpp"

using namespace schatlab;

namespace {
CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("norm of a diagonal matrix across exponents") {
  const CMatrix x = diag2(3.0, -4.0);
  CHECK(schatten_norm(x, PIndex(1.0)) == doctest::Approx(7.0));
  CHECK(schatten_norm(x, PIndex(2.0)) == doctest::Approx(5.0));
  CHECK(schatten_norm(x, PIndex(4.0)) ==
        doctest::Approx(std::pow(81.0 + 256.0, 0.25)));
  CHECK(schatten_norm(x, PIndex::infinity()) == doctest::Approx(4.0));
}

TEST_CASE("block norm is the p-sum, sup at p = infinity") {
  const BlockOperator x = make_block_operator(
      BlockShape{{{2, 2}, {2, 2}}}, {diag2(3.0, 0.0), diag2(4.0, 0.0)},
      PIndex(2.0));
  CHECK(schatten_norm(x, PIndex(2.0)) == doctest::Approx(5.0));
  CHECK(schatten_norm(x, PIndex(1.0)) == doctest::Approx(7.0));
  CHECK(schatten_norm(x, PIndex::infinity()) == doctest::Approx(4.0));
}

TEST_CASE("norm is multiplicative under tensoring") {
  Rng rng(5, 1);
  const CMatrix a = rng.ginibre(3, 3), b = rng.ginibre(2, 4);
  for (double pv : {1.0, 1.5, 2.0, 3.0}) {
    const PIndex p(pv);
    CHECK(schatten_norm(kron(a, b), p) ==
          doctest::Approx(schatten_norm(a, p) * schatten_norm(b, p)));
  }
}

TEST_CASE("pairing is the plain trace of the product") {
  CMatrix x = CMatrix::Zero(2, 2), y = CMatrix::Zero(2, 2);
  x(0, 1) = Complex(2.0, 1.0);
  y(1, 0) = Complex(0.0, 3.0);
  CHECK(pairing(x, y) == Complex(-3.0, 6.0));
}

TEST_CASE("pairing obeys the conjugate-exponent bound") {
  Rng rng(9, 2);
  for (int t = 0; t < 30; ++t) {
    const CMatrix x = rng.ginibre(4, 4), y = rng.ginibre(4, 4);
    for (double pv : {1.5, 2.0, 3.0}) {
      const PIndex p(pv), q = p.conjugate();
      CHECK(std::abs(pairing(x, y)) <=
            schatten_norm(x, p) * schatten_norm(y, q) + 1e-10);
    }
  }
}

TEST_CASE("duality map identities") {
  Rng rng(13, 3);
  const PIndex p(3.0), q(1.5);
  for (int t = 0; t < 20; ++t) {
    const CMatrix x = rng.ginibre(4, 5);
    const CMatrix y = n_map(x, p);
    const double np = schatten_norm(x, p);
    CHECK(schatten_norm(y, q) == doctest::Approx(np));
    CHECK(std::abs(pairing(x, y) - Complex(np * np)) < 1e-9);
    CHECK((n_map(y, q) - x).norm() < 1e-9);
  }
  // p = 2 is the adjoint, and zero stays zero.
  const CMatrix z = rng.ginibre(3, 3);
  CHECK((n_map(z, PIndex(2.0)) - CMatrix(z.adjoint())).norm() < 1e-12);
  CHECK(n_map(CMatrix::Zero(3, 3), p).norm() == 0.0);
}

TEST_CASE("disjointness and supports of matrix units") {
  CMatrix e12 = CMatrix::Zero(3, 3), e13 = CMatrix::Zero(3, 3);
  e12(0, 1) = 1.0;
  e13(0, 2) = 1.0;
  CMatrix e33 = CMatrix::Zero(3, 3);
  e33(2, 2) = 1.0;
  CHECK(are_disjoint(e12, e33));
  // Shared left support: not disjoint.
  CHECK_FALSE(are_disjoint(e12, e13));

  CMatrix e11 = CMatrix::Zero(3, 3), e22 = CMatrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  e22(1, 1) = 1.0;
  CHECK((support_left(e12) - e11).norm() < 1e-12);
  CHECK((support_right(e12) - e22).norm() < 1e-12);
  CHECK((support_right(std::vector<CMatrix>{e12, e33}) - CMatrix(e22 + e33)).norm() < 1e-12);
}

TEST_CASE("disjoint sums add norms in the p-th power") {
  Rng rng(17, 4);
  const CMatrix a = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
  const CMatrix x = direct_sum({a, CMatrix::Zero(2, 2)});
  const CMatrix y = direct_sum({CMatrix::Zero(2, 2), b});
  REQUIRE(are_disjoint(x, y));
  for (double pv : {1.0, 1.5, 3.0}) {
    const PIndex p(pv);
    const double lhs = schatten_norm(CMatrix(x + y), p);
    const double rhs = std::pow(std::pow(schatten_norm(x, p), pv) +
                                    std::pow(schatten_norm(y, p), pv),
                                1.0 / pv);
    CHECK(lhs == doctest::Approx(rhs));
  }
}
