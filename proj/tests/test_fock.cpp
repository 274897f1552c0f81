#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schatlab/errors.hpp"
#include "schatlab/fock.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/schatten.hpp"

using namespace schatlab;

TEST_CASE("basis layout and slice dimensions") {
  const FockSpace fock(3);
  CHECK(fock.dim() == 8);
  CHECK(fock.slice_dim(0) == 1);
  CHECK(fock.slice_dim(2) == 3);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(6, 0) == 1);
  // Cardinality-major ordering: vacuum first, full word last.
  CHECK(fock.basis.front() == 0u);
  CHECK(fock.basis.back() == 0b111u);
  CHECK_THROWS_AS(FockSpace(7), DomainError);
}

TEST_CASE("creation operators satisfy the anticommutation relations") {
  const FockSpace fock(3);
  const CMatrix id = CMatrix::Identity(fock.dim(), fock.dim());
  for (int j = 1; j <= 3; ++j) {
    const CMatrix cj = creation(fock, j);
    for (int k = 1; k <= 3; ++k) {
      const CMatrix ck = creation(fock, k);
      CHECK((cj * ck + ck * cj).norm() < 1e-14);
      const CMatrix mixed = cj * ck.adjoint() + CMatrix(ck.adjoint()) * cj;
      CHECK((mixed - (j == k ? id : CMatrix::Zero(8, 8))).norm() < 1e-14);
    }
  }
}

TEST_CASE("wedging picks up the crossing sign") {
  const FockSpace fock(2);
  const CMatrix c2 = creation(fock, 2);
  const int one = fock.index_of[0b01];    // occupied mode 1
  const int both = fock.index_of[0b11];
  // e_2 wedged past e_1 crosses one mode.
  CHECK(c2(both, one) == Complex(-1.0));
  const CMatrix c1 = creation(fock, 1);
  const int two = fock.index_of[0b10];
  CHECK(c1(both, two) == Complex(1.0));
}

TEST_CASE("graded restriction blocks have the right shape") {
  const FockSpace fock(4);
  const GradedMap g = restricted_creation(fock, 2, 2);
  CHECK(g.matrix.rows() == binom(4, 2));
  CHECK(g.matrix.cols() == binom(4, 1));
}

TEST_CASE("graded embedding is an isometry for every finite exponent") {
  const FockSpace fock(4);
  Rng rng(23, 0);
  for (double pv : {1.0, 1.5, 2.0, 3.0}) {
    const CVector t = rng.cvector(4);
    const CMatrix x = phi_m(fock, 2, t, PIndex(pv));
    CHECK(schatten_norm(x, PIndex(pv)) == doctest::Approx(t.norm()));
  }
}

TEST_CASE("image rank falls short of the equal-dimension slice") {
  const FockSpace fock(3);
  Rng rng(29, 1);
  CVector t = rng.cvector(3);
  t /= t.norm();
  const RankCheck rc = type4_rank_check(fock, 2, t);
  CHECK(rc.observed_rank == 2);
  CHECK(rc.slice_dim == 3);
}

TEST_CASE("half-space families have the advertised dimensions") {
  const FockSpace fock(3);
  const AppendixSpaces sp = ah_spaces(fock);
  CHECK(sp.ah.size() == 6);
  CHECK(sp.bh.size() == 6);
  CHECK(sp.dah.size() == 5);
  for (const CMatrix& x : sp.ah) {
    CHECK(x.rows() == 4);
    CHECK(x.cols() == 4);
  }
  for (std::size_t j = 0; j < sp.ah.size(); ++j)
    CHECK((sp.bh[j] - CMatrix(sp.ah[j].adjoint())).norm() < 1e-14);
}

TEST_CASE("transfer map swaps the two half-space families isometrically") {
  const FockSpace fock(3);
  const AppendixSpaces sp = ah_spaces(fock);
  // On basis elements the map is adjoint-plus-partner-swap.
  CHECK((t_map(fock, sp.ah[0]) - CMatrix(sp.ah[3].adjoint())).norm() < 1e-10);
  CHECK((t_map(fock, sp.ah[3]) - CMatrix(sp.ah[0].adjoint())).norm() < 1e-10);
  Rng rng(31, 2);
  CMatrix x = CMatrix::Zero(4, 4);
  for (const CMatrix& b : sp.ah) x += rng.cnormal() * b;
  const CMatrix tx = t_map(fock, x);
  for (double pv : {1.0, 2.0, 3.0})
    CHECK(schatten_norm(tx, PIndex(pv)) ==
          doctest::Approx(schatten_norm(x, PIndex(pv))));
  CHECK(schatten_norm(tx, PIndex::infinity()) ==
        doctest::Approx(schatten_norm(x, PIndex::infinity())));
  // The identity lies in the span (it is the distinguished combination
  // x_1 + x~_1), so it transfers; a lone corner unit does not.
  CHECK_NOTHROW(t_map(fock, CMatrix::Identity(4, 4)));
  CMatrix corner = CMatrix::Zero(4, 4);
  corner(0, 0) = 1.0;
  CHECK_THROWS_AS(t_map(fock, corner), DomainError);
}
