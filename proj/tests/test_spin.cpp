#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schatlab/errors.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/spin.hpp"

using namespace schatlab;

TEST_CASE("generators are self-adjoint unitaries that anticommute") {
  const SpinSystem sys = spin_system(2);
  const CMatrix id = CMatrix::Identity(sys.dim(), sys.dim());
  const std::vector<int> labels{-2, -1, 1, 2};
  for (int j : labels) {
    CHECK((sys.s(j) - CMatrix(sys.s(j).adjoint())).norm() < 1e-14);
    for (int k : labels) {
      const CMatrix anti = sys.s(j) * sys.s(k) + sys.s(k) * sys.s(j);
      CHECK((anti - (j == k ? 2.0 : 0.0) * id).norm() < 1e-14);
    }
  }
}

TEST_CASE("words multiply in ascending label order") {
  const SpinSystem sys = spin_system(2);
  const CMatrix w = spin_word(sys, {1, -1});
  CHECK((w - CMatrix(sys.s(-1) * sys.s(1))).norm() < 1e-14);
  CHECK_THROWS_AS(spin_word(sys, {1, 1}), DomainError);
  CHECK_THROWS_AS(spin_word(sys, {3}), DomainError);
}

TEST_CASE("word spans have dimensions 2N+2 and 2N+1") {
  for (int N = 1; N <= 3; ++N) {
    const SpinSystem sys = spin_system(N);
    CHECK(f_space(sys).basis.size() ==
          static_cast<std::size_t>(2 * N + 2));
    CHECK(e_space(sys).basis.size() ==
          static_cast<std::size_t>(2 * N + 1));
  }
}

TEST_CASE("symmetries act by sign flips on the word basis") {
  const SpinSystem sys = spin_system(2);
  const SpinSubspace fsp = f_space(sys);
  const CMatrix& top = fsp.basis.back();
  const CMatrix& gen = sys.s(1);
  const CMatrix one = CMatrix::Identity(sys.dim(), sys.dim());
  CHECK((sigma_map(sys, top) + top).norm() < 1e-12);
  CHECK((sigma_map(sys, gen) - gen).norm() < 1e-12);
  CHECK((sigma_map(sys, one) - one).norm() < 1e-12);
  CHECK((tau_prime(sys, gen) + gen).norm() < 1e-12);
  CHECK((tau_prime(sys, top) + top).norm() < 1e-12);
  CHECK((tau_prime(sys, one) - one).norm() < 1e-12);
  // Elements outside the word span are rejected.
  CHECK_THROWS_AS(sigma_map(sys, CMatrix(sys.s(1) * sys.s(2))), DomainError);
}

TEST_CASE("symmetries are isometric involutions on the span") {
  const SpinSystem sys = spin_system(3);
  const SpinSubspace fsp = f_space(sys);
  Rng rng(37, 0);
  CMatrix x = CMatrix::Zero(sys.dim(), sys.dim());
  for (const CMatrix& b : fsp.basis) x += rng.cnormal() * b;
  const CMatrix sx = sigma_map(sys, x);
  CHECK((sigma_map(sys, sx) - x).norm() < 1e-12);
  for (double pv : {1.0, 2.0})
    CHECK(schatten_norm(sx, PIndex(pv)) ==
          doctest::Approx(schatten_norm(x, PIndex(pv))));
  CHECK(schatten_norm(sx, PIndex::infinity()) ==
        doctest::Approx(schatten_norm(x, PIndex::infinity())));
}

TEST_CASE("triple product and closure detection") {
  CMatrix e11 = CMatrix::Zero(2, 2), flip = CMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  // {flip, e11, flip} = e22, outside span{e11, flip}.
  CMatrix e22 = CMatrix::Zero(2, 2);
  e22(1, 1) = 1.0;
  CHECK((triple_product(flip, e11, flip) - e22).norm() < 1e-14);

  Rng rng(41, 1);
  const std::vector<CMatrix> open_span{e11, flip};
  CHECK_FALSE(is_jc_triple(open_span, [&] { return rng.cvector(2); }, 4));

  const SpinSystem sys = spin_system(2);
  const SpinSubspace esp = e_space(sys);
  const Eigen::Index n = static_cast<Eigen::Index>(esp.basis.size());
  CHECK(is_jc_triple(esp.basis, [&] { return rng.cvector(n); }, 6));
}

TEST_CASE("odd calculus acts on singular values through the isometry") {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = 4.0;
  x(1, 1) = -9.0;  // negative entry rides in the isometry factor
  const CMatrix r = odd_calculus(x, [](double t) { return std::sqrt(t); });
  CMatrix want = CMatrix::Zero(2, 2);
  want(0, 0) = 2.0;
  want(1, 1) = -3.0;
  CHECK((r - want).norm() < 1e-12);
  const CMatrix same = odd_calculus(x, [](double t) { return t; });
  CHECK((same - x).norm() < 1e-12);
}
