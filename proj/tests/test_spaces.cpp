#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schatlab/errors.hpp"
#include "schatlab/json_io.hpp"
#include "schatlab/projections.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/spaces.hpp"

using namespace schatlab;

namespace {
TypeSpec spec_of(TypeKind kind, int I, int J, int N, double p,
                 std::uint64_t seed) {
  TypeSpec s;
  s.kind = kind;
  s.I = I;
  s.J = J;
  s.N = N;
  s.p = PIndex(p);
  s.seed = seed;
  return s;
}
}  // namespace

TEST_CASE("built spaces have the catalog dimensions") {
  CHECK(build_type(spec_of(TypeKind::Sym, 3, 0, 0, 2.0, 1)).basis.size() == 6);
  CHECK(build_type(spec_of(TypeKind::Antisym, 4, 0, 0, 2.0, 2)).basis.size() ==
        6);
  const Subspace rect = build_type(spec_of(TypeKind::Rect, 2, 3, 0, 2.0, 3));
  CHECK(rect.basis.size() == 6);
  CHECK(rect.shape.blocks.size() == 2);
  CHECK(build_type(spec_of(TypeKind::SpinEven, 0, 0, 2, 2.0, 4)).basis.size() ==
        6);
  CHECK(build_type(spec_of(TypeKind::SpinOdd, 0, 0, 2, 2.0, 5)).basis.size() ==
        5);
  CHECK(build_type(spec_of(TypeKind::AFHilbert, 0, 0, 3, 2.0, 6)).basis.size() ==
        3);
}

TEST_CASE("antisymmetric-type twists require even size") {
  CHECK_THROWS_AS(build_type(spec_of(TypeKind::Antisym, 3, 0, 0, 2.0, 7)),
                  DomainError);
}

TEST_CASE("supplied twists are validated") {
  TypeSpec s = spec_of(TypeKind::Sym, 3, 0, 0, 2.0, 8);
  s.O = CMatrix(2.0 * CMatrix::Identity(3, 3));  // not unitary
  CHECK_THROWS_AS(build_type(s), DomainError);
  s.O = Rng(8, 0).haar_unitary(3);  // generically not symmetric
  CHECK_THROWS_AS(build_type(s), DomainError);
}

TEST_CASE("the twisted fixed space of even type contains the identity") {
  const Subspace sp = build_type(spec_of(TypeKind::Antisym, 4, 0, 0, 1.5, 9));
  const MatrixMap proj = projection_for(sp);
  const BlockOperator one = single_block_operator(
      CMatrix::Identity(sp.shape.blocks[0].first, sp.shape.blocks[0].second),
      PIndex(1.5));
  CHECK((vec(proj.apply(one)) - vec(one)).norm() < 1e-10);
}

TEST_CASE("type specs and built spaces survive a json round trip") {
  TypeSpec s = spec_of(TypeKind::SpinOdd, 0, 0, 2, 1.5, 10);
  s.a_dim = 2;
  const Subspace sp = build_type(s);
  const Json j = to_json(sp);
  const Subspace back = subspace_from_json(j);
  REQUIRE(back.basis.size() == sp.basis.size());
  CHECK(back.spec.kind == TypeKind::SpinOdd);
  for (std::size_t k = 0; k < sp.basis.size(); ++k)
    CHECK((vec(back.basis[k]) - vec(sp.basis[k])).norm() < 1e-15);
  CHECK(type_kind_from_string(to_string(TypeKind::Rect)) == TypeKind::Rect);
  CHECK_THROWS_AS(type_kind_from_string("nonsense"), DomainError);
}

TEST_CASE("equivalence along a unitary witness is detected and normalized") {
  const Subspace sp = build_type(spec_of(TypeKind::Sym, 3, 0, 0, 1.5, 11));
  Rng rng(11, 9);
  const auto [r, c] = sp.shape.blocks[0];
  const CMatrix u = rng.haar_unitary(r), v = rng.haar_unitary(c);
  std::vector<BlockOperator> moved;
  for (const BlockOperator& b : sp.basis)
    moved.push_back(single_block_operator(CMatrix(u * b.parts[0] * v), b.p));
  const EquivalenceCheck eq =
      check_equivalence(sp.basis, moved, EquivWitness{{u}, {v}});
  CHECK(eq.equivalent);
  CHECK(eq.defect < 1e-10);
  // A witness that misses the target span is refused.
  const EquivalenceCheck bad = check_equivalence(
      sp.basis, moved,
      EquivWitness{{CMatrix::Identity(r, r)}, {CMatrix::Identity(c, c)}});
  CHECK_FALSE(bad.equivalent);
}

TEST_CASE("disjoint components of a two-block span are recovered") {
  Rng rng(13, 2);
  std::vector<CMatrix> span;
  for (int t = 0; t < 3; ++t)
    span.push_back(direct_sum({rng.ginibre(2, 2), CMatrix::Zero(3, 3)}));
  for (int t = 0; t < 2; ++t)
    span.push_back(direct_sum({CMatrix::Zero(2, 2), rng.ginibre(3, 3)}));
  const auto comps = disjoint_components(span);
  REQUIRE(comps.size() == 2);
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t b = a + 1; b < comps.size(); ++b)
      for (const CMatrix& x : comps[a].basis)
        for (const CMatrix& y : comps[b].basis)
          CHECK(are_disjoint(x, y));

  // A full matrix span admits no splitting.
  std::vector<CMatrix> full;
  for (int t = 0; t < 4; ++t) full.push_back(rng.ginibre(3, 3));
  CHECK(disjoint_components(full).size() == 1);
}

TEST_CASE("positive full-support element search") {
  const Subspace sp = build_type(spec_of(TypeKind::Sym, 3, 0, 0, 1.5, 14));
  const MatrixMap proj = projection_for(sp);
  Rng rng(14, 3);
  const BlockOperator h = positive_element_with_full_support(sp.basis, proj, rng);
  CHECK(min_eigenvalue(h.parts[0]) > -1e-10);

  // The plain antisymmetrizer fixes no positive element at all.
  const Eigen::Index n = 3;
  const BlockShape shape = single_block(n, n);
  const MatrixMap anti =
      make_map(shape, shape, [](const std::vector<CMatrix>& parts) {
        return std::vector<CMatrix>{
            CMatrix((parts[0] - parts[0].transpose()) / 2.0)};
      });
  std::vector<BlockOperator> basis;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      CMatrix b = CMatrix::Zero(n, n);
      b(i, j) = 1.0;
      b(j, i) = -1.0;
      basis.push_back(single_block_operator(b, PIndex(1.5)));
    }
  Rng rng2(14, 4);
  CHECK_THROWS_AS(positive_element_with_full_support(basis, anti, rng2, 8),
                  SearchFailure);
}
