#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schatlab/errors.hpp"
#include "schatlab/projections.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/spaces.hpp"

using namespace schatlab;

namespace {
Subspace build(TypeKind kind, int I, int J, int N, double p,
               std::uint64_t seed, int a_dim = 1) {
  TypeSpec s;
  s.kind = kind;
  s.I = I;
  s.J = J;
  s.N = N;
  s.a_dim = a_dim;
  s.p = PIndex(p);
  s.seed = seed;
  return build_type(s);
}
}  // namespace

TEST_CASE("untwisted transpose symmetrizer") {
  const MatrixMap sym = twisted_transpose_projection(CMatrix::Identity(3, 3));
  Rng rng(3, 0);
  const CMatrix x = rng.ginibre(3, 3);
  const CMatrix y =
      sym.apply(single_block_operator(x, PIndex(2.0))).parts[0];
  CHECK((y - y.transpose()).norm() < 1e-13);
  CHECK((y - CMatrix((x + x.transpose()) / 2.0)).norm() < 1e-13);
}

TEST_CASE("factor slice recovers the grid against a unit factor") {
  Rng rng(5, 1);
  const CMatrix w = rng.ginibre(2, 3);
  for (double pv : {1.0, 1.5, 3.0}) {
    CMatrix a = rng.psd_injective(2);
    a /= schatten_norm(a, PIndex(pv));
    const CMatrix z = factor_slice(kron(w, a), 2, 3, a, PIndex(pv));
    CHECK((z - w).norm() < 1e-10);
  }
  CHECK_THROWS_AS(
      factor_slice(CMatrix::Identity(4, 4), 2, 2, CMatrix::Identity(2, 2),
                   PIndex::infinity()),
      DomainError);
}

TEST_CASE("trace-orthogonal projection onto a span") {
  CMatrix e11 = CMatrix::Zero(2, 2), e12 = CMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  e12(0, 1) = 1.0;
  const auto q = hs_projection({e11, CMatrix(3.0 * e12)});
  Rng rng(7, 2);
  const CMatrix x = rng.ginibre(2, 2);
  const CMatrix y = q(x);
  CHECK(y(0, 0) == x(0, 0));
  CHECK(y(0, 1) == x(0, 1));
  CHECK(std::abs(y(1, 0)) + std::abs(y(1, 1)) < 1e-15);
  CHECK((q(y) - y).norm() < 1e-13);
}

TEST_CASE("every projectable family passes its own verification") {
  const std::vector<Subspace> spaces{
      build(TypeKind::Sym, 3, 0, 0, 1.5, 21, 2),
      build(TypeKind::Antisym, 4, 0, 0, 1.0, 22),
      build(TypeKind::Rect, 2, 3, 0, 3.0, 23),
      build(TypeKind::SpinEven, 0, 0, 2, 1.5, 24),
      build(TypeKind::SpinOdd, 0, 0, 2, 2.0, 25, 2),
  };
  for (const Subspace& sp : spaces) {
    const MatrixMap proj = projection_for(sp);
    Rng rng(100 + sp.spec.seed, 0);
    const ProjectionReport rep =
        verify_projection(proj, sp.basis, sp.spec.p, rng, 25, {});
    CHECK(rep.idempotency < 1e-10);
    CHECK(rep.contractivity_excess < 1e-9);
    CHECK(rep.range_distance < 1e-9);
    if (sp.shape.square()) {  // PSD sampling needs square blocks
      REQUIRE(rep.positivity.has_value());
      CHECK(*rep.positivity < 1e-9);
    }
  }
}

TEST_CASE("families without a projection formula are rejected") {
  CHECK_THROWS_AS(projection_for(build(TypeKind::AFHilbert, 0, 0, 3, 1.5, 26)),
                  DomainError);
  CHECK_THROWS_AS(
      projection_for([] {
        TypeSpec s;
        s.kind = TypeKind::Sym;
        s.I = 3;
        s.p = PIndex::infinity();
        s.seed = 27;
        return build_type(s);
      }()),
      DomainError);
}

TEST_CASE("the adjoint satisfies the trace-pairing identity") {
  const Subspace sp = build(TypeKind::Rect, 2, 3, 0, 1.5, 28);
  const MatrixMap proj = projection_for(sp);
  const MatrixMap adj = adjoint_map(proj);
  Rng rng(28, 1);
  for (int t = 0; t < 10; ++t) {
    std::vector<CMatrix> xs, ys;
    for (auto [r, c] : proj.shape_in.blocks) xs.push_back(rng.ginibre(r, c));
    for (auto [r, c] : adj.shape_in.blocks) ys.push_back(rng.ginibre(r, c));
    const BlockOperator x = make_block_operator(proj.shape_in, xs, sp.spec.p);
    const BlockOperator y =
        make_block_operator(adj.shape_in, ys, sp.spec.p.conjugate());
    const Complex lhs = pairing(proj.apply(x), y);
    const Complex rhs = pairing(x, adj.apply(y));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("transport along a unitary witness keeps the projection laws") {
  const Subspace sp = build(TypeKind::Sym, 3, 0, 0, 1.5, 29);
  const MatrixMap proj = projection_for(sp);
  Rng rng(29, 2);
  const auto [r, c] = sp.shape.blocks[0];
  const CMatrix u = rng.haar_unitary(r);
  const MatrixMap moved =
      transport(proj, EquivWitness{{u}, {CMatrix(u.adjoint())}});
  std::vector<BlockOperator> image;
  for (const BlockOperator& b : sp.basis)
    image.push_back(single_block_operator(
        CMatrix(u * b.parts[0] * u.adjoint()), b.p));
  const ProjectionReport rep =
      verify_projection(moved, image, sp.spec.p, rng, 25, {});
  CHECK(rep.idempotency < 1e-10);
  CHECK(rep.contractivity_excess < 1e-9);
  CHECK(rep.range_distance < 1e-9);
  REQUIRE(rep.positivity.has_value());
  CHECK(*rep.positivity < 1e-9);  // the witness respects the order
}

TEST_CASE("exponent bridge fixes the transported density power") {
  const Subspace sp = build(TypeKind::Sym, 3, 0, 0, 2.0, 30, 2);
  const MatrixMap p2 = projection_for(sp);
  Rng rng(30, 3);
  const BlockOperator h0 =
      positive_element_with_full_support(sp.basis, p2, rng);
  CMatrix h = h0.parts[0];
  h /= schatten_norm(h, PIndex(2.0));
  for (double pv : {1.0, 4.0 / 3.0}) {
    const PIndex p(pv);
    const MatrixMap vp = v_p_bridge(p2, h, p);
    const CMatrix hp = frac_power(h, 2.0 / pv);
    const BlockOperator fixed = single_block_operator(hp, p);
    CHECK((vec(vp.apply(fixed)) - vec(fixed)).norm() < 1e-9);
    // Idempotent through the twist as well.
    std::vector<CMatrix> xs{rng.ginibre(h.rows(), h.cols())};
    const BlockOperator x = make_block_operator(vp.shape_in, xs, p);
    const BlockOperator once = vp.apply(x);
    CHECK((vec(vp.apply(once)) - vec(once)).norm() < 1e-9);
  }
}

TEST_CASE("verification flags a corrupted map") {
  const Subspace sp = build(TypeKind::Sym, 3, 0, 0, 1.5, 31);
  const MatrixMap proj = projection_for(sp);
  const MatrixMap scaled = make_map(
      proj.shape_in, proj.shape_out, [&](const std::vector<CMatrix>& parts) {
        auto out = proj.apply_parts(parts);
        for (CMatrix& m : out) m *= 1.1;
        return out;
      });
  Rng rng(31, 4);
  const ProjectionReport rep =
      verify_projection(scaled, sp.basis, sp.spec.p, rng, 25, {});
  CHECK(rep.idempotency > 1e-3);
  CHECK(rep.contractivity_excess > 1e-3);
}

TEST_CASE("a contractive coordinate-sum map that is not positive") {
  // x -> (x_11 + x_23) e_11 on 3 x 3 at the trace norm: contractive, but a
  // PSD input with negative off-diagonal mass maps to a negative output.
  const auto pw = [](const CMatrix& x) {
    CMatrix out = CMatrix::Zero(3, 3);
    out(0, 0) = x(0, 0) + x(1, 2);
    return out;
  };
  Rng rng(33, 5);
  for (int t = 0; t < 50; ++t) {
    const CMatrix x = rng.ginibre(3, 3);
    CHECK(schatten_norm(pw(x), PIndex(1.0)) <=
          schatten_norm(x, PIndex(1.0)) + 1e-12);
  }
  CVector v(3);
  v << 0.0, 1.0, -1.0;
  const CMatrix witness = v * v.adjoint();  // PSD by construction
  CHECK(min_eigenvalue(witness) > -1e-14);
  const CMatrix image = pw(witness);
  CHECK(image(0, 0).real() == doctest::Approx(-1.0));
  CHECK(min_eigenvalue(image) < -0.5);
}
