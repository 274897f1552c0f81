#include "schatlab/spaces.hpp"

#include <cmath>

#include "schatlab/errors.hpp"
#include "schatlab/fock.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/spin.hpp"

namespace schatlab {

std::string to_string(TypeKind kind) {
  switch (kind) {
    case TypeKind::Sym: return "sym";
    case TypeKind::Antisym: return "antisym";
    case TypeKind::Rect: return "rect";
    case TypeKind::AFHilbert: return "af_hilbert";
    case TypeKind::SpinEven: return "spin_even";
    case TypeKind::SpinOdd: return "spin_odd";
  }
  throw DomainError("to_string: unknown kind");
}

TypeKind type_kind_from_string(const std::string& name) {
  if (name == "sym") return TypeKind::Sym;
  if (name == "antisym") return TypeKind::Antisym;
  if (name == "rect") return TypeKind::Rect;
  if (name == "af_hilbert") return TypeKind::AFHilbert;
  if (name == "spin_even") return TypeKind::SpinEven;
  if (name == "spin_odd") return TypeKind::SpinOdd;
  throw DomainError("type_kind_from_string: unknown kind '" + name + "'");
}

namespace {

// Seed streams for the independent pieces generated from one TypeSpec.
constexpr std::uint64_t kTwistStream = 11;
constexpr std::uint64_t kFactorStream = 12;
constexpr std::uint64_t kFactor2Stream = 13;

void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

bool is_unitary(const CMatrix& u, const Tolerances& tol) {
  const Eigen::Index n = u.rows();
  return u.cols() == n &&
         approx_equal(CMatrix(u * u.adjoint()), CMatrix::Identity(n, n), tol);
}

CMatrix standard_antisymmetric(Eigen::Index n) {
  CMatrix j = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    j(k, k + 1) = 1.0;
    j(k + 1, k) = -1.0;
  }
  return j;
}

CMatrix generated_twist(const TypeSpec& spec, const Tolerances& tol) {
  Rng rng(spec.seed, kTwistStream);
  const CMatrix w = rng.haar_unitary(spec.I);
  CMatrix o;
  if (spec.kind == TypeKind::Sym) {
    o = w * w.transpose();
  } else {
    require(spec.I % 2 == 0, "build_type: antisym twist needs even size");
    o = w * standard_antisymmetric(spec.I) * w.transpose();
  }
  (void)tol;
  return o;
}

void check_twist(const TypeSpec& spec, const CMatrix& o,
                 const Tolerances& tol) {
  require(o.rows() == spec.I && o.cols() == spec.I,
          "build_type: twist size does not match I");
  require(is_unitary(o, tol), "build_type: twist must be unitary");
  const double sign = spec.kind == TypeKind::Sym ? 1.0 : -1.0;
  require(approx_equal(CMatrix(o.transpose()), CMatrix(sign * o), tol),
          "build_type: twist has the wrong transpose symmetry");
}

CMatrix normalized_factor(CMatrix a, const PIndex& p) {
  const double n = schatten_norm(a, p);
  return CMatrix(a / n);
}

CMatrix generated_factor(std::uint64_t seed, std::uint64_t stream,
                         Eigen::Index dim) {
  Rng rng(seed, stream);
  return rng.psd_injective(dim);
}

void check_factor(const CMatrix& a, const Tolerances& tol) {
  require(a.rows() == a.cols(), "build_type: factor must be square");
  require(approx_equal(a, CMatrix(a.adjoint()), tol),
          "build_type: factor must be Hermitian");
  require(min_eigenvalue(a, tol) > tol.rank_cut,
          "build_type: factor must be positive and injective");
}

// Joint normalization ||a1||_p^p + ||a2||_p^p = 1 by one common scale; at
// p = inf each factor is normalized on its own (the scale only matters to
// the projection weights, which need a finite exponent anyway).
void normalize_pair(CMatrix& a1, CMatrix& a2, const PIndex& p) {
  if (p.is_inf()) {
    a1 = normalized_factor(a1, p);
    a2 = normalized_factor(a2, p);
    return;
  }
  const double pv = p.value();
  const double total = std::pow(schatten_norm(a1, p), pv) +
                       std::pow(schatten_norm(a2, p), pv);
  const double scale = std::pow(total, -1.0 / pv);
  a1 = CMatrix(scale * a1);
  a2 = CMatrix(scale * a2);
}

// Unitary of the form cos(t) 1 + i sin(t) g where g is a random real unit
// combination of anticommuting involutions. With with_top the top word
// (made self-adjoint and involutive) joins the generators, which leaves the
// smaller word span; the paired family needs that component so the two
// slots of its twist genuinely differ.
CMatrix generated_spin_unitary(const SpinSystem& sys, std::uint64_t seed,
                               bool with_top) {
  Rng rng(seed, kTwistStream);
  const SpinSubspace fsp = f_space(sys);
  const Eigen::Index gens = 2 * sys.N + (with_top ? 1 : 0);
  RVector u = rng.rvector(gens);
  u /= u.norm();
  const double theta = rng.uniform() * 3.0;
  CMatrix g = CMatrix::Zero(sys.dim(), sys.dim());
  for (Eigen::Index j = 0; j < 2 * sys.N; ++j)
    g += u(j) * fsp.basis[static_cast<std::size_t>(j) + 1];
  if (with_top) {
    CMatrix top = fsp.basis.back();
    if (sys.N % 2 == 1) top = CMatrix(Complex(0.0, 1.0) * top);
    g += u(gens - 1) * top;
  }
  return CMatrix(std::cos(theta) *
                     CMatrix::Identity(sys.dim(), sys.dim()) +
                 Complex(0.0, std::sin(theta)) * g);
}

void check_spin_unitary(const SpinSystem& sys, const CMatrix& v,
                        const Tolerances& tol) {
  require(v.rows() == sys.dim() && v.cols() == sys.dim(),
          "build_type: spin twist size does not match N");
  require(is_unitary(v, tol), "build_type: spin twist must be unitary");
  sigma_map(sys, v, tol);  // throws unless v lies in the word span
}

void check_independent(const std::vector<BlockOperator>& basis,
                       const Tolerances& tol) {
  Eigen::MatrixXcd cols(basis[0].shape.vec_dim(),
                        static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = vec(basis[j]);
  const Eigen::MatrixXcd onb = orthonormal_columns(cols, tol.rank_cut);
  if (onb.cols() != cols.cols())
    throw NumericalFailure("build_type: basis is not linearly independent");
}

Subspace build_twisted_tensor(TypeSpec spec, const Tolerances& tol) {
  require(spec.I >= 1, "build_type: I must be >= 1");
  if (!spec.O) spec.O = generated_twist(spec, tol);
  check_twist(spec, *spec.O, tol);
  if (!spec.a) spec.a = generated_factor(spec.seed, kFactorStream, spec.a_dim);
  check_factor(*spec.a, tol);
  spec.a = normalized_factor(*spec.a, spec.p);
  const Eigen::Index I = spec.I;
  // Fixed space of y -> O y^T O^*, found by projecting the matrix units.
  const CMatrix& o = *spec.O;
  Eigen::MatrixXcd cols(I * I, I * I);
  Eigen::Index n = 0;
  for (Eigen::Index k = 0; k < I; ++k)
    for (Eigen::Index l = 0; l < I; ++l) {
      CMatrix e = CMatrix::Zero(I, I);
      e(k, l) = 1.0;
      const CMatrix img = 0.5 * (e + o * e.transpose() * o.adjoint());
      cols.col(n++) = Eigen::Map<const CVector>(img.data(), I * I);
    }
  const Eigen::MatrixXcd onb = orthonormal_columns(cols, tol.rank_cut);
  const Eigen::Index expected = spec.kind == TypeKind::Sym
                                    ? I * (I + 1) / 2
                                    : I * (I - 1) / 2;
  if (onb.cols() != expected)
    throw NumericalFailure("build_type: unexpected fixed-space dimension");

  Subspace space;
  const Eigen::Index d = spec.a->rows();
  space.shape = single_block(I * d, I * d);
  for (Eigen::Index j = 0; j < onb.cols(); ++j) {
    const CMatrix y = Eigen::Map<const CMatrix>(onb.col(j).data(), I, I);
    space.basis.push_back(
        single_block_operator(kron(y, *spec.a), spec.p));
  }
  space.spec = std::move(spec);
  return space;
}

Subspace build_rect(TypeSpec spec, const Tolerances& tol) {
  require(spec.I >= 1 && spec.J >= 1, "build_type: I, J must be >= 1");
  if (!spec.a) spec.a = generated_factor(spec.seed, kFactorStream, spec.a_dim);
  if (!spec.a2)
    spec.a2 = generated_factor(spec.seed, kFactor2Stream, spec.a2_dim);
  check_factor(*spec.a, tol);
  check_factor(*spec.a2, tol);
  normalize_pair(*spec.a, *spec.a2, spec.p);
  const Eigen::Index I = spec.I, J = spec.J;
  const Eigen::Index d1 = spec.a->rows(), d2 = spec.a2->rows();
  Subspace space;
  space.shape = BlockShape{{{I * d1, J * d1}, {J * d2, I * d2}}};
  for (Eigen::Index i = 0; i < I; ++i)
    for (Eigen::Index j = 0; j < J; ++j) {
      CMatrix w = CMatrix::Zero(I, J);
      w(i, j) = 1.0;
      space.basis.push_back(make_block_operator(
          space.shape,
          {kron(w, *spec.a), kron(CMatrix(w.transpose()), *spec.a2)},
          spec.p));
    }
  space.spec = std::move(spec);
  return space;
}

Subspace build_af_hilbert(TypeSpec spec, const Tolerances& tol) {
  const FockSpace fock(spec.N);
  if (!spec.a) spec.a = generated_factor(spec.seed, kFactorStream, spec.a_dim);
  check_factor(*spec.a, tol);
  spec.a = normalized_factor(*spec.a, spec.p);
  const Eigen::Index d = spec.a->rows();
  Subspace space;
  for (int m = 1; m <= spec.N; ++m)
    space.shape.blocks.emplace_back(fock.slice_dim(m) * d,
                                    fock.slice_dim(m - 1) * d);
  for (int k = 1; k <= spec.N; ++k) {
    CVector t = CVector::Zero(spec.N);
    t(k - 1) = 1.0;
    std::vector<CMatrix> parts;
    for (int m = 1; m <= spec.N; ++m) {
      const CMatrix x = spec.p.is_inf()
                            ? restricted_creation(fock, k, m).matrix
                            : phi_m(fock, m, t, spec.p);
      parts.push_back(kron(x, *spec.a));
    }
    space.basis.push_back(
        make_block_operator(space.shape, std::move(parts), spec.p));
  }
  space.spec = std::move(spec);
  return space;
}

Subspace build_spin_even(TypeSpec spec, const Tolerances& tol) {
  const SpinSystem sys = spin_system(spec.N);
  if (!spec.v) spec.v = generated_spin_unitary(sys, spec.seed, true);
  check_spin_unitary(sys, *spec.v, tol);
  if (!spec.a) spec.a = generated_factor(spec.seed, kFactorStream, spec.a_dim);
  if (!spec.a2)
    spec.a2 = generated_factor(spec.seed, kFactor2Stream, spec.a2_dim);
  check_factor(*spec.a, tol);
  check_factor(*spec.a2, tol);
  normalize_pair(*spec.a, *spec.a2, spec.p);
  const CMatrix sv = sigma_map(sys, *spec.v, tol);
  const Eigen::Index n = sys.dim();
  const Eigen::Index d1 = spec.a->rows(), d2 = spec.a2->rows();
  Subspace space;
  space.shape = BlockShape{{{n * d1, n * d1}, {n * d2, n * d2}}};
  for (const CMatrix& b : f_space(sys).basis) {
    const CMatrix sb = sigma_map(sys, b, tol);
    space.basis.push_back(make_block_operator(
        space.shape,
        {kron(CMatrix(*spec.v * b), *spec.a),
         kron(CMatrix(sv * sb), *spec.a2)},
        spec.p));
  }
  space.spec = std::move(spec);
  return space;
}

Subspace build_spin_odd(TypeSpec spec, const Tolerances& tol) {
  const SpinSystem sys = spin_system(spec.N);
  if (!spec.v) spec.v = generated_spin_unitary(sys, spec.seed, false);
  check_spin_unitary(sys, *spec.v, tol);
  if (!spec.a) spec.a = generated_factor(spec.seed, kFactorStream, spec.a_dim);
  check_factor(*spec.a, tol);
  spec.a = normalized_factor(*spec.a, spec.p);
  const Eigen::Index n = sys.dim();
  const Eigen::Index d = spec.a->rows();
  Subspace space;
  space.shape = single_block(n * d, n * d);
  for (const CMatrix& b : e_space(sys).basis)
    space.basis.push_back(
        single_block_operator(kron(CMatrix(*spec.v * b), *spec.a), spec.p));
  space.spec = std::move(spec);
  return space;
}

}  // namespace

Subspace build_type(const TypeSpec& spec, const Tolerances& tol) {
  tol.validate();
  Subspace space;
  switch (spec.kind) {
    case TypeKind::Sym:
    case TypeKind::Antisym:
      space = build_twisted_tensor(spec, tol);
      break;
    case TypeKind::Rect:
      space = build_rect(spec, tol);
      break;
    case TypeKind::AFHilbert:
      space = build_af_hilbert(spec, tol);
      break;
    case TypeKind::SpinEven:
      space = build_spin_even(spec, tol);
      break;
    case TypeKind::SpinOdd:
      space = build_spin_odd(spec, tol);
      break;
  }
  check_independent(space.basis, tol);
  return space;
}

namespace {

Eigen::MatrixXcd span_onb(const std::vector<BlockOperator>& xs,
                          const Tolerances& tol) {
  Eigen::MatrixXcd cols(xs[0].shape.vec_dim(),
                        static_cast<Eigen::Index>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = vec(xs[j]);
  return orthonormal_columns(cols, tol.rank_cut);
}

double span_residual(const Eigen::MatrixXcd& onb, const CVector& v) {
  return (v - onb * (onb.adjoint() * v)).norm() / std::max(v.norm(), 1e-300);
}

std::vector<CMatrix> block_slice(const std::vector<BlockOperator>& xs,
                                 std::size_t i) {
  std::vector<CMatrix> out;
  for (const BlockOperator& x : xs) out.push_back(x.parts[i]);
  return out;
}

}  // namespace

EquivalenceCheck check_equivalence(const std::vector<BlockOperator>& xs,
                                   const std::vector<BlockOperator>& ys,
                                   const EquivWitness& witness,
                                   const Tolerances& tol) {
  if (xs.empty() || ys.empty())
    throw DomainError("check_equivalence: empty span");
  const std::size_t nblocks = xs[0].shape.count();
  if (witness.u.size() != nblocks || witness.v.size() != nblocks)
    throw DomainError("check_equivalence: witness block count mismatch");

  EquivalenceCheck result;
  for (std::size_t i = 0; i < nblocks; ++i) {
    if (!is_partial_isometry(witness.u[i], tol) ||
        !is_partial_isometry(witness.v[i], tol))
      return result;  // not equivalent; defect stays zero by convention
  }

  const Eigen::MatrixXcd onb_x = span_onb(xs, tol);
  const Eigen::MatrixXcd onb_y = span_onb(ys, tol);
  const PIndex p = xs[0].p;

  const auto push = [&](const BlockOperator& x) {
    std::vector<CMatrix> parts(nblocks);
    for (std::size_t i = 0; i < nblocks; ++i)
      parts[i] = witness.u[i] * x.parts[i] * witness.v[i];
    return make_block_operator(ys[0].shape, std::move(parts), p);
  };
  const auto pull = [&](const BlockOperator& y) {
    std::vector<CMatrix> parts(nblocks);
    for (std::size_t i = 0; i < nblocks; ++i)
      parts[i] = witness.u[i].adjoint() * y.parts[i] * witness.v[i].adjoint();
    return make_block_operator(xs[0].shape, std::move(parts), p);
  };

  double defect = 0.0;
  for (const BlockOperator& x : xs)
    defect = std::max(defect, span_residual(onb_y, vec(push(x))));
  for (const BlockOperator& y : ys)
    defect = std::max(defect, span_residual(onb_x, vec(pull(y))));

  // Witness normalized to the supports of the two spans.
  for (std::size_t i = 0; i < nblocks; ++i) {
    const CMatrix slx = support_left(block_slice(xs, i), tol);
    const CMatrix srx = support_right(block_slice(xs, i), tol);
    const CMatrix sly = support_left(block_slice(ys, i), tol);
    const CMatrix sry = support_right(block_slice(ys, i), tol);
    const CMatrix un = sly * witness.u[i] * slx;
    const CMatrix vn = srx * witness.v[i] * sry;
    result.normalized.u.push_back(un);
    result.normalized.v.push_back(vn);
    defect = std::max(defect, (CMatrix(un.adjoint() * un) - slx).norm());
    defect = std::max(defect, (CMatrix(un * un.adjoint()) - sly).norm());
    defect = std::max(defect, (CMatrix(vn * vn.adjoint()) - srx).norm());
    defect = std::max(defect, (CMatrix(vn.adjoint() * vn) - sry).norm());
  }
  // The normalized witness implements the same map on the span.
  for (const BlockOperator& x : xs) {
    std::vector<CMatrix> parts(nblocks);
    for (std::size_t i = 0; i < nblocks; ++i)
      parts[i] =
          result.normalized.u[i] * x.parts[i] * result.normalized.v[i];
    const BlockOperator via_norm =
        make_block_operator(ys[0].shape, std::move(parts), p);
    defect = std::max(defect,
                      (vec(via_norm) - vec(push(x))).norm() /
                          std::max(vec(x).norm(), 1e-300));
  }

  result.defect = defect;
  result.equivalent = defect <= tol.eq_abs * 1e2 + tol.eq_rel * 1e2;
  return result;
}

namespace {

std::vector<CMatrix> independent_matrices(const std::vector<CMatrix>& span,
                                          const Tolerances& tol) {
  const Eigen::Index rows = span[0].rows(), cols = span[0].cols();
  Eigen::MatrixXcd stacked(rows * cols,
                           static_cast<Eigen::Index>(span.size()));
  double scale = 0.0;
  for (const CMatrix& m : span) scale = std::max(scale, m.norm());
  Eigen::Index n = 0;
  for (const CMatrix& m : span)
    if (m.norm() > tol.rank_cut * std::max(scale, 1.0))
      stacked.col(n++) = Eigen::Map<const CVector>(m.data(), rows * cols);
  if (n == 0) return {};
  const Eigen::MatrixXcd onb =
      orthonormal_columns(stacked.leftCols(n), tol.rank_cut);
  std::vector<CMatrix> out;
  for (Eigen::Index j = 0; j < onb.cols(); ++j)
    out.push_back(CMatrix(
        Eigen::Map<const CMatrix>(onb.col(j).data(), rows, cols)));
  return out;
}

Eigen::Index projector_rank(const CMatrix& e) {
  return static_cast<Eigen::Index>(std::lround(e.trace().real()));
}

}  // namespace

namespace {

// Support closure of a right projection seed: alternate left support of
// span * e and right support of f * span until stable.
std::pair<CMatrix, CMatrix> support_closure(const std::vector<CMatrix>& work,
                                            CMatrix e, const Tolerances& tol) {
  CMatrix f;
  for (int iter = 0;; ++iter) {
    std::vector<CMatrix> le, rf;
    for (const CMatrix& x : work) le.push_back(CMatrix(x * e));
    f = support_left(le, tol);
    for (const CMatrix& x : work) rf.push_back(CMatrix(f * x));
    const CMatrix e2 = support_right(rf, tol);
    const bool stable = projector_rank(e2) == projector_rank(e) &&
                        (e2 - e).norm() <= tol.eq_abs * 1e2;
    e = e2;
    if (stable) return {f, e};
    if (iter >= 256)
      throw NumericalFailure("disjoint_components: closure did not settle");
  }
}

}  // namespace

std::vector<DisjointComponent> disjoint_components(
    const std::vector<CMatrix>& span, const Tolerances& tol) {
  std::vector<CMatrix> work = independent_matrices(span, tol);
  std::vector<DisjointComponent> components;
  if (work.empty()) return components;
  const Eigen::Index rows = work[0].rows(), cols = work[0].cols();

  const auto fallback_whole = [&] {
    DisjointComponent whole;
    whole.basis = work;
    whole.left = support_left(work, tol);
    whole.right = support_right(work, tol);
    return std::vector<DisjointComponent>{std::move(whole)};
  };

  // sum_j r_j x_j^* x_j commutes with the right supports of every
  // operator-disjoint splitting of the span, so for spread-out weights its
  // eigenvectors sit inside single components. Each eigenvector seeds a
  // support closure; the distinct closures are the candidate components.
  CMatrix gram = CMatrix::Zero(cols, cols);
  for (std::size_t j = 0; j < work.size(); ++j) {
    const double r = 1.0 + 0.5 * std::fmod(0.6180339887 * (1.0 + j), 1.0);
    gram += r * CMatrix(work[j].adjoint() * work[j]);
  }
  const HermEig eig = herm_eig(gram, tol);
  const double top = eig.values(eig.values.size() - 1);
  std::vector<std::pair<CMatrix, CMatrix>> candidates;  // (left, right)
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= tol.rank_cut * top) continue;
    const CVector v = eig.vectors.col(k);
    auto [f, e] = support_closure(work, CMatrix(v * v.adjoint()), tol);
    bool known = false;
    for (const auto& [fc, ec] : candidates)
      if ((ec - e).norm() < 1e-6) known = true;
    if (!known) candidates.emplace_back(std::move(f), std::move(e));
  }
  // Merge candidates whose right supports overlap.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < candidates.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < candidates.size() && !merged; ++j) {
        if ((candidates[i].second * candidates[j].second).norm() < 1e-6)
          continue;
        const Eigen::MatrixXcd joint = orthonormal_columns(
            (Eigen::MatrixXcd(cols, 2 * cols) << candidates[i].second,
             candidates[j].second)
                .finished(),
            tol.rank_cut);
        candidates[i] =
            support_closure(work, CMatrix(joint * joint.adjoint()), tol);
        candidates.erase(candidates.begin() +
                         static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }

  // Split every element along the candidate supports and keep the pieces
  // only if they stay inside the span and exhaust its dimension.
  const Eigen::MatrixXcd onb = [&] {
    Eigen::MatrixXcd calls(rows * cols,
                           static_cast<Eigen::Index>(work.size()));
    for (std::size_t j = 0; j < work.size(); ++j)
      calls.col(static_cast<Eigen::Index>(j)) =
          Eigen::Map<const CVector>(work[j].data(), rows * cols);
    return orthonormal_columns(calls, tol.rank_cut);
  }();
  std::size_t total_dim = 0;
  for (const auto& [f, e] : candidates) {
    std::vector<CMatrix> pieces;
    for (const CMatrix& x : work) {
      const CMatrix part = f * x * e;
      const CVector v = Eigen::Map<const CVector>(part.data(), part.size());
      if (v.norm() > 1e-8 && span_residual(onb, v) > 1e-7)
        return fallback_whole();
      pieces.push_back(part);
    }
    DisjointComponent comp;
    comp.basis = independent_matrices(pieces, tol);
    if (comp.basis.empty()) continue;
    comp.left = f;
    comp.right = e;
    total_dim += comp.basis.size();
    components.push_back(std::move(comp));
  }
  if (total_dim != work.size()) return fallback_whole();
  return components;
}

BlockOperator positive_element_with_full_support(
    const std::vector<BlockOperator>& basis, const MatrixMap& projection,
    Rng& rng, int budget, const Tolerances& tol) {
  if (basis.empty())
    throw DomainError("positive_element_with_full_support: empty span");
  const BlockShape& shape = basis[0].shape;
  if (!shape.square())
    throw DomainError(
        "positive_element_with_full_support: blocks must be square");
  const PIndex p = basis[0].p;

  std::vector<Eigen::Index> target_rank;
  for (std::size_t i = 0; i < shape.count(); ++i) {
    const CMatrix sl = support_left(block_slice(basis, i), tol);
    const CMatrix sr = support_right(block_slice(basis, i), tol);
    if ((sl - sr).norm() > 1e-7 * static_cast<double>(sl.rows()))
      throw SearchFailure(
          "positive_element_with_full_support: left and right supports of "
          "the span differ");
    target_rank.push_back(projector_rank(sl));
  }

  BlockOperator acc = zero_block_operator(shape, p);
  for (int iter = 1; iter <= budget; ++iter) {
    std::vector<CMatrix> parts;
    for (auto [r, c] : shape.blocks) parts.push_back(rng.psd(r));
    acc = acc + projection.apply(make_block_operator(shape, parts, p));
    const BlockOperator h = Complex(1.0 / iter) * acc;
    bool ok = true;
    for (std::size_t i = 0; i < shape.count(); ++i) {
      const CMatrix& hi = h.parts[i];
      const double scale = std::max(hi.norm(), 1e-300);
      if ((hi - CMatrix(hi.adjoint())).norm() > 1e-8 * scale) ok = false;
      if (!ok) break;
      const HermEig eig = herm_eig(CMatrix(0.5 * (hi + hi.adjoint())), tol);
      if (eig.values(0) < -tol.psd_slack * scale) ok = false;
      Eigen::Index rank = 0;
      for (Eigen::Index j = 0; j < eig.values.size(); ++j)
        if (eig.values(j) > tol.rank_cut * eig.values.maxCoeff()) ++rank;
      if (rank != target_rank[i]) ok = false;
      if (!ok) break;
    }
    if (ok) return h;
  }
  throw SearchFailure(
      "positive_element_with_full_support: budget exhausted without a "
      "full-support positive element");
}

}  // namespace schatlab
