#include "schatlab/projections.hpp"

#include <cmath>

#include "schatlab/errors.hpp"
#include "schatlab/fock.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/spin.hpp"

namespace schatlab {

BlockOperator MatrixMap::apply(const BlockOperator& x) const {
  if (!(x.shape == shape_in)) throw DomainError("MatrixMap: shape mismatch");
  return make_block_operator(shape_out, apply_parts(x.parts), x.p);
}

MatrixMap make_map(
    BlockShape shape_in, BlockShape shape_out,
    std::function<std::vector<CMatrix>(const std::vector<CMatrix>&)> action) {
  MatrixMap map{std::move(shape_in), std::move(shape_out), std::move(action),
                std::nullopt};
  const Eigen::Index din = map.shape_in.vec_dim();
  const Eigen::Index dout = map.shape_out.vec_dim();
  if (din <= MatrixMap::kMaterializeLimit &&
      dout <= MatrixMap::kMaterializeLimit) {
    Eigen::MatrixXcd dense(dout, din);
    const PIndex p(2.0);
    for (Eigen::Index j = 0; j < din; ++j) {
      CVector e = CVector::Zero(din);
      e(j) = 1.0;
      dense.col(j) = vec(map.apply(unvec(map.shape_in, e, p)));
    }
    map.materialized = std::move(dense);
  }
  return map;
}

MatrixMap identity_map(const BlockShape& shape) {
  return make_map(shape, shape,
                  [](const std::vector<CMatrix>& parts) { return parts; });
}

MatrixMap compose(const MatrixMap& lhs, const MatrixMap& rhs) {
  if (!(rhs.shape_out == lhs.shape_in))
    throw DomainError("compose: inner shapes differ");
  MatrixMap map{rhs.shape_in, lhs.shape_out,
                [l = lhs.apply_parts, r = rhs.apply_parts](
                    const std::vector<CMatrix>& parts) { return l(r(parts)); },
                std::nullopt};
  if (lhs.materialized && rhs.materialized)
    map.materialized = *lhs.materialized * *rhs.materialized;
  return map;
}

namespace {

// Permutation T_S with vec_S(y^T) = T_S vec_{S^T}(y): pairs the row-major
// coordinates of a shape with those of its transpose.
Eigen::MatrixXcd transpose_permutation(const BlockShape& shape) {
  const Eigen::Index d = shape.vec_dim();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
  Eigen::Index base = 0;
  for (auto [r, c] : shape.blocks) {
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index k = 0; k < c; ++k)
        t(base + j * c + k, base + k * r + j) = 1.0;
    base += r * c;
  }
  return t;
}

}  // namespace

MatrixMap adjoint_map(const MatrixMap& map) {
  if (!map.materialized)
    throw DomainError("adjoint_map: requires a materialized map");
  const Eigen::MatrixXcd tin = transpose_permutation(map.shape_in);
  const Eigen::MatrixXcd tout = transpose_permutation(map.shape_out);
  // <M x, y> = <x, M' y> under the bilinear pairing; no complex conjugation.
  Eigen::MatrixXcd dense =
      tin.transpose() * map.materialized->transpose() * tout;
  BlockShape shp_in = map.shape_out.transposed();
  BlockShape shp_out = map.shape_in.transposed();
  MatrixMap adj{shp_in, shp_out, nullptr, std::move(dense)};
  adj.apply_parts = [shp_in, shp_out, m = *adj.materialized](
                        const std::vector<CMatrix>& parts) {
    const BlockOperator x = make_block_operator(shp_in, parts, PIndex(2.0));
    return unvec(shp_out, CVector(m * vec(x)), PIndex(2.0)).parts;
  };
  return adj;
}

MatrixMap twisted_transpose_projection(const CMatrix& O) {
  if (O.rows() != O.cols())
    throw DomainError("twisted_transpose_projection: O must be square");
  const Eigen::Index n = O.rows();
  const CMatrix Oc = O;
  return make_map(single_block(n, n), single_block(n, n),
                  [Oc](const std::vector<CMatrix>& parts) {
                    const CMatrix& x = parts[0];
                    CMatrix out =
                        0.5 * (x + Oc * x.transpose() * Oc.adjoint());
                    return std::vector<CMatrix>{std::move(out)};
                  });
}

CMatrix factor_slice(const CMatrix& x, Eigen::Index rows, Eigen::Index cols,
                     const CMatrix& a, const PIndex& p, const Tolerances& tol) {
  if (p.is_inf())
    throw DomainError("factor_slice: weight undefined at p = inf");
  const Eigen::Index d = a.rows();
  if (x.rows() != rows * d || x.cols() != cols * d)
    throw DomainError("factor_slice: grid does not match input");
  const CMatrix weight = frac_power(a, p.value() - 1.0, tol);
  CMatrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      z(i, j) = (weight * x.block(i * d, j * d, d, d)).trace();
  return z;
}

std::function<CMatrix(const CMatrix&)> hs_projection(
    const std::vector<CMatrix>& span, const Tolerances& tol) {
  if (span.empty()) throw DomainError("hs_projection: empty span");
  const Eigen::Index rows = span[0].rows(), cols = span[0].cols();
  const Eigen::Index vdim = rows * cols;
  Eigen::MatrixXcd stacked(vdim, static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j)
    stacked.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const CVector>(span[j].data(), vdim);
  const Eigen::MatrixXcd onb = orthonormal_columns(stacked, tol.rank_cut);
  return [rows, cols, onb](const CMatrix& z) {
    if (z.rows() != rows || z.cols() != cols)
      throw DomainError("hs_projection: input dimension mismatch");
    const CVector v = Eigen::Map<const CVector>(z.data(), rows * cols);
    const CVector w = onb * (onb.adjoint() * v);
    return CMatrix(Eigen::Map<const CMatrix>(w.data(), rows, cols));
  };
}

namespace {

MatrixMap twisted_tensor_projection(const Subspace& space,
                                    const Tolerances& tol) {
  const TypeSpec& spec = space.spec;
  const CMatrix a = *spec.a;
  const Eigen::Index I = spec.I;
  const MatrixMap po = twisted_transpose_projection(*spec.O);
  const PIndex p = spec.p;
  return make_map(space.shape, space.shape,
                  [I, a, po, p, tol](const std::vector<CMatrix>& parts) {
                    const CMatrix z = factor_slice(parts[0], I, I, a, p, tol);
                    const CMatrix y = po.apply_parts({z})[0];
                    return std::vector<CMatrix>{kron(y, a)};
                  });
}

MatrixMap rect_projection(const Subspace& space, const Tolerances& tol) {
  const TypeSpec& spec = space.spec;
  const CMatrix a1 = *spec.a, a2 = *spec.a2;
  const Eigen::Index I = spec.I, J = spec.J;
  const PIndex p = spec.p;
  return make_map(
      space.shape, space.shape,
      [I, J, a1, a2, p, tol](const std::vector<CMatrix>& parts) {
        const CMatrix z1 = factor_slice(parts[0], I, J, a1, p, tol);
        const CMatrix z2 = factor_slice(parts[1], J, I, a2, p, tol);
        const CMatrix w = z1 + z2.transpose();
        return std::vector<CMatrix>{kron(w, a1),
                                    kron(CMatrix(w.transpose()), a2)};
      });
}

MatrixMap spin_even_projection(const Subspace& space, const Tolerances& tol) {
  const TypeSpec& spec = space.spec;
  const SpinSystem sys = spin_system(spec.N);
  const CMatrix a1 = *spec.a, a2 = *spec.a2;
  const CMatrix v = *spec.v;
  const CMatrix sv = sigma_map(sys, v, tol);
  const Eigen::Index n = sys.dim();
  const auto qf = hs_projection(f_space(sys).basis, tol);
  const PIndex p = spec.p;
  // Transport both slots to coefficient space, project onto the word span
  // slotwise (the second slot through sigma), and rebuild.
  auto action = [=](const std::vector<CMatrix>& parts) {
    const CMatrix z1 = factor_slice(parts[0], n, n, a1, p, tol);
    const CMatrix z2 = factor_slice(parts[1], n, n, a2, p, tol);
    const CMatrix m = qf(CMatrix(v.adjoint() * z1)) +
                      sigma_map(sys, qf(CMatrix(sv.adjoint() * z2)), tol);
    return std::vector<CMatrix>{kron(CMatrix(v * m), a1),
                                kron(CMatrix(sv * sigma_map(sys, m, tol)), a2)};
  };
  return make_map(space.shape, space.shape, std::move(action));
}

MatrixMap spin_odd_projection(const Subspace& space, const Tolerances& tol) {
  const TypeSpec& spec = space.spec;
  const SpinSystem sys = spin_system(spec.N);
  const CMatrix a = *spec.a;
  const CMatrix v = *spec.v;
  const Eigen::Index n = sys.dim();
  const auto qe = hs_projection(e_space(sys).basis, tol);
  const PIndex p = spec.p;
  auto action = [=](const std::vector<CMatrix>& parts) {
    const CMatrix z = factor_slice(parts[0], n, n, a, p, tol);
    const CMatrix m = qe(CMatrix(v.adjoint() * z));
    return std::vector<CMatrix>{kron(CMatrix(v * m), a)};
  };
  return make_map(space.shape, space.shape, std::move(action));
}

}  // namespace

MatrixMap projection_for(const Subspace& space, const Tolerances& tol) {
  if (space.spec.p.is_inf())
    throw DomainError("projection_for: requires a finite exponent");
  switch (space.spec.kind) {
    case TypeKind::Sym:
    case TypeKind::Antisym:
      return twisted_tensor_projection(space, tol);
    case TypeKind::Rect:
      return rect_projection(space, tol);
    case TypeKind::AFHilbert:
      throw DomainError(
          "projection_for: the graded Fock family admits no positive "
          "contractive projection");
    case TypeKind::SpinEven:
      return spin_even_projection(space, tol);
    case TypeKind::SpinOdd:
      return spin_odd_projection(space, tol);
  }
  throw DomainError("projection_for: unknown kind");
}

MatrixMap transport(const MatrixMap& projection, const EquivWitness& witness) {
  const std::size_t nblocks = witness.u.size();
  if (witness.v.size() != nblocks ||
      projection.shape_in.count() != nblocks)
    throw DomainError("transport: witness block count mismatch");
  BlockShape shape;
  for (std::size_t i = 0; i < nblocks; ++i)
    shape.blocks.emplace_back(witness.u[i].rows(), witness.v[i].cols());
  auto action = [u = witness.u, v = witness.v,
                 inner = projection.apply_parts](
                    const std::vector<CMatrix>& parts) {
    std::vector<CMatrix> pulled(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      pulled[i] = u[i].adjoint() * parts[i] * v[i].adjoint();
    std::vector<CMatrix> mapped = inner(pulled);
    for (std::size_t i = 0; i < mapped.size(); ++i)
      mapped[i] = CMatrix(u[i] * mapped[i] * v[i]);
    return mapped;
  };
  return make_map(shape, shape, std::move(action));
}

MatrixMap v_p_bridge(const MatrixMap& p2, const CMatrix& h, const PIndex& p,
                     const Tolerances& tol) {
  if (p.is_inf()) throw DomainError("v_p_bridge: requires a finite exponent");
  if (!(p2.shape_in == p2.shape_out) || p2.shape_in.count() != 1 ||
      !p2.shape_in.square())
    throw DomainError("v_p_bridge: needs a square single-block projection");
  const double beta = 1.0 / p.value() - 0.5;
  const CMatrix hb = frac_power(h, beta, tol);
  const CMatrix hmb = frac_power(h, -beta, tol);
  return make_map(p2.shape_in, p2.shape_out,
                  [hb, hmb, inner = p2.apply_parts](
                      const std::vector<CMatrix>& parts) {
                    const CMatrix pulled = hmb * parts[0] * hmb;
                    const CMatrix mid = inner({pulled})[0];
                    return std::vector<CMatrix>{CMatrix(hb * mid * hb)};
                  });
}

namespace {

BlockOperator random_element(const BlockShape& shape, Rng& rng, PIndex p) {
  std::vector<CMatrix> parts;
  for (auto [r, c] : shape.blocks) parts.push_back(rng.ginibre(r, c));
  return make_block_operator(shape, std::move(parts), p);
}

BlockOperator random_psd(const BlockShape& shape, Rng& rng, PIndex p) {
  std::vector<CMatrix> parts;
  for (auto [r, c] : shape.blocks) parts.push_back(rng.psd(r));
  return make_block_operator(shape, std::move(parts), p);
}

double psd_defect(const BlockOperator& y, const Tolerances& tol) {
  double defect = 0.0;
  for (const CMatrix& part : y.parts) {
    const CMatrix herm = 0.5 * (part + part.adjoint());
    defect = std::max(defect, (part - CMatrix(part.adjoint())).norm());
    defect = std::max(defect, std::max(0.0, -min_eigenvalue(herm, tol)));
  }
  return defect;
}

}  // namespace

ProjectionReport verify_projection(const MatrixMap& projection,
                                   const std::vector<BlockOperator>& range,
                                   const PIndex& p, Rng& rng, int samples,
                                   const Tolerances& tol) {
  if (!(projection.shape_in == projection.shape_out))
    throw DomainError("verify_projection: shapes differ, not a projection");
  const BlockShape& shape = projection.shape_in;
  ProjectionReport report;
  report.samples = samples;

  Eigen::MatrixXcd range_onb;
  {
    Eigen::MatrixXcd cols(shape.vec_dim(),
                          static_cast<Eigen::Index>(range.size()));
    for (std::size_t j = 0; j < range.size(); ++j)
      cols.col(static_cast<Eigen::Index>(j)) = vec(range[j]);
    range_onb = orthonormal_columns(cols, tol.rank_cut);
  }

  if (projection.materialized) {
    const Eigen::MatrixXcd& m = *projection.materialized;
    report.idempotency = (m * m - m).norm();
  }

  // Range elements are fixed points.
  for (const BlockOperator& b : range) {
    const double scale = std::sqrt(vec(b).squaredNorm());
    const CVector diff = vec(projection.apply(b)) - vec(b);
    report.range_distance =
        std::max(report.range_distance, diff.norm() / scale);
  }

  const bool square = shape.square();
  for (int t = 0; t < samples; ++t) {
    BlockOperator x = random_element(shape, rng, p);
    const double nx = schatten_norm(x, p);
    x = Complex(1.0 / nx) * x;
    const BlockOperator y = projection.apply(x);
    report.contractivity_excess = std::max(
        report.contractivity_excess, schatten_norm(y, p) - 1.0);
    if (!projection.materialized) {
      const CVector diff = vec(projection.apply(y)) - vec(y);
      report.idempotency = std::max(report.idempotency, diff.norm());
    }
    const CVector vy = vec(y);
    const CVector res = vy - range_onb * (range_onb.adjoint() * vy);
    report.range_distance = std::max(report.range_distance, res.norm());

    if (square) {
      BlockOperator xp = random_psd(shape, rng, p);
      xp = Complex(1.0 / schatten_norm(xp, p)) * xp;
      const double defect = psd_defect(projection.apply(xp), tol);
      report.positivity =
          std::max(report.positivity.value_or(0.0), defect);
    }
  }
  report.contractivity_excess = std::max(report.contractivity_excess, 0.0);

  // The adjoint of a positive trace-norm contraction is an operator-norm
  // contraction, so its value at the identity has operator norm at most one.
  // For other exponents the adjoint is only contractive in the conjugate
  // norm and this bound does not apply.
  if (square && projection.materialized && p == PIndex(1.0)) {
    const MatrixMap adj = adjoint_map(projection);
    std::vector<CMatrix> id_parts;
    for (auto [r, c] : adj.shape_in.blocks)
      id_parts.push_back(CMatrix::Identity(r, c));
    const BlockOperator one =
        make_block_operator(adj.shape_in, std::move(id_parts),
                            PIndex::infinity());
    report.unital_dual_norm =
        schatten_norm(adj.apply(one), PIndex::infinity());
  }
  return report;
}

}  // namespace schatlab
