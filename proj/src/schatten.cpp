#include "schatlab/schatten.hpp"

#include <cmath>

#include "schatlab/errors.hpp"

namespace schatlab {

CVector vec(const BlockOperator& x) {
  CVector v(x.shape.vec_dim());
  Eigen::Index off = 0;
  for (const auto& part : x.parts) {
    for (Eigen::Index i = 0; i < part.rows(); ++i)
      for (Eigen::Index j = 0; j < part.cols(); ++j)
        v(off++) = part(i, j);
  }
  return v;
}

BlockOperator unvec(const BlockShape& shape, const CVector& v, PIndex p) {
  if (v.size() != shape.vec_dim()) {
    throw DomainError("unvec: vector length does not match shape");
  }
  std::vector<CMatrix> parts;
  Eigen::Index off = 0;
  for (auto [r, c] : shape.blocks) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = v(off++);
    parts.push_back(std::move(m));
  }
  return BlockOperator{shape, std::move(parts), p};
}

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  if (!(a.shape == b.shape)) throw DomainError("block add: shape mismatch");
  BlockOperator out = a;
  for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] += b.parts[i];
  return out;
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  if (!(a.shape == b.shape)) throw DomainError("block sub: shape mismatch");
  BlockOperator out = a;
  for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] -= b.parts[i];
  return out;
}

BlockOperator operator*(Complex s, const BlockOperator& a) {
  BlockOperator out = a;
  for (auto& part : out.parts) part *= s;
  return out;
}

BlockOperator block_adjoint(const BlockOperator& x) {
  BlockOperator out{x.shape.transposed(), {}, x.p};
  for (const auto& part : x.parts) out.parts.emplace_back(part.adjoint());
  return out;
}

BlockOperator zero_block_operator(const BlockShape& shape, PIndex p) {
  std::vector<CMatrix> parts;
  for (auto [r, c] : shape.blocks) parts.push_back(CMatrix::Zero(r, c));
  return BlockOperator{shape, std::move(parts), p};
}

namespace {

double lp_aggregate(const std::vector<double>& norms, const PIndex& p) {
  if (p.is_inf()) {
    double m = 0.0;
    for (double n : norms) m = std::max(m, n);
    return m;
  }
  double acc = 0.0;
  for (double n : norms) acc += std::pow(n, p.value());
  return std::pow(acc, 1.0 / p.value());
}

}  // namespace

double schatten_norm(const CMatrix& x, const PIndex& p) {
  const RVector s = svd(x).s;
  if (p.is_inf()) return s.size() ? s.maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p.value());
  return std::pow(acc, 1.0 / p.value());
}

double schatten_norm(const BlockOperator& x, const PIndex& p) {
  std::vector<double> norms;
  for (const auto& part : x.parts) norms.push_back(schatten_norm(part, p));
  return lp_aggregate(norms, p);
}

Complex pairing(const CMatrix& x, const CMatrix& y) {
  if (x.cols() != y.rows() || x.rows() != y.cols()) {
    throw DomainError("pairing: shape mismatch");
  }
  return (x * y).trace();
}

Complex pairing(const BlockOperator& x, const BlockOperator& y) {
  if (!(x.shape == y.shape.transposed())) {
    throw DomainError("pairing: block shapes are not dual");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    acc += (x.parts[i] * y.parts[i]).trace();
  }
  return acc;
}

CMatrix n_map(const CMatrix& x, const PIndex& p, const Tolerances& tol) {
  if (p.is_inf() || !(p.value() > 1.0)) {
    throw DomainError("n_map: exponent must lie in (1, inf)");
  }
  const double pv = p.value();
  SvdResult f = svd(x);
  const double norm = schatten_norm(x, p);
  if (norm < tol.eq_abs) return CMatrix::Zero(x.cols(), x.rows());
  const Eigen::Index r = rank_from_singular_values(f.s, tol.rank_cut);
  RVector powed = RVector::Zero(f.s.size());
  for (Eigen::Index i = 0; i < r; ++i) powed(i) = std::pow(f.s(i), pv - 1.0);
  // |x|^{p-1} u^* collapses to V S^{p-1} U^* on the support.
  CMatrix out = f.v * powed.asDiagonal() * f.u.adjoint();
  return out / std::pow(norm, pv - 2.0);
}

BlockOperator n_map(const BlockOperator& x, const PIndex& p,
                    const Tolerances& tol) {
  if (p.is_inf() || !(p.value() > 1.0)) {
    throw DomainError("n_map: exponent must lie in (1, inf)");
  }
  const double pv = p.value();
  const double norm = schatten_norm(x, p);
  BlockOperator out{x.shape.transposed(), {}, p.conjugate()};
  if (norm < tol.eq_abs) {
    for (auto [r, c] : out.shape.blocks) out.parts.push_back(CMatrix::Zero(r, c));
    return out;
  }
  for (const auto& part : x.parts) {
    SvdResult f = svd(part);
    const Eigen::Index r = rank_from_singular_values(f.s, tol.rank_cut);
    RVector powed = RVector::Zero(f.s.size());
    for (Eigen::Index i = 0; i < r; ++i) powed(i) = std::pow(f.s(i), pv - 1.0);
    out.parts.emplace_back(
        CMatrix(f.v * powed.asDiagonal() * f.u.adjoint()) /
        std::pow(norm, pv - 2.0));
  }
  return out;
}

bool are_disjoint(const CMatrix& x, const CMatrix& y, const Tolerances& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DomainError("are_disjoint: shape mismatch");
  }
  const double bound = tol.eq_abs + tol.eq_rel * x.norm() * y.norm();
  return (x.adjoint() * y).norm() <= bound && (x * y.adjoint()).norm() <= bound;
}

bool are_disjoint(const BlockOperator& x, const BlockOperator& y,
                  const Tolerances& tol) {
  if (!(x.shape == y.shape)) throw DomainError("are_disjoint: shape mismatch");
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    if (!are_disjoint(x.parts[i], y.parts[i], tol)) return false;
  }
  return true;
}

namespace {

CMatrix projection_from_span(const Eigen::MatrixXcd& cols,
                             const Tolerances& tol) {
  Eigen::MatrixXcd basis = orthonormal_columns(cols, tol.rank_cut);
  return CMatrix(basis * basis.adjoint());
}

}  // namespace

CMatrix support_right(const std::vector<CMatrix>& xs, const Tolerances& tol) {
  if (xs.empty()) throw DomainError("support_right: empty set");
  const Eigen::Index n = xs.front().cols();
  Eigen::MatrixXcd stacked(n, 0);
  for (const auto& x : xs) {
    if (x.cols() != n) throw DomainError("support_right: shape mismatch");
    Eigen::MatrixXcd grown(n, stacked.cols() + x.rows());
    grown << stacked, Eigen::MatrixXcd(x.adjoint());
    stacked = std::move(grown);
  }
  return projection_from_span(stacked, tol);
}

CMatrix support_left(const std::vector<CMatrix>& xs, const Tolerances& tol) {
  if (xs.empty()) throw DomainError("support_left: empty set");
  const Eigen::Index n = xs.front().rows();
  Eigen::MatrixXcd stacked(n, 0);
  for (const auto& x : xs) {
    if (x.rows() != n) throw DomainError("support_left: shape mismatch");
    Eigen::MatrixXcd grown(n, stacked.cols() + x.cols());
    grown << stacked, Eigen::MatrixXcd(x);
    stacked = std::move(grown);
  }
  return projection_from_span(stacked, tol);
}

}  // namespace schatlab
