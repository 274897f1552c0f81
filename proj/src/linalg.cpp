#include "schatlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

#include "schatlab/errors.hpp"

namespace schatlab {

void Tolerances::validate() const {
  for (double t : {eq_abs, eq_rel, rank_cut, psd_slack}) {
    if (!(t > 0.0 && t < 1e-3)) {
      throw DomainError("Tolerances: fields must lie in (0, 1e-3)");
    }
  }
}

bool all_finite(const CMatrix& x) { return x.allFinite(); }

bool approx_equal(const CMatrix& lhs, const CMatrix& rhs,
                  const Tolerances& tol) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
  return (lhs - rhs).norm() <= tol.eq_abs + tol.eq_rel * rhs.norm();
}

SvdResult svd(const CMatrix& x) {
  if (!all_finite(x)) throw DomainError("svd: input has NaN/Inf entries");
  // Jacobi is slower but keeps degenerate singular values accurate, which the
  // trace-norm checks rely on; every matrix here is small.
  using Solver = Eigen::JacobiSVD<Eigen::MatrixXcd>;
  Solver solver(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("svd: factorization did not converge");
  }
  return {CMatrix(solver.matrixU()), RVector(solver.singularValues()),
          CMatrix(solver.matrixV())};
}

Eigen::Index rank_from_singular_values(const RVector& s, double rank_cut) {
  if (s.size() == 0) return 0;
  const double cut = rank_cut * s(0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

PolarResult polar(const CMatrix& x, const Tolerances& tol) {
  SvdResult f = svd(x);
  const Eigen::Index r = rank_from_singular_values(f.s, tol.rank_cut);
  CMatrix u = f.u.leftCols(r) * f.v.leftCols(r).adjoint();
  CMatrix absx = f.v * f.s.asDiagonal() * f.v.adjoint();
  return {std::move(u), std::move(absx)};
}

HermEig herm_eig(const CMatrix& x, const Tolerances& tol) {
  if (x.rows() != x.cols()) throw DomainError("herm_eig: matrix not square");
  if (!approx_equal(x, x.adjoint(), tol)) {
    throw DomainError("herm_eig: matrix not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd((x + x.adjoint()) / 2.0));
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("herm_eig: eigendecomposition did not converge");
  }
  return {RVector(solver.eigenvalues()), CMatrix(solver.eigenvectors())};
}

double min_eigenvalue(const CMatrix& x, const Tolerances& tol) {
  return herm_eig(x, tol).values.minCoeff();
}

CMatrix frac_power(const CMatrix& x, double r, const Tolerances& tol) {
  HermEig eig = herm_eig(x, tol);
  const double top = eig.values.size() ? eig.values.maxCoeff() : 0.0;
  const double scale = std::max(1.0, top);
  RVector lam = eig.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol.psd_slack * scale) {
      throw DomainError("frac_power: eigenvalue below -psd_slack");
    }
    if (lam(i) < 0.0) lam(i) = 0.0;
  }
  const double cut = tol.rank_cut * std::max(top, 0.0);
  RVector powed(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (r == 0.0) {
      powed(i) = lam(i) > cut ? 1.0 : 0.0;
    } else if (r < 0.0) {
      if (lam(i) <= cut) {
        throw DomainError("frac_power: negative power of a singular operator");
      }
      powed(i) = std::pow(lam(i), r);
    } else {
      powed(i) = lam(i) > 0.0 ? std::pow(lam(i), r) : 0.0;
    }
  }
  return eig.vectors * powed.asDiagonal() * eig.vectors.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix direct_sum(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

bool is_partial_isometry(const CMatrix& u, const Tolerances& tol) {
  return (u * u.adjoint() * u - u).norm() <= tol.eq_abs + tol.eq_rel * u.norm();
}

Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& cols,
                                     double rank_cut) {
  if (cols.cols() == 0) return Eigen::MatrixXcd(cols.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(cols, Eigen::ComputeThinU);
  const RVector& s = solver.singularValues();
  const Eigen::Index r = rank_from_singular_values(s, rank_cut);
  return solver.matrixU().leftCols(r);
}

}  // namespace schatlab
