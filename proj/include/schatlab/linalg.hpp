#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace schatlab {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. The universal carrier for operators,
// partial isometries and projections throughout the library.
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Comparison and cutoff thresholds shared by every module.
struct Tolerances {
  double eq_abs = 1e-10;    // absolute comparison floor
  double eq_rel = 1e-9;     // relative comparison factor
  double rank_cut = 1e-10;  // singular-value cutoff for rank/support
  double psd_slack = 1e-10; // allowed negative-eigenvalue magnitude

  // Throws std::invalid_argument unless all fields lie in (0, 1e-3).
  void validate() const;
};

bool all_finite(const CMatrix& x);

// ||lhs - rhs||_F <= eq_abs + eq_rel * ||rhs||_F
bool approx_equal(const CMatrix& lhs, const CMatrix& rhs,
                  const Tolerances& tol = {});

struct SvdResult {
  CMatrix u;  // orthonormal columns
  RVector s;  // descending, nonnegative
  CMatrix v;  // orthonormal columns; x = u * diag(s) * v^*
};

// Thin SVD. Throws NumericalFailure if the factorization does not converge.
SvdResult svd(const CMatrix& x);

// Number of singular values above rank_cut * s_max (scale-invariant cutoff).
Eigen::Index rank_from_singular_values(const RVector& s, double rank_cut);

struct PolarResult {
  CMatrix u;     // partial isometry, u^* u = support of absx
  CMatrix absx;  // PSD, x = u * absx
};

PolarResult polar(const CMatrix& x, const Tolerances& tol = {});

// Eigenvalues of a Hermitian x are clipped at zero (values in
// [-psd_slack, 0] only; anything more negative is a domain error) and raised
// to the power r in the eigenbasis. r = 0 yields the support projection;
// r < 0 requires a spectrum bounded away from zero.
CMatrix frac_power(const CMatrix& x, double r, const Tolerances& tol = {});

// Kronecker product, (i,j)-block = a_ij * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Block-diagonal direct sum.
CMatrix direct_sum(const std::vector<CMatrix>& blocks);

// u * u^* * u == u within tolerance.
bool is_partial_isometry(const CMatrix& u, const Tolerances& tol = {});

// Hermitian eigendecomposition helper; throws on non-Hermitian input.
struct HermEig {
  RVector values;  // ascending
  CMatrix vectors; // columns
};
HermEig herm_eig(const CMatrix& x, const Tolerances& tol = {});

// Smallest eigenvalue of the Hermitian part; used by positivity checks.
double min_eigenvalue(const CMatrix& x, const Tolerances& tol = {});

// Orthonormal basis (as columns) for the span of the given columns,
// determined by SVD with the rank_cut cutoff.
Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& cols,
                                     double rank_cut);

}  // namespace schatlab
