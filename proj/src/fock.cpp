#include "schatlab/fock.hpp"

#include <algorithm>
#include <bit>

#include "schatlab/errors.hpp"

namespace schatlab {

Eigen::Index binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Eigen::Index r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

FockSpace::FockSpace(int n) : N(n) {
  if (n < 1 || n > 6) throw DomainError("FockSpace: N must lie in 1..6");
  const std::uint32_t full = 1u << n;
  basis.reserve(full);
  for (int m = 0; m <= n; ++m) {
    level_offset.push_back(static_cast<Eigen::Index>(basis.size()));
    for (std::uint32_t mask = 0; mask < full; ++mask)
      if (std::popcount(mask) == m) basis.push_back(mask);
  }
  level_offset.push_back(static_cast<Eigen::Index>(basis.size()));
  index_of.assign(full, -1);
  for (std::size_t i = 0; i < basis.size(); ++i)
    index_of[basis[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < basis.size(); ++i)
    (std::popcount(basis[i]) % 2 == 0 ? even_basis : odd_basis)
        .push_back(static_cast<int>(i));
}

Eigen::Index FockSpace::slice_dim(int m) const {
  if (m < 0 || m > N) return 0;
  return level_offset[m + 1] - level_offset[m];
}

namespace {

// Sign of inserting e_k in front of the ascending word for mask:
// (-1)^{number of occupied modes below k}.
int insertion_sign(std::uint32_t mask, int k) {
  const std::uint32_t below = mask & ((1u << (k - 1)) - 1u);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

}  // namespace

CMatrix creation(const FockSpace& fock, int k) {
  if (k < 1 || k > fock.N) throw DomainError("creation: mode out of range");
  CMatrix c = CMatrix::Zero(fock.dim(), fock.dim());
  const std::uint32_t bit = 1u << (k - 1);
  for (Eigen::Index j = 0; j < fock.dim(); ++j) {
    const std::uint32_t mask = fock.basis[j];
    if (mask & bit) continue;
    const int i = fock.index_of[mask | bit];
    c(i, j) = static_cast<double>(insertion_sign(mask, k));
  }
  return c;
}

GradedMap restricted_creation(const FockSpace& fock, int k, int m) {
  if (m < 1 || m > fock.N)
    throw DomainError("restricted_creation: level out of range");
  if (k < 1 || k > fock.N)
    throw DomainError("restricted_creation: mode out of range");
  const Eigen::Index rows = fock.slice_dim(m);
  const Eigen::Index cols = fock.slice_dim(m - 1);
  CMatrix x = CMatrix::Zero(rows, cols);
  const std::uint32_t bit = 1u << (k - 1);
  const Eigen::Index src = fock.level_offset[m - 1];
  const Eigen::Index dst = fock.level_offset[m];
  for (Eigen::Index j = 0; j < cols; ++j) {
    const std::uint32_t mask = fock.basis[src + j];
    if (mask & bit) continue;
    x(fock.index_of[mask | bit] - dst, j) =
        static_cast<double>(insertion_sign(mask, k));
  }
  return {m, x};
}

CMatrix phi_m(const FockSpace& fock, int m, const CVector& t, const PIndex& p) {
  if (t.size() != fock.N) throw DomainError("phi_m: coefficient length != N");
  if (p.is_inf()) throw DomainError("phi_m: requires a finite exponent");
  const double scale =
      std::pow(static_cast<double>(binom(fock.N - 1, m - 1)), -1.0 / p.value());
  CMatrix out = CMatrix::Zero(fock.slice_dim(m), fock.slice_dim(m - 1));
  for (int k = 1; k <= fock.N; ++k)
    out += t(k - 1) * restricted_creation(fock, k, m).matrix;
  return scale * out;
}

RankCheck type4_rank_check(const FockSpace& fock, int m, const CVector& t,
                           const Tolerances& tol) {
  const CMatrix x = phi_m(fock, m, t, PIndex(2.0));
  const SvdResult f = svd(x);
  return {rank_from_singular_values(f.s, tol.rank_cut), fock.slice_dim(m - 1)};
}

namespace {

// Compress a full Fock operator mapping even -> odd (or odd -> even) to a
// half-dimension matrix in the listed half bases.
CMatrix compress(const FockSpace& fock, const CMatrix& full,
                 const std::vector<int>& to, const std::vector<int>& from) {
  CMatrix out(static_cast<Eigen::Index>(to.size()),
              static_cast<Eigen::Index>(from.size()));
  for (std::size_t i = 0; i < to.size(); ++i)
    for (std::size_t j = 0; j < from.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          full(to[i], from[j]);
  return out;
}

}  // namespace

AppendixSpaces ah_spaces(const FockSpace& fock) {
  AppendixSpaces out;
  std::vector<CMatrix> xk, xtk;
  for (int k = 1; k <= fock.N; ++k) {
    const CMatrix c = creation(fock, k);
    xk.push_back(compress(fock, c, fock.odd_basis, fock.even_basis));
    xtk.push_back(
        compress(fock, CMatrix(c.adjoint()), fock.odd_basis, fock.even_basis));
  }
  for (const CMatrix& x : xk) out.ah.push_back(x);
  for (const CMatrix& x : xtk) out.ah.push_back(x);
  for (const CMatrix& x : out.ah) out.bh.push_back(x.adjoint());
  for (int k = 2; k <= fock.N; ++k) out.dah.push_back(xk[k - 1]);
  for (int k = 2; k <= fock.N; ++k) out.dah.push_back(xtk[k - 1]);
  out.dah.push_back(xk[0] + xtk[0]);
  return out;
}

CMatrix t_map(const FockSpace& fock, const CMatrix& x, const Tolerances& tol) {
  const AppendixSpaces sp = ah_spaces(fock);
  const Eigen::Index n = static_cast<Eigen::Index>(sp.ah.size());
  const Eigen::Index vdim = sp.ah[0].size();
  Eigen::MatrixXcd basis(vdim, n);
  for (Eigen::Index j = 0; j < n; ++j)
    basis.col(j) = Eigen::Map<const CVector>(sp.ah[j].data(), vdim);
  const CVector target = Eigen::Map<const CVector>(x.data(), vdim);
  // The AH basis is not trace-orthogonal, so solve the Gram system.
  const Eigen::MatrixXcd gram = basis.adjoint() * basis;
  const CVector coeff = gram.ldlt().solve(basis.adjoint() * target);
  const double residual = (basis * coeff - target).norm();
  if (residual > tol.eq_abs + tol.eq_rel * target.norm())
    throw DomainError("t_map: input lies outside the x_k / x~_k span");
  // T swaps the two halves of the basis and takes adjoints.
  CMatrix out = CMatrix::Zero(sp.bh[0].rows(), sp.bh[0].cols());
  const int N = fock.N;
  for (int k = 0; k < N; ++k) {
    out += coeff(k) * sp.bh[N + k];  // T(x_k) = x~_k^*
    out += coeff(N + k) * sp.bh[k];  // T(x~_k) = x_k^*
  }
  return out;
}

}  // namespace schatlab
