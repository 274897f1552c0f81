#include "schatlab/spin.hpp"

#include <algorithm>
#include <set>

#include "schatlab/errors.hpp"

namespace schatlab {

const CMatrix& SpinSystem::s(int j) const {
  if (j >= 1 && j <= N) return plus[j - 1];
  if (j <= -1 && j >= -N) return minus[-j - 1];
  throw DomainError("SpinSystem: label out of range");
}

SpinSystem spin_system(int N) {
  const FockSpace fock(N);
  SpinSystem sys;
  sys.N = N;
  const Complex inv_i(0.0, -1.0);
  for (int k = 1; k <= N; ++k) {
    const CMatrix c = creation(fock, k);
    sys.plus.emplace_back(c + c.adjoint());
    sys.minus.emplace_back(inv_i * (c - CMatrix(c.adjoint())));
  }
  return sys;
}

CMatrix spin_word(const SpinSystem& sys, std::vector<int> labels) {
  std::set<int> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw DomainError("spin_word: repeated label");
  std::sort(labels.begin(), labels.end());
  CMatrix w = CMatrix::Identity(sys.dim(), sys.dim());
  for (int j : labels) w = w * sys.s(j);
  return w;
}

namespace {

std::vector<int> top_word_labels(int N) {
  std::vector<int> w;
  for (int k = N; k >= 1; --k) {
    w.push_back(-k);
    w.push_back(k);
  }
  return w;
}

SpinSubspace words_space(const SpinSystem& sys, bool with_top) {
  SpinSubspace sub;
  sub.labels.push_back({});
  for (int k = 1; k <= sys.N; ++k) sub.labels.push_back({k});
  for (int k = 1; k <= sys.N; ++k) sub.labels.push_back({-k});
  if (with_top) sub.labels.push_back(top_word_labels(sys.N));
  for (const auto& w : sub.labels) sub.basis.push_back(spin_word(sys, w));
  return sub;
}

// Coefficients of x over the trace-orthogonal word basis; the words are
// unitary, so coeff_j = tr(b_j^* x) / 2^N.
CVector word_coefficients(const SpinSubspace& sub, const CMatrix& x,
                          const Tolerances& tol) {
  const double dim = static_cast<double>(sub.basis[0].rows());
  const Eigen::Index n = static_cast<Eigen::Index>(sub.basis.size());
  CVector coeff(n);
  CMatrix rebuilt = CMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    coeff(j) = (sub.basis[j].adjoint() * x).trace() / dim;
    rebuilt += coeff(j) * sub.basis[j];
  }
  if (!approx_equal(rebuilt, x, tol))
    throw DomainError("word_coefficients: input outside the word span");
  return coeff;
}

CMatrix transport(const SpinSubspace& sub, const CMatrix& x,
                  const std::function<Complex(std::size_t, Complex)>& act,
                  const Tolerances& tol) {
  const CVector coeff = word_coefficients(sub, x, tol);
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < coeff.size(); ++j)
    out += act(static_cast<std::size_t>(j), coeff(j)) * sub.basis[j];
  return out;
}

}  // namespace

SpinSubspace f_space(const SpinSystem& sys) { return words_space(sys, true); }

SpinSubspace e_space(const SpinSystem& sys) { return words_space(sys, false); }

CMatrix sigma_map(const SpinSystem& sys, const CMatrix& x,
                  const Tolerances& tol) {
  const SpinSubspace sub = f_space(sys);
  const std::size_t top = sub.basis.size() - 1;
  return transport(
      sub, x, [top](std::size_t j, Complex c) { return j == top ? -c : c; },
      tol);
}

CMatrix tau_prime(const SpinSystem& sys, const CMatrix& x,
                  const Tolerances& tol) {
  const SpinSubspace sub = f_space(sys);
  return transport(
      sub, x, [](std::size_t j, Complex c) { return j == 0 ? c : -c; }, tol);
}

CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z) {
  return 0.5 * (x * y.adjoint() * z + z * y.adjoint() * x);
}

bool is_jc_triple(const std::vector<CMatrix>& basis,
                  const std::function<CVector()>& coeff_sampler,
                  int random_triples, const Tolerances& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index vdim = basis[0].size();
  Eigen::MatrixXcd cols(vdim, n);
  for (Eigen::Index j = 0; j < n; ++j)
    cols.col(j) = Eigen::Map<const CVector>(basis[j].data(), vdim);
  const Eigen::MatrixXcd onb = orthonormal_columns(cols, tol.rank_cut);
  const auto in_span = [&](const CMatrix& m) {
    const CVector v = Eigen::Map<const CVector>(m.data(), vdim);
    return (v - onb * (onb.adjoint() * v)).norm() <=
           tol.eq_abs + tol.eq_rel * v.norm();
  };
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        if (!in_span(triple_product(basis[a], basis[b], basis[c])))
          return false;
  const auto sample = [&] {
    const CVector co = coeff_sampler();
    CMatrix m = CMatrix::Zero(basis[0].rows(), basis[0].cols());
    for (Eigen::Index j = 0; j < n; ++j) m += co(j) * basis[j];
    return m;
  };
  for (int t = 0; t < random_triples; ++t)
    if (!in_span(triple_product(sample(), sample(), sample()))) return false;
  return true;
}

CMatrix odd_calculus(const CMatrix& x, const std::function<double(double)>& f,
                     const Tolerances& tol) {
  const SvdResult fac = svd(x);
  const double top = fac.s.size() > 0 ? fac.s(0) : 0.0;
  RVector fs(fac.s.size());
  for (Eigen::Index i = 0; i < fac.s.size(); ++i)
    fs(i) = fac.s(i) > tol.rank_cut * top ? f(fac.s(i)) : 0.0;
  return fac.u * fs.asDiagonal() * fac.v.adjoint();
}

}  // namespace schatlab
