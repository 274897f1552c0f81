#pragma once

#include <cstdint>
#include <random>

#include "schatlab/linalg.hpp"

namespace schatlab {

// Seeded random source. Streams are split from a master seed by a counter:
// Rng(master, stream) draws from an engine seeded with {master, stream}, so
// adding a test case never perturbs the samples of another.
class Rng {
 public:
  Rng(std::uint64_t master, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master),
                      static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  Complex cnormal() { return {normal(), normal()}; }

  CMatrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    CMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = cnormal();
    return g / std::sqrt(2.0);
  }

  CVector cvector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }

  RVector rvector(Eigen::Index n) {
    RVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  // Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
  CMatrix haar_unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(ginibre(n, n)));
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex d = r(i, i);
      q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0);
    }
    return CMatrix(q);
  }

  CMatrix psd(Eigen::Index n) {
    CMatrix g = ginibre(n, n);
    return CMatrix(g * g.adjoint());
  }

  // PSD with trivial kernel: G G^* + eps * 1.
  CMatrix psd_injective(Eigen::Index n, double eps = 1e-3) {
    return CMatrix(psd(n) + eps * CMatrix::Identity(n, n));
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace schatlab
