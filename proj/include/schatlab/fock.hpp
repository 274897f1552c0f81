#pragma once

#include <cstdint>
#include <vector>

#include "schatlab/block.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

// Antisymmetric Fock space over l^2_N. Basis subsets of {1..N} are ordered by
// (cardinality ascending, then lexicographic on sorted elements); the sign
// convention for e_k ^ (sorted word) is (-1)^{|{i in S : i < k}|}.
struct FockSpace {
  int N = 0;
  std::vector<std::uint32_t> basis;        // bitmask per basis position
  std::vector<int> index_of;               // mask -> basis position
  std::vector<Eigen::Index> level_offset;  // offset of each cardinality slice
  std::vector<int> even_basis;             // even-cardinality positions
  std::vector<int> odd_basis;              // odd-cardinality positions

  // N is capped at 6: full-space superoperators beyond that exceed desk scale.
  explicit FockSpace(int n);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
  Eigen::Index slice_dim(int m) const;
};

Eigen::Index binom(int n, int k);

// Creation operator c_k : x -> e_k ^ x as a 2^N x 2^N matrix.
CMatrix creation(const FockSpace& fock, int k);

// Restriction x_{k,m} of c_k between graded slices m-1 and m.
struct GradedMap {
  int m;
  CMatrix matrix;  // binom(N,m) x binom(N,m-1)
};
GradedMap restricted_creation(const FockSpace& fock, int k, int m);

// phi_m(t) = binom(N-1,m-1)^{-1/p} * sum_k t_k x_{k,m}; an isometry from
// (l^2_N, ||.||_2) into the graded Schatten block for every finite p.
CMatrix phi_m(const FockSpace& fock, int m, const CVector& t, const PIndex& p);

// Rank of phi_m(t) against the dimension of the domain slice; the witness of
// the type-4 obstruction when the slices have equal dimension.
struct RankCheck {
  Eigen::Index observed_rank;
  Eigen::Index slice_dim;
};
RankCheck type4_rank_check(const FockSpace& fock, int m, const CVector& t,
                           const Tolerances& tol = {});

// Restrictions x_k, x~_k of c_k and c_k^* to the even half, and the spaces
// AH(N), BH(N), DAH(N) they span. All matrices are 2^{N-1} x 2^{N-1}, mapping
// the even half to the odd half (AH, DAH) or back (BH).
struct AppendixSpaces {
  std::vector<CMatrix> ah;   // {x_1..x_N, x~_1..x~_N}
  std::vector<CMatrix> bh;   // adjoints of the AH basis
  std::vector<CMatrix> dah;  // {x_j, x~_j (j >= 2), x_1 + x~_1}
};
AppendixSpaces ah_spaces(const FockSpace& fock);

// Basis-coefficient transport T(x_k) = x~_k^*, T(x~_k) = x_k^*; a surjective
// isometry AH(N) -> BH(N) in every Schatten norm. Throws if x is outside the
// AH span.
CMatrix t_map(const FockSpace& fock, const CMatrix& x,
              const Tolerances& tol = {});

}  // namespace schatlab
