#pragma once

#include <vector>

#include "schatlab/block.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

// l^p norm of the singular-value sequence; p = inf gives the operator norm.
double schatten_norm(const CMatrix& x, const PIndex& p);

// Block case aggregates per the p-sum formula (sup over blocks at p = inf).
double schatten_norm(const BlockOperator& x, const PIndex& p);
inline double schatten_norm(const BlockOperator& x) {
  return schatten_norm(x, x.p);
}

// Trace duality pairing <x, y> = tr(x y); blockwise sum for block operators.
Complex pairing(const CMatrix& x, const CMatrix& y);
Complex pairing(const BlockOperator& x, const BlockOperator& y);

// Duality map N_p(x) = |x|^{p-1} u^* / ||x||_p^{p-2} for x = u|x|, N_p(0)=0.
// Requires 1 < p < inf. Satisfies ||N_p(x)||_q = ||x||_p and
// <x, N_p(x)> = ||x||_p^2, with N_q as inverse.
CMatrix n_map(const CMatrix& x, const PIndex& p, const Tolerances& tol = {});
BlockOperator n_map(const BlockOperator& x, const PIndex& p,
                    const Tolerances& tol = {});

// x^* y = 0 and x y^* = 0 within tolerance.
bool are_disjoint(const CMatrix& x, const CMatrix& y,
                  const Tolerances& tol = {});
bool are_disjoint(const BlockOperator& x, const BlockOperator& y,
                  const Tolerances& tol = {});

// Orthogonal projection onto the span of row-support spaces (ranges of x^*).
CMatrix support_right(const std::vector<CMatrix>& xs,
                      const Tolerances& tol = {});
// Orthogonal projection onto the span of the ranges.
CMatrix support_left(const std::vector<CMatrix>& xs,
                     const Tolerances& tol = {});

inline CMatrix support_right(const CMatrix& x, const Tolerances& tol = {}) {
  return support_right(std::vector<CMatrix>{x}, tol);
}
inline CMatrix support_left(const CMatrix& x, const Tolerances& tol = {}) {
  return support_left(std::vector<CMatrix>{x}, tol);
}

}  // namespace schatlab
