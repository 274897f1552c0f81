#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "schatlab/map.hpp"
#include "schatlab/rng.hpp"
#include "schatlab/spaces.hpp"

namespace schatlab {

// x -> (x + O tau(x) O^*) / 2 on n x n matrices, tau the transpose. For a
// symmetric or antisymmetric unitary O this is a positive contractive
// projection onto the fixed space of x -> O tau(x) O^*.
MatrixMap twisted_transpose_projection(const CMatrix& O);

// Blockwise norming contraction against a positive factor: x is read as an
// I x J grid of d x d blocks and z_ij = tr(a^{p-1} x_ij). At p = 1 the
// weight a^{p-1} is the support projection of a. For x = w ox a with
// ||a||_p = 1 this recovers w.
CMatrix factor_slice(const CMatrix& x, Eigen::Index rows, Eigen::Index cols,
                     const CMatrix& a, const PIndex& p,
                     const Tolerances& tol = {});

// Orthogonal projection onto a span in the trace inner product.
std::function<CMatrix(const CMatrix&)> hs_projection(
    const std::vector<CMatrix>& span, const Tolerances& tol = {});

// The explicit positive contractive projection onto a built model space at
// its exponent. Throws for the graded Fock family, which admits none, and
// for p = inf, where the factor-slice weight is undefined.
MatrixMap projection_for(const Subspace& space, const Tolerances& tol = {});

// Conjugation of a projection along an equivalence witness:
// y -> u P(u^* y v^*) v blockwise. Preserves contractivity in every norm;
// positivity survives only for witnesses compatible with the order.
MatrixMap transport(const MatrixMap& projection, const EquivWitness& witness);

// Carries a positive contractive projection at p = 2 to the exponent p by
// twisting with powers of a positive injective h fixed by the projection:
// x -> h^b P(h^-b x h^-b) h^b with b = 1/p - 1/2.
MatrixMap v_p_bridge(const MatrixMap& p2, const CMatrix& h, const PIndex& p,
                     const Tolerances& tol = {});

struct ProjectionReport {
  double idempotency = 0.0;           // ||P^2 - P|| (dense) or sampled defect
  double contractivity_excess = 0.0;  // max(0, ||Px||_p - ||x||_p), unit x
  double range_distance = 0.0;        // distance of images to the range span
  std::optional<double> positivity;   // PSD defect of images of PSD inputs
  // ||P^adj(1)||_inf when dense and square: equals the 1->1 norm whenever
  // the map is positive.
  std::optional<double> unital_dual_norm;
  int samples = 0;
};

ProjectionReport verify_projection(const MatrixMap& projection,
                                   const std::vector<BlockOperator>& range,
                                   const PIndex& p, Rng& rng, int samples,
                                   const Tolerances& tol = {});

}  // namespace schatlab
