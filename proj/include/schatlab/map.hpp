#pragma once

#include <functional>
#include <optional>

#include "schatlab/block.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

// A linear map between block operator spaces. The action is always available
// through apply_parts; a dense matrix on vectorized coordinates is filled in
// on construction whenever both sides stay within kMaterializeLimit.
struct MatrixMap {
  static constexpr Eigen::Index kMaterializeLimit = 1024;

  BlockShape shape_in;
  BlockShape shape_out;
  std::function<std::vector<CMatrix>(const std::vector<CMatrix>&)> apply_parts;
  std::optional<Eigen::MatrixXcd> materialized;

  // Applies the map; the result keeps the exponent of the input.
  BlockOperator apply(const BlockOperator& x) const;
};

// Builds a map and materializes it when the vectorized dimensions allow.
MatrixMap make_map(
    BlockShape shape_in, BlockShape shape_out,
    std::function<std::vector<CMatrix>(const std::vector<CMatrix>&)> action);

MatrixMap identity_map(const BlockShape& shape);

// lhs after rhs.
MatrixMap compose(const MatrixMap& lhs, const MatrixMap& rhs);

// Adjoint with respect to the bilinear trace pairing; requires the dense
// matrix. The adjoint acts between the transposed block shapes.
MatrixMap adjoint_map(const MatrixMap& map);

}  // namespace schatlab
