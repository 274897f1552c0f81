#pragma once

#include <utility>
#include <vector>

#include "schatlab/errors.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

// Schatten exponent p in [1, inf]; infinity is a distinct state, never a
// large float.
class PIndex {
 public:
  explicit PIndex(double value) : value_(value) {
    if (!(value >= 1.0)) throw DomainError("PIndex: p must be >= 1");
  }
  static PIndex infinity() {
    PIndex p;
    p.inf_ = true;
    return p;
  }

  bool is_inf() const { return inf_; }
  double value() const {
    if (inf_) throw DomainError("PIndex: infinite exponent has no value");
    return value_;
  }

  // 1/p + 1/q = 1; conjugate of 1 is inf and vice versa.
  PIndex conjugate() const {
    if (inf_) return PIndex(1.0);
    if (value_ == 1.0) return infinity();
    return PIndex(value_ / (value_ - 1.0));
  }

  bool operator==(const PIndex& o) const {
    return inf_ == o.inf_ && (inf_ || value_ == o.value_);
  }

 private:
  PIndex() = default;
  double value_ = 2.0;
  bool inf_ = false;
};

// Shape of a p-direct sum of rectangular Schatten blocks.
struct BlockShape {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;

  std::size_t count() const { return blocks.size(); }

  Eigen::Index vec_dim() const {
    Eigen::Index d = 0;
    for (auto [r, c] : blocks) d += r * c;
    return d;
  }

  bool square() const {
    for (auto [r, c] : blocks)
      if (r != c) return false;
    return true;
  }

  // Dual shape under the trace pairing <x, y> = sum_i tr(x_i y_i).
  BlockShape transposed() const {
    BlockShape t;
    for (auto [r, c] : blocks) t.blocks.emplace_back(c, r);
    return t;
  }

  bool operator==(const BlockShape& o) const { return blocks == o.blocks; }

  void validate() const {
    if (blocks.empty()) throw DomainError("BlockShape: empty block list");
    for (auto [r, c] : blocks) {
      if (r < 1 || c < 1) throw DomainError("BlockShape: dimensions must be >= 1");
    }
  }
};

inline BlockShape single_block(Eigen::Index rows, Eigen::Index cols) {
  return BlockShape{{{rows, cols}}};
}

// An element (x_i)_i of a p-direct sum of Schatten blocks.
struct BlockOperator {
  BlockShape shape;
  std::vector<CMatrix> parts;
  PIndex p{2.0};

  void validate() const {
    shape.validate();
    if (parts.size() != shape.count()) {
      throw DomainError("BlockOperator: part count does not match shape");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].rows() != shape.blocks[i].first ||
          parts[i].cols() != shape.blocks[i].second) {
        throw DomainError("BlockOperator: part dimensions do not match shape");
      }
    }
  }
};

inline BlockOperator make_block_operator(BlockShape shape,
                                         std::vector<CMatrix> parts,
                                         PIndex p) {
  BlockOperator x{std::move(shape), std::move(parts), p};
  x.validate();
  return x;
}

inline BlockOperator single_block_operator(CMatrix m, PIndex p) {
  BlockShape shape = single_block(m.rows(), m.cols());
  return BlockOperator{std::move(shape), {std::move(m)}, p};
}

// Row-major concatenated coordinates over all blocks.
CVector vec(const BlockOperator& x);
BlockOperator unvec(const BlockShape& shape, const CVector& v, PIndex p);

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
BlockOperator operator*(Complex s, const BlockOperator& a);

BlockOperator block_adjoint(const BlockOperator& x);
BlockOperator zero_block_operator(const BlockShape& shape, PIndex p);

}  // namespace schatlab
