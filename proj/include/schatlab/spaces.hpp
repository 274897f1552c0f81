#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schatlab/block.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/map.hpp"
#include "schatlab/rng.hpp"

namespace schatlab {

// The six families of positively 1-complemented model subspaces.
enum class TypeKind {
  Sym,        // twisted symmetric matrices tensor a positive factor
  Antisym,    // twisted antisymmetric-type fixed space tensor a factor
  Rect,       // paired rectangular blocks (w ox a1, w^T ox a2)
  AFHilbert,  // graded antisymmetric-Fock Hilbertian space (build only)
  SpinEven,   // paired twisted even spin factors
  SpinOdd,    // twisted odd spin factor tensor a factor
};

std::string to_string(TypeKind kind);
TypeKind type_kind_from_string(const std::string& name);

// Recipe for one model space. Omitted twists and factors are generated
// deterministically from the seed when the space is built; the built space
// records the realized matrices.
struct TypeSpec {
  TypeKind kind = TypeKind::Sym;
  int I = 0;       // matrix size (Sym, Antisym, Rect rows)
  int J = 0;       // Rect columns
  int N = 0;       // spin / Fock mode count
  int a_dim = 1;   // generated factor size
  int a2_dim = 1;  // generated second-factor size
  PIndex p{2.0};
  std::uint64_t seed = 0;
  std::optional<CMatrix> O;   // symmetric or antisymmetric unitary twist
  std::optional<CMatrix> v;   // unitary twist inside the spin factor
  std::optional<CMatrix> a;   // positive injective factor
  std::optional<CMatrix> a2;  // second positive injective factor
};

struct Subspace {
  TypeSpec spec;  // with all optional fields realized
  BlockShape shape;
  std::vector<BlockOperator> basis;  // linearly independent spanning set
};

// Realizes a TypeSpec: generates missing twists and factors from the seed,
// normalizes factors (jointly for the paired types, at the recipe exponent),
// validates supplied twists, and constructs a linearly independent basis.
Subspace build_type(const TypeSpec& spec, const Tolerances& tol = {});

// A blockwise pair of partial isometries implementing y = u x v.
struct EquivWitness {
  std::vector<CMatrix> u;
  std::vector<CMatrix> v;
};

struct EquivalenceCheck {
  bool equivalent = false;
  double defect = 0.0;        // worst residual over all identities tested
  EquivWitness normalized;    // witness cut down to the supports of x and y
};

// Verifies that x -> u x v carries span{xs} onto span{ys} bijectively, then
// normalizes the witness to the supports of the two spaces and checks the
// four support identities of an equivalence.
EquivalenceCheck check_equivalence(const std::vector<BlockOperator>& xs,
                                   const std::vector<BlockOperator>& ys,
                                   const EquivWitness& witness,
                                   const Tolerances& tol = {});

// One operator-disjoint component of a span of square matrices.
struct DisjointComponent {
  std::vector<CMatrix> basis;
  CMatrix left;   // left support projection of the component
  CMatrix right;  // right support projection of the component
};

// Splits a span of square matrices into mutually operator-disjoint pieces by
// support closure. The result is a decomposition; no minimality claim is
// attached to it.
std::vector<DisjointComponent> disjoint_components(
    const std::vector<CMatrix>& span, const Tolerances& tol = {});

// Randomized search for a positive element of the span whose support matches
// the support of the whole space, by averaging images of random PSD inputs
// under the supplied positive projection onto the span. Throws SearchFailure
// when the budget is exhausted; a failure is a report, never a disproof.
BlockOperator positive_element_with_full_support(
    const std::vector<BlockOperator>& basis, const MatrixMap& projection,
    Rng& rng, int budget = 64, const Tolerances& tol = {});

}  // namespace schatlab
