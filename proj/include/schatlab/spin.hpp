#pragma once

#include <functional>
#include <vector>

#include "schatlab/fock.hpp"
#include "schatlab/linalg.hpp"

namespace schatlab {

// Self-adjoint spin generators on the 2^N Fock space:
//   s_k  = c_k + c_k^*          (k = 1..N)
//   s_-k = (c_k - c_k^*) / i
// They anticommute pairwise and square to the identity.
struct SpinSystem {
  int N = 0;
  std::vector<CMatrix> plus;   // s_1 .. s_N
  std::vector<CMatrix> minus;  // s_-1 .. s_-N

  // Generator by signed label j in {-N..-1, 1..N}.
  const CMatrix& s(int j) const;
  Eigen::Index dim() const { return plus.empty() ? 0 : plus[0].rows(); }
};

SpinSystem spin_system(int N);

// Product s_A of generators ordered ascending by signed integer label.
// labels must be distinct members of {-N..-1, 1..N}.
CMatrix spin_word(const SpinSystem& sys, std::vector<int> labels);

// A spin subspace with its trace-orthogonal word basis.
struct SpinSubspace {
  std::vector<CMatrix> basis;
  std::vector<std::vector<int>> labels;  // word per basis element; {} is 1
};

// F_N = span{1, s_j, s_-N s_N ... s_-1 s_1}: dimension 2N + 2.
SpinSubspace f_space(const SpinSystem& sys);

// E_2N = span{1, s_j}: dimension 2N + 1.
SpinSubspace e_space(const SpinSystem& sys);

// sigma negates the top word s_-N s_N ... s_-1 s_1 and fixes 1 and the
// generators; tau' negates the generators and the top word and fixes 1.
// Both act by coefficient transport over the word basis and throw if the
// input lies outside F_N.
CMatrix sigma_map(const SpinSystem& sys, const CMatrix& x,
                  const Tolerances& tol = {});
CMatrix tau_prime(const SpinSystem& sys, const CMatrix& x,
                  const Tolerances& tol = {});

// {x, y, z} = (x y^* z + z y^* x) / 2
CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z);

// Checks closure of the span under the triple product, on all basis triples
// plus random triples drawn through the supplied sampler.
bool is_jc_triple(const std::vector<CMatrix>& basis,
                  const std::function<CVector()>& coeff_sampler,
                  int random_triples, const Tolerances& tol = {});

// Odd functional calculus u |x| -> u f(|x|) through the SVD of x; singular
// values at or below the rank cutoff map to zero.
CMatrix odd_calculus(const CMatrix& x, const std::function<double(double)>& f,
                     const Tolerances& tol = {});

}  // namespace schatlab
