#pragma once

#include "decodyn/basis.hpp"
#include "decodyn/common.hpp"

namespace decodyn {

// Linear map on d x d matrices, stored as the d^2 x d^2 matrix acting on
// row-major vectorized arguments: vec(phi(a)) = matrix * vec(a).
struct LinearMapRep {
  int dim = 0;
  CMat matrix;
};

// Choi matrix C = sum_{ij} E_ij (x) phi(E_ij); block (i,j) equals phi(E_ij).
struct ChoiMatrix {
  int dim = 0;
  CMat matrix;
  bool hermitian = false;
};

// Row-major vectorization: v(i*d+j) = a(i,j). Satisfies
// vec(A a B) = (A (x) B^T) vec(a).
CVec vec(const CMat& a);
CMat unvec(const CVec& v);

CMat apply_map(const LinearMapRep& map, const CMat& a);

// Operator-sum coefficients [t_ij] with phi(a) = sum_ij t_ij F_i a F_j.
// Matricially phi = sum_ij t_ij F_i (x) F_j^T, and
// t_ij = tr[(F_i (x) conj(F_j))^dag phi].
LinearMapRep from_operator_sum(const CMat& coeffs, const HermitianBasis& basis);
CMat to_operator_sum(const LinearMapRep& map, const HermitianBasis& basis);

// Transposition a -> a^T; its matrix is the SWAP permutation.
LinearMapRep transposition_map(int d);

ChoiMatrix choi(const LinearMapRep& map);
LinearMapRep map_from_choi(const ChoiMatrix& c);

// Partial transpose of the second tensor factor: (a (x) b) -> a (x) b^T.
CMat partial_transpose(const CMat& m);

LinearMapRep compose(const LinearMapRep& f, const LinearMapRep& g);

// Dual with respect to the bilinear trace pairing:
// tr(a phi(b)) = tr(dual(phi)(a) b) for all a, b.
LinearMapRep dual(const LinearMapRep& f);

LinearMapRep identity_map(int d);

bool is_trace_preserving(const LinearMapRep& map, double tol = 1e-9);
bool is_trace_annihilating(const LinearMapRep& map, double tol = 1e-9);

}  // namespace decodyn
