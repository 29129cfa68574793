#pragma once

#include <vector>

#include "decodyn/common.hpp"

namespace decodyn {

// Orthonormal Hermitian basis of the d x d matrices under the
// Hilbert-Schmidt inner product. Ordering: d(d-1)/2 symmetric off-diagonal
// elements, then d(d-1)/2 antisymmetric ones, then d-1 real traceless
// diagonal ones, and the normalized identity I/sqrt(d) last. Off-diagonal
// pairs (j,k), j<k are enumerated lexicographically within each block.
struct HermitianBasis {
  int dim = 0;
  std::vector<CMat> matrices;

  int size() const { return dim * dim; }
  const CMat& operator[](int i) const { return matrices[static_cast<size_t>(i)]; }
};

// Third-order moments xi(i,j,k) = tr(F_i F_j F_k). Cyclic in (i,j,k);
// conj(xi(i,j,k)) = xi(j,i,k).
struct XiTensor {
  int dim = 0;
  std::vector<Cplx> entries;

  int n() const { return dim * dim; }
  const Cplx& operator()(int i, int j, int k) const {
    return entries[(static_cast<size_t>(i) * n() + j) * n() + k];
  }
  Cplx& at(int i, int j, int k) {
    return entries[(static_cast<size_t>(i) * n() + j) * n() + k];
  }
};

// Signs s_i such that transposition acts as a -> sum_i s_i F_i a F_i.
// s_i = -1 exactly on the antisymmetric block of the basis.
struct ThetaSignature {
  int dim = 0;
  std::vector<int> signs;

  int operator[](int i) const { return signs[static_cast<size_t>(i)]; }
};

// Antisymmetric and symmetric structure constants:
// f(i,j,k) = tr(F_k [F_i, F_j]), g(i,j,k) = tr(F_k {F_i, F_j}).
struct StructureConstants {
  int dim = 0;
  std::vector<Cplx> f;
  std::vector<Cplx> g;

  int n() const { return dim * dim; }
  const Cplx& f_at(int i, int j, int k) const {
    return f[(static_cast<size_t>(i) * n() + j) * n() + k];
  }
  const Cplx& g_at(int i, int j, int k) const {
    return g[(static_cast<size_t>(i) * n() + j) * n() + k];
  }
};

HermitianBasis build_basis(int d);
XiTensor build_xi(const HermitianBasis& basis);
ThetaSignature theta_signature(int d);
StructureConstants structure_constants(const HermitianBasis& basis);

}  // namespace decodyn
