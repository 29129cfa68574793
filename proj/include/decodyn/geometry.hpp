#pragma once

#include "decodyn/basis.hpp"
#include "decodyn/common.hpp"

namespace decodyn {

// Four-index tensor W(j,k,mu,nu) with j,k over the full basis range d^2 and
// mu,nu over the traceless range d^2-1. Two equivalent forms:
//   sum form:          W = sum_i theta_i xi(i,j,mu) conj(xi(i,k,nu))
//   inner-product form W = tr[(F_k^T F_mu)^dag (F_nu^T F_j)]
// Hermitian in the sense conj(W(j,k,mu,nu)) = W(k,j,nu,mu).
struct GeometricTensor {
  int dim = 0;
  std::vector<Cplx> entries;

  int n() const { return dim * dim; }
  int m() const { return dim * dim - 1; }
  const Cplx& operator()(int j, int k, int mu, int nu) const {
    return entries[((static_cast<size_t>(j) * n() + k) * m() + mu) * m() + nu];
  }
  Cplx& at(int j, int k, int mu, int nu) {
    return entries[((static_cast<size_t>(j) * n() + k) * m() + mu) * m() + nu];
  }
};

// Builds the tensor via the inner-product form (the cheaper of the two).
GeometricTensor build_omega_tensor(const HermitianBasis& basis,
                                   const ThetaSignature& theta,
                                   const XiTensor& xi);

// Single entry via the theta-xi sum; used to cross-validate the build.
Cplx omega_entry_from_xi(const ThetaSignature& theta, const XiTensor& xi,
                         int j, int k, int mu, int nu);

// Contraction eta(mu,nu) = sum_{jk} W(j,k,mu,nu) omega(j,k).
// omega must be Hermitian and PSD up to -1e-10; eta is Hermitian but in
// general not PSD.
CMat eta_from_omega(const GeometricTensor& tensor, const CMat& omega);

}  // namespace decodyn
