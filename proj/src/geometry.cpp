#include "decodyn/geometry.hpp"

namespace decodyn {

GeometricTensor build_omega_tensor(const HermitianBasis& basis,
                                   const ThetaSignature& theta,
                                   const XiTensor& xi) {
  if (basis.dim != theta.dim || basis.dim != xi.dim)
    throw std::invalid_argument("build_omega_tensor: dimension mismatch");
  const int n = basis.size();
  const int m = n - 1;
  GeometricTensor tensor;
  tensor.dim = basis.dim;
  tensor.entries.resize(static_cast<size_t>(n) * n * m * m);

  // left(k,mu) = F_k^T F_mu, right(nu,j) = F_nu^T F_j
  std::vector<CMat> left(static_cast<size_t>(n) * m), right(static_cast<size_t>(m) * n);
  for (int k = 0; k < n; ++k)
    for (int mu = 0; mu < m; ++mu)
      left[static_cast<size_t>(k) * m + mu] = basis[k].transpose() * basis[mu];
  for (int nu = 0; nu < m; ++nu)
    for (int j = 0; j < n; ++j)
      right[static_cast<size_t>(nu) * n + j] = basis[nu].transpose() * basis[j];

  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int mu = 0; mu < m; ++mu) {
        const CMat lc = left[static_cast<size_t>(k) * m + mu].conjugate();
        for (int nu = 0; nu < m; ++nu)
          tensor.at(j, k, mu, nu) =
              lc.cwiseProduct(right[static_cast<size_t>(nu) * n + j]).sum();
      }
  return tensor;
}

Cplx omega_entry_from_xi(const ThetaSignature& theta, const XiTensor& xi,
                         int j, int k, int mu, int nu) {
  const int n = xi.n();
  Cplx sum(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    sum += static_cast<double>(theta[i]) * xi(i, j, mu) * std::conj(xi(i, k, nu));
  return sum;
}

CMat eta_from_omega(const GeometricTensor& tensor, const CMat& omega) {
  const int n = tensor.n();
  const int m = tensor.m();
  if (omega.rows() != n || omega.cols() != n)
    throw std::invalid_argument("eta_from_omega: omega must be d^2 x d^2");
  require_hermitian(omega, "eta_from_omega: omega");
  if (omega.cwiseAbs().maxCoeff() > 0.0 && min_eigenvalue(omega) < -1e-10)
    throw std::invalid_argument("eta_from_omega: omega has a negative eigenvalue beyond tolerance");

  CMat eta = CMat::Zero(m, m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Cplx w = omega(j, k);
      if (w == Cplx(0.0, 0.0)) continue;
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) eta(mu, nu) += tensor(j, k, mu, nu) * w;
    }
  return eta;
}

}  // namespace decodyn
