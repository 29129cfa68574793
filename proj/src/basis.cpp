#include "decodyn/basis.hpp"

#include <cmath>

namespace decodyn {

HermitianBasis build_basis(int d) {
  if (d < 2) throw std::invalid_argument("basis dimension must be >= 2");
  HermitianBasis basis;
  basis.dim = d;
  basis.matrices.reserve(static_cast<size_t>(d) * d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMat m = CMat::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.matrices.push_back(std::move(m));
    }

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMat m = CMat::Zero(d, d);
      m(j, k) = Cplx(0.0, -inv_sqrt2);
      m(k, j) = Cplx(0.0, inv_sqrt2);
      basis.matrices.push_back(std::move(m));
    }

  for (int k = 1; k < d; ++k) {
    CMat m = CMat::Zero(d, d);
    for (int j = 0; j < k; ++j) m(j, j) = 1.0;
    m(k, k) = -static_cast<double>(k);
    m /= std::sqrt(static_cast<double>(k) * (k + 1));
    basis.matrices.push_back(std::move(m));
  }

  basis.matrices.push_back(CMat::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  return basis;
}

XiTensor build_xi(const HermitianBasis& basis) {
  const int n = basis.size();
  XiTensor xi;
  xi.dim = basis.dim;
  xi.entries.resize(static_cast<size_t>(n) * n * n);

  std::vector<CMat> products(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      products[static_cast<size_t>(i) * n + j] = basis[i] * basis[j];

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMat& p = products[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < n; ++k)
        xi.at(i, j, k) = p.cwiseProduct(basis[k].transpose()).sum();
    }
  return xi;
}

ThetaSignature theta_signature(int d) {
  if (d < 2) throw std::invalid_argument("theta signature requires d >= 2");
  ThetaSignature theta;
  theta.dim = d;
  const int pairs = d * (d - 1) / 2;
  theta.signs.assign(static_cast<size_t>(d) * d, 1);
  for (int i = pairs; i < 2 * pairs; ++i) theta.signs[static_cast<size_t>(i)] = -1;
  return theta;
}

StructureConstants structure_constants(const HermitianBasis& basis) {
  const int n = basis.size();
  StructureConstants sc;
  sc.dim = basis.dim;
  sc.f.resize(static_cast<size_t>(n) * n * n);
  sc.g.resize(static_cast<size_t>(n) * n * n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMat comm = basis[i] * basis[j] - basis[j] * basis[i];
      const CMat acomm = basis[i] * basis[j] + basis[j] * basis[i];
      for (int k = 0; k < n; ++k) {
        const size_t idx = (static_cast<size_t>(i) * n + j) * n + k;
        sc.f[idx] = comm.cwiseProduct(basis[k].transpose()).sum();
        sc.g[idx] = acomm.cwiseProduct(basis[k].transpose()).sum();
      }
    }
  return sc;
}

}  // namespace decodyn
