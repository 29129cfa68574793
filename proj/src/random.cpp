#include "decodyn/random.hpp"

#include <cmath>

namespace decodyn {

double SplitMix64::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

CMat random_gaussian_matrix(SplitMix64& rng, int rows, int cols) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Cplx(rng.normal(), rng.normal());
  return m;
}

CMat random_hermitian(SplitMix64& rng, int n) {
  const CMat a = random_gaussian_matrix(rng, n, n);
  return 0.5 * (a + a.adjoint());
}

CMat random_psd(SplitMix64& rng, int n, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  const CMat a = random_gaussian_matrix(rng, n, rank);
  return a * a.adjoint();
}

CMat random_density(SplitMix64& rng, int n, int rank) {
  CMat p = random_psd(rng, n, rank);
  return p / p.trace();
}

CMat random_unitary(SplitMix64& rng, int n) {
  const CMat a = random_gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int i = 0; i < n; ++i) {
    const Cplx rii = r(i, i);
    q.col(i) *= (rii == Cplx(0.0, 0.0)) ? Cplx(1.0, 0.0) : rii / std::abs(rii);
  }
  return q;
}

}  // namespace decodyn
