#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace decodyn {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Thrown when an algorithm fails for numerical reasons (non-convergence,
// near-defective matrices, residuals above tolerance). Input validation
// failures use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_hermitian(const CMat& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

inline void require_hermitian(const CMat& a, const std::string& name, double tol = 1e-10) {
  if (!is_hermitian(a, tol))
    throw std::invalid_argument(name + " must be Hermitian");
}

// Kronecker product a (x) b.
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Ascending real eigenvalues of a Hermitian matrix.
inline RVec hermitian_eigenvalues(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const CMat& a) {
  return hermitian_eigenvalues(a)(0);
}

}  // namespace decodyn
