#include "decodyn/maps.hpp"

#include <cmath>

namespace decodyn {

namespace {

int isqrt_exact(Eigen::Index n, const char* what) {
  const int r = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(r) * r != n)
    throw std::invalid_argument(std::string(what) + ": size is not a perfect square");
  return r;
}

}  // namespace

CVec vec(const CMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("vec: matrix must be square");
  const Eigen::Index d = a.rows();
  CVec v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = a(i, j);
  return v;
}

CMat unvec(const CVec& v) {
  const int d = isqrt_exact(v.size(), "unvec");
  CMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = v(i * d + j);
  return a;
}

CMat apply_map(const LinearMapRep& map, const CMat& a) {
  if (a.rows() != map.dim || a.cols() != map.dim)
    throw std::invalid_argument("apply_map: argument dimension mismatch");
  return unvec(map.matrix * vec(a));
}

LinearMapRep from_operator_sum(const CMat& coeffs, const HermitianBasis& basis) {
  const int n = basis.size();
  if (coeffs.rows() != n || coeffs.cols() != n)
    throw std::invalid_argument("from_operator_sum: coefficient matrix must be d^2 x d^2");
  CMat t = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (coeffs(i, j) == Cplx(0.0, 0.0)) continue;
      t += coeffs(i, j) * kron(basis[i], basis[j].transpose());
    }
  return {basis.dim, std::move(t)};
}

CMat to_operator_sum(const LinearMapRep& map, const HermitianBasis& basis) {
  const int n = basis.size();
  if (map.dim != basis.dim)
    throw std::invalid_argument("to_operator_sum: basis dimension mismatch");
  CMat coeffs(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMat e = kron(basis[i], basis[j].conjugate());
      coeffs(i, j) = e.adjoint().cwiseProduct(map.matrix.transpose()).sum();
    }
  return coeffs;
}

LinearMapRep transposition_map(int d) {
  if (d < 2) throw std::invalid_argument("transposition_map requires d >= 2");
  CMat swap = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  return {d, std::move(swap)};
}

ChoiMatrix choi(const LinearMapRep& map) {
  const int d = map.dim;
  ChoiMatrix c;
  c.dim = d;
  c.matrix.resize(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      c.matrix.block(i * d, j * d, d, d) = unvec(map.matrix.col(i * d + j));
  c.hermitian = (c.matrix - c.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-10;
  return c;
}

LinearMapRep map_from_choi(const ChoiMatrix& c) {
  const int d = c.dim;
  CMat t(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.col(i * d + j) = vec(CMat(c.matrix.block(i * d, j * d, d, d)));
  return {d, std::move(t)};
}

CMat partial_transpose(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_transpose: matrix must be square");
  const int d = isqrt_exact(m.rows(), "partial_transpose");
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.block(i * d, j * d, d, d) = m.block(i * d, j * d, d, d).transpose();
  return out;
}

LinearMapRep compose(const LinearMapRep& f, const LinearMapRep& g) {
  if (f.dim != g.dim) throw std::invalid_argument("compose: dimension mismatch");
  return {f.dim, f.matrix * g.matrix};
}

LinearMapRep dual(const LinearMapRep& f) {
  const CMat swap = transposition_map(f.dim).matrix;
  return {f.dim, swap * f.matrix.transpose() * swap};
}

LinearMapRep identity_map(int d) {
  return {d, CMat::Identity(d * d, d * d)};
}

bool is_trace_preserving(const LinearMapRep& map, double tol) {
  const CVec tr_vec = vec(CMat(CMat::Identity(map.dim, map.dim)));
  const CVec residual = map.matrix.transpose() * tr_vec - tr_vec;
  return residual.cwiseAbs().maxCoeff() <= tol;
}

bool is_trace_annihilating(const LinearMapRep& map, double tol) {
  const CVec tr_vec = vec(CMat(CMat::Identity(map.dim, map.dim)));
  const CVec residual = map.matrix.transpose() * tr_vec;
  return residual.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace decodyn
