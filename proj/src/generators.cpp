#include "decodyn/generators.hpp"

#include <algorithm>
#include <cmath>

namespace decodyn {

namespace {

// Matricial form of a -> X a + a X^dag-free pieces used below.
CMat commutator_rep(const CMat& h) {
  const Eigen::Index d = h.rows();
  const CMat id = CMat::Identity(d, d);
  return kron(h, id) - kron(id, h.transpose());
}

CMat anticommutator_rep(const CMat& x) {
  const Eigen::Index d = x.rows();
  const CMat id = CMat::Identity(d, d);
  return kron(x, id) + kron(id, x.transpose());
}

void require_psd(const CMat& a, const std::string& name, double tol = 1e-10) {
  require_hermitian(a, name);
  if (min_eigenvalue(a) < -tol)
    throw std::invalid_argument(name + " must be positive semidefinite");
}

// Factor operators sum_i sqrt(lambda_a) V(i,a) F_i from an eigendecomposition
// of a PSD coefficient matrix; eigenvalues below the clip are dropped.
std::vector<CMat> factor_operators(const CMat& coeffs,
                                   const HermitianBasis& basis,
                                   double clip = 1e-12) {
  Eigen::SelfAdjointEigenSolver<CMat> es(coeffs);
  std::vector<CMat> ops;
  const int d = basis.dim;
  for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
    const double lambda = es.eigenvalues()(a);
    if (lambda <= clip) continue;
    CMat op = CMat::Zero(d, d);
    for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
      op += es.eigenvectors()(i, a) * basis[static_cast<int>(i)];
    ops.push_back(std::sqrt(lambda) * op);
  }
  return ops;
}

}  // namespace

double TimeProfile::operator()(double t) const {
  switch (kind) {
    case Kind::Constant:
      return 1.0;
    case Kind::ExpSin:
      return std::exp(-t) * (1.0 + std::sin(omega_param * t));
    case Kind::Tabulated: {
      if (times.empty()) throw std::invalid_argument("tabulated profile has no samples");
      if (t <= times.front()) return values.front();
      if (t >= times.back()) return values.back();
      auto it = std::upper_bound(times.begin(), times.end(), t);
      const size_t hi = static_cast<size_t>(it - times.begin());
      const size_t lo = hi - 1;
      const double w = (t - times[lo]) / (times[hi] - times[lo]);
      return (1.0 - w) * values[lo] + w * values[hi];
    }
  }
  return 0.0;
}

double TimeProfile::integral(double t) const {
  switch (kind) {
    case Kind::Constant:
      return t;
    case Kind::ExpSin: {
      const double w = omega_param;
      return 1.0 - std::exp(-t) +
             (w - w * std::exp(-t) * std::cos(w * t) - std::exp(-t) * std::sin(w * t)) /
                 (1.0 + w * w);
    }
    case Kind::Tabulated: {
      if (times.empty()) throw std::invalid_argument("tabulated profile has no samples");
      if (t < 0.0) throw std::invalid_argument("tabulated profile integral requires t >= 0");
      // Trapezoid over the breakpoints of the clamped linear interpolant,
      // which is exact segment by segment.
      std::vector<double> pts{0.0};
      for (double x : times)
        if (x > 0.0 && x < t) pts.push_back(x);
      pts.push_back(t);
      double acc = 0.0;
      for (size_t i = 0; i + 1 < pts.size(); ++i)
        acc += 0.5 * ((*this)(pts[i]) + (*this)(pts[i + 1])) * (pts[i + 1] - pts[i]);
      return acc;
    }
  }
  return 0.0;
}

LinearMapRep build_standard_form(const CMat& H, const CMat& coeffs,
                                 const HermitianBasis& basis) {
  const int d = basis.dim;
  const int m = basis.size() - 1;
  if (H.rows() != d || H.cols() != d)
    throw std::invalid_argument("build_standard_form: H must be d x d");
  if (coeffs.rows() != m || coeffs.cols() != m)
    throw std::invalid_argument("build_standard_form: coeffs must be (d^2-1) x (d^2-1)");
  require_hermitian(H, "build_standard_form: H");
  require_hermitian(coeffs, "build_standard_form: coeffs");

  const Cplx minus_i(0.0, -1.0);
  CMat t = minus_i * commutator_rep(H);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      const Cplx c = coeffs(mu, nu);
      if (c == Cplx(0.0, 0.0)) continue;
      t += c * kron(basis[mu], basis[nu].transpose());
      t -= 0.5 * c * anticommutator_rep(basis[nu] * basis[mu]);
    }
  return {d, std::move(t)};
}

GeneratorRep build_generator(const GeneratorSpec& spec,
                             const GeometricTensor& tensor,
                             const HermitianBasis& basis) {
  const int d = spec.dim;
  if (d != basis.dim || d != tensor.dim)
    throw std::invalid_argument("build_generator: dimension mismatch");
  require_hermitian(spec.H, "build_generator: H");
  require_hermitian(spec.K, "build_generator: K");
  require_psd(spec.gamma, "build_generator: gamma");
  require_psd(spec.omega, "build_generator: omega");

  GeneratorRep gen;
  gen.dim = d;
  gen.spec = spec;
  gen.eta = eta_from_omega(tensor, spec.omega);
  gen.M = build_standard_form(spec.H, spec.gamma, basis);
  gen.N = build_standard_form(spec.K, gen.eta, basis);
  gen.L = {d, gen.M.matrix + gen.N.matrix};

  if (!is_trace_annihilating(gen.L, 1e-10))
    throw NumericalError("build_generator: assembled generator does not annihilate the trace");
  return gen;
}

DualFormDecomposition dual_form_decomposition(const GeneratorRep& gen,
                                              const HermitianBasis& basis,
                                              const XiTensor& xi,
                                              const ThetaSignature& theta) {
  const int d = gen.dim;
  const int n = basis.size();
  const double sqrt_d = std::sqrt(static_cast<double>(d));

  DualFormDecomposition out;
  out.G = factor_operators(gen.spec.gamma, basis);
  out.C = factor_operators(gen.spec.omega, basis);

  // A_k = sum_l theta_l conj(xi(l,k,n-1)) F_l, which reduces to
  // theta_k F_k / sqrt(d).
  std::vector<CMat> A(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    CMat a = CMat::Zero(d, d);
    for (int l = 0; l < n; ++l)
      a += static_cast<double>(theta[l]) * std::conj(xi(l, k, n - 1)) * basis[l];
    A[static_cast<size_t>(k)] = std::move(a);
  }

  CMat D = CMat::Zero(d, d);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Cplx w = gen.spec.omega(j, k);
      if (w == Cplx(0.0, 0.0)) continue;
      D += w * A[static_cast<size_t>(k)] * basis[j];
    }
  D /= sqrt_d;

  const CMat E = (D - D.adjoint()) / Cplx(0.0, 2.0);
  out.S = gen.spec.H + gen.spec.K + E;

  const int nn = n;  // d^2
  CMat phi_cp = CMat::Zero(nn, nn);
  for (const CMat& g : out.G) phi_cp += kron(g, g.conjugate());
  CMat psi = CMat::Zero(nn, nn);
  for (const CMat& c : out.C) psi += kron(c, c.conjugate());

  const CMat swap = transposition_map(d).matrix;
  out.phi_cp = {d, phi_cp};
  out.psi = {d, psi};
  out.phi = {d, phi_cp + swap * psi};

  CMat sink = CMat::Zero(d, d);  // dual(phi)(I) = sum G^dag G + sum C^dag C
  for (const CMat& g : out.G) sink += g.adjoint() * g;
  for (const CMat& c : out.C) sink += c.adjoint() * c;

  const CMat rebuilt = Cplx(0.0, -1.0) * CMat(kron(out.S, CMat::Identity(d, d)) -
                                              kron(CMat::Identity(d, d), out.S.transpose())) +
                       out.phi.matrix - 0.5 * anticommutator_rep(sink);
  const double residual = (gen.L.matrix - rebuilt).norm();
  if (residual > 1e-10 * std::max(1.0, gen.L.matrix.norm()))
    throw NumericalError("dual_form_decomposition: reconstruction residual " +
                         std::to_string(residual) + " above tolerance");
  return out;
}

StandardFormExtraction verify_standard_form(const LinearMapRep& map,
                                            const HermitianBasis& basis,
                                            const XiTensor& xi) {
  const int d = basis.dim;
  const int n = basis.size();
  const int m = n - 1;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  if (map.dim != d) throw std::invalid_argument("verify_standard_form: dimension mismatch");
  if (!is_trace_annihilating(map, 1e-8 * std::max(1.0, map.matrix.norm())))
    throw std::invalid_argument("verify_standard_form: map does not annihilate the trace");

  const CMat t = to_operator_sum(map, basis);
  if ((t - t.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, t.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("verify_standard_form: map does not preserve Hermiticity");

  StandardFormExtraction out;
  out.coeffs = t.topLeftCorner(m, m);

  // sigma_k = sum_{mu,nu} c(mu,nu) xi(nu,mu,k); real for Hermitian c.
  CVec sigma = CVec::Zero(n);
  for (int k = 0; k < n; ++k) {
    Cplx s(0.0, 0.0);
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu) s += out.coeffs(mu, nu) * xi(nu, mu, k);
    sigma(k) = s;
  }

  out.H = CMat::Zero(d, d);
  for (int k = 0; k < m; ++k) {
    const Cplx h_k = Cplx(0.0, 1.0) * (t(k, n - 1) + 0.5 * sqrt_d * sigma(k)) / sqrt_d;
    out.H += h_k * basis[k];
  }
  out.H = 0.5 * (out.H + out.H.adjoint()).eval();

  const LinearMapRep rebuilt = build_standard_form(out.H, CMat(0.5 * (out.coeffs + out.coeffs.adjoint())), basis);
  const double residual = (rebuilt.matrix - map.matrix).norm();
  if (residual > 1e-8 * std::max(1.0, map.matrix.norm()))
    throw NumericalError("verify_standard_form: extracted form does not reproduce the map");

  out.coeffs = 0.5 * (out.coeffs + out.coeffs.adjoint()).eval();
  out.is_psd = min_eigenvalue(out.coeffs) >= -1e-10;
  return out;
}

}  // namespace decodyn
