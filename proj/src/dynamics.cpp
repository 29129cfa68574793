#include "decodyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace decodyn {

LinearMapRep matrix_exponential(const LinearMapRep& map, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("matrix_exponential: t must be finite");
  return {map.dim, (t * map.matrix).exp()};
}

SpectralDecomposition spectral_decompose(const LinearMapRep& map) {
  const Eigen::Index n = map.matrix.rows();
  Eigen::ComplexEigenSolver<CMat> es(map.matrix);
  if (es.info() != Eigen::Success)
    throw NumericalError("spectral_decompose: eigensolver failed");

  CMat v = es.eigenvectors();
  Eigen::JacobiSVD<CMat> svd(v);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smax / smin > 1e8)
    throw NumericalError("spectral_decompose: eigenvector matrix condition number above 1e8; "
                         "map is defective or near-defective");

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const Cplx ea = es.eigenvalues()(a), eb = es.eigenvalues()(b);
    if (ea.real() != eb.real()) return ea.real() > eb.real();
    return ea.imag() < eb.imag();
  });

  CMat vs(n, n);
  SpectralDecomposition out;
  out.dim = map.dim;
  out.eigenvalues.reserve(static_cast<size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<size_t>(c)];
    vs.col(c) = v.col(src) / v.col(src).norm();
    out.eigenvalues.push_back(es.eigenvalues()(src));
  }

  const CMat vs_inv = vs.inverse();
  for (Eigen::Index c = 0; c < n; ++c) {
    out.eigenmatrices.push_back(unvec(vs.col(c)));
    out.duals.push_back(unvec(CVec(vs_inv.row(c).adjoint())));
  }
  return out;
}

LinearMapRep time_splitting_propagator(const GeneratorRep& gen, double s,
                                       double t, long steps, double tol,
                                       long max_steps) {
  if (s > t) throw std::invalid_argument("time_splitting_propagator: requires s <= t");
  if (steps < 1) throw std::invalid_argument("time_splitting_propagator: steps must be >= 1");
  if (s == t) return identity_map(gen.dim);

  // Every factor exp(dt g(tau_j) Lhat) shares the single generator
  // direction Lhat, so the ordered product collapses associatively to one
  // exponential of the accumulated tag sum; the quadrature error of the
  // midpoint tag sum against the profile integral is what step doubling
  // controls.
  auto tag_sum = [&](long nsteps) {
    const double dt = (t - s) / static_cast<double>(nsteps);
    double sum = 0.0;
    for (long j = 0; j < nsteps; ++j)
      sum += dt * gen.spec.profile(s + (static_cast<double>(j) + 0.5) * dt);
    return sum;
  };

  long nsteps = steps;
  CMat prev = (tag_sum(nsteps) * gen.L.matrix).exp();
  while (2 * nsteps <= max_steps) {
    nsteps *= 2;
    CMat next = (tag_sum(nsteps) * gen.L.matrix).exp();
    if ((next - prev).norm() < tol) return {gen.dim, std::move(next)};
    prev = std::move(next);
  }
  throw NumericalError("time_splitting_propagator: not converged within " +
                       std::to_string(max_steps) + " steps");
}

LinearMapRep commutative_flow(const GeneratorRep& gen, double t) {
  return matrix_exponential(gen.L, gen.spec.profile.integral(t));
}

Trajectory evolve_family(const GeneratorRep& gen, const std::vector<double>& grid) {
  Trajectory traj;
  traj.times = grid;
  traj.maps.reserve(grid.size());
  for (double t : grid) traj.maps.push_back(commutative_flow(gen, t));
  return traj;
}

double asymptotic_g_limit(const SpectralDecomposition& decomp) {
  constexpr double cluster_tol = 1e-8;
  int zero_count = 0;
  int zero_idx = -1;
  for (size_t i = 0; i < decomp.eigenvalues.size(); ++i)
    if (std::abs(decomp.eigenvalues[i]) <= cluster_tol) {
      ++zero_count;
      zero_idx = static_cast<int>(i);
    }
  if (zero_count == 0)
    throw NumericalError("asymptotic_g_limit: no zero eigenvalue found");
  if (zero_count > 1)
    throw NumericalError("asymptotic_g_limit: zero eigenvalue is degenerate");

  const double e2 = decomp.eigenmatrices[static_cast<size_t>(zero_idx)].squaredNorm();
  const double b2 = decomp.duals[static_cast<size_t>(zero_idx)].squaredNorm();
  return e2 * b2;
}

double g_function(const LinearMapRep& map) { return map.matrix.squaredNorm(); }

std::vector<double> uniform_grid(double t_start, double t_end, int points) {
  if (points < 1) throw std::invalid_argument("uniform_grid: points must be >= 1");
  std::vector<double> grid(static_cast<size_t>(points));
  if (points == 1) {
    grid[0] = t_start;
    return grid;
  }
  const double dt = (t_end - t_start) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<size_t>(i)] = t_start + dt * i;
  grid.back() = t_end;
  return grid;
}

}  // namespace decodyn
