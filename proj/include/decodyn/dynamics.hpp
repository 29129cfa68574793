#pragma once

#include <vector>

#include "decodyn/generators.hpp"
#include "decodyn/maps.hpp"

namespace decodyn {

// Biorthogonal spectral data of a map: eigenvalues mu_i, eigenmatrices
// eps_i normalized to unit Hilbert-Schmidt norm, and dual matrices beta_i
// with tr(beta_i^dag eps_j) = delta_ij. Sorted by descending real part,
// ties by ascending imaginary part.
struct SpectralDecomposition {
  int dim = 0;
  std::vector<Cplx> eigenvalues;
  std::vector<CMat> eigenmatrices;
  std::vector<CMat> duals;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<LinearMapRep> maps;
};

LinearMapRep matrix_exponential(const LinearMapRep& map, double t);

// Throws NumericalError when the eigenvector matrix has condition number
// above 1e8 (near-defective input).
SpectralDecomposition spectral_decompose(const LinearMapRep& map);

// Ordered product prod_j exp(dt g(tau_j) Lhat) over a uniform grid on
// [s, t] with midpoint tags tau_j. Starting from `steps` subdivisions the
// step count is doubled until two successive products differ by less than
// `tol` in Frobenius norm; throws NumericalError when `max_steps` is
// exceeded first.
LinearMapRep time_splitting_propagator(const GeneratorRep& gen, double s,
                                       double t, long steps = 16,
                                       double tol = 1e-8,
                                       long max_steps = 32768);

// exp(f(t) Lhat) with f the profile integral; valid because scalar-profile
// generators commute across times.
LinearMapRep commutative_flow(const GeneratorRep& gen, double t);

Trajectory evolve_family(const GeneratorRep& gen,
                         const std::vector<double>& grid);

// Requires the zero eigenvalue to be simple (clustering tolerance 1e-8);
// returns |eps_0|^2 |beta_0|^2 >= 1, the large-time limit of the map
// Frobenius mass under e^{tL}.
double asymptotic_g_limit(const SpectralDecomposition& decomp);

// sum_{ij} |phi(E_ij)|_HS^2 = |phi_matrix|_F^2 = tr(C_phi^2).
double g_function(const LinearMapRep& map);

std::vector<double> uniform_grid(double t_start, double t_end, int points);

}  // namespace decodyn
