#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decodyn/dynamics.hpp"
#include "decodyn/maps.hpp"

namespace decodyn {

struct CpTestResult {
  bool cp = false;
  double lambda_min = 0.0;
};

// flag = (lambda_min(C) >= -1e-9); requires a Hermitian Choi matrix.
CpTestResult cp_test(const ChoiMatrix& c);

struct WolkowiczBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Trace-moment sandwich for the smallest eigenvalue of a Hermitian matrix:
// m - s*sqrt(n-1) <= lambda_min <= m - s/sqrt(n-1) with m = tr(A)/n,
// s^2 = tr(A^2)/n - m^2.
WolkowiczBounds wolkowicz_bounds(const CMat& a);

// One-sided sufficient criterion: a trace-preserving decomposable map is CP
// when g_function(map) <= d^2/(d^2-1). False only means "criterion silent".
bool cp_sufficient(const LinearMapRep& map);

double cp_sufficient_threshold(int d);

enum class AsymptoticVerdict { Certified, Inconclusive };

struct AsymptoticCpResult {
  AsymptoticVerdict verdict = AsymptoticVerdict::Inconclusive;
  double limit = 0.0;
  double threshold = 0.0;
};

AsymptoticCpResult asymptotic_cp_check(const SpectralDecomposition& decomp,
                                       int d);

// Unit-trace Hermitian matrix lying (up to 1e-9) in the intersection of the
// PSD cone and its partial-transpose conjugate.
struct ConeState {
  CMat rho;
};

bool verify_cone_state(const ConeState& state, double tol = 1e-9);

struct WitnessConfig {
  int max_iters = 5000;
  int restarts = 16;
  double step = 0.0;        // 0 -> 1/norm_inf(C)
  std::uint64_t seed = 0;
  // The PSD and PPT cones meet tangentially at low-rank optima, where the
  // cycle count to push the residual under 1e-8 can reach a few thousand.
  int dykstra_max_iters = 20000;
};

struct WitnessResult {
  double min_value = 0.0;
  ConeState argmin;
};

// Minimizes tr(C rho) over unit-trace PSD rho with PSD partial transpose by
// projected gradient descent; the projection onto the intersection is a
// three-set Dykstra scheme (PSD cone, transposed PSD cone, trace
// hyperplane). A value below -1e-7 together with a verified state certifies
// that the map of C is not decomposable; a nonnegative best value is
// inconclusive.
WitnessResult decomposability_witness_search(const ChoiMatrix& c,
                                             const WitnessConfig& config);

// Projection onto the feasible set used by the search; exposed for fixed
// point testing. Throws NumericalError if the feasibility residual stays
// above 1e-8 after max_iters cycles.
CMat dykstra_project(const CMat& x, int max_iters = 20000);

struct TimeRecord {
  double t = 0.0;
  double lambda_min = 0.0;
  double wolk_lo = 0.0;
  double wolk_hi = 0.0;
  double g_value = 0.0;
  bool cp = false;
  double witness_value = 0.0;
  std::string verdict;      // certified_yes | certified_no_with_witness | inconclusive
  std::optional<CMat> witness;
};

struct ClassificationReport {
  std::vector<TimeRecord> rows;
  std::vector<double> crossings;          // roots of lambda_min(t)
  std::vector<Cplx> spectrum;             // of the generator direction
  double limit = 0.0;
  double threshold = 0.0;
  std::string asymptotic_verdict;
};

struct ClassifyConfig {
  WitnessConfig witness;
  bool run_witness = true;   // witness search on non-CP grid points
  double bisection_tol = 1e-6;
};

ClassificationReport classify_trajectory(const GeneratorRep& gen,
                                         const std::vector<double>& grid,
                                         const ClassifyConfig& config);

}  // namespace decodyn
