#include <doctest.h>

#include <cmath>

#include "decodyn/basis.hpp"
#include "decodyn/dynamics.hpp"
#include "decodyn/generators.hpp"
#include "decodyn/geometry.hpp"
#include "decodyn/random.hpp"

using namespace decodyn;

namespace {

GeneratorRep d2_diagonal_generator(double w1, double w2, double w3, double w4,
                                   TimeProfile profile = {}) {
  const HermitianBasis basis = build_basis(2);
  const GeometricTensor tensor =
      build_omega_tensor(basis, theta_signature(2), build_xi(basis));
  GeneratorSpec spec;
  spec.dim = 2;
  spec.H = CMat::Zero(2, 2);
  spec.K = CMat::Zero(2, 2);
  spec.gamma = CMat::Zero(3, 3);
  spec.omega = CMat::Zero(4, 4);
  spec.omega.diagonal() << w1, w2, w3, w4;
  spec.profile = profile;
  return build_generator(spec, tensor, basis);
}

GeneratorRep d3_example_generator(double eps1, double eps2, double omega) {
  const HermitianBasis basis = build_basis(3);
  const GeometricTensor tensor =
      build_omega_tensor(basis, theta_signature(3), build_xi(basis));
  GeneratorSpec spec;
  spec.dim = 3;
  spec.H = CMat::Zero(3, 3);
  spec.K = CMat::Zero(3, 3);
  spec.gamma = eps1 * CMat::Identity(8, 8);
  spec.omega = CMat::Zero(9, 9);
  for (int i = 0; i < 3; ++i) spec.omega(4 * i, 4 * i) = eps2;
  spec.profile.kind = TimeProfile::Kind::ExpSin;
  spec.profile.omega_param = omega;
  return build_generator(spec, tensor, basis);
}

// Compares two matrices up to a global unit phase.
double phase_distance(const CMat& a, const CMat& b) {
  const Cplx overlap = (a.adjoint() * b).trace();
  if (std::abs(overlap) < 1e-14) return 1.0;
  return (b - (overlap / std::abs(overlap)) * a).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("matrix exponential basics") {
  SplitMix64 rng(3);
  LinearMapRep m{2, random_gaussian_matrix(rng, 4, 4)};
  const LinearMapRep at_zero = matrix_exponential(m, 0.0);
  CHECK((at_zero.matrix - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  // Group property along commuting times.
  const LinearMapRep a = matrix_exponential(m, 0.3);
  const LinearMapRep b = matrix_exponential(m, 0.5);
  const LinearMapRep c = matrix_exponential(m, 0.8);
  CHECK((a.matrix * b.matrix - c.matrix).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(matrix_exponential(m, std::nan("")), std::invalid_argument);
}

TEST_CASE("d=2 diagonal-weight generator: spectrum and self-dual eigenmatrices") {
  const GeneratorRep gen = d2_diagonal_generator(0.3, 0.4, 0.7, 0.1);
  const SpectralDecomposition dec = spectral_decompose(gen.L);
  // s12 = 0.7, s23 = 1.1, s24 = 0.5; sorted by descending real part.
  REQUIRE(dec.eigenvalues.size() == 4);
  CHECK(std::abs(dec.eigenvalues[0] - Cplx(0.0, 0)) < 1e-12);
  CHECK(std::abs(dec.eigenvalues[1] - Cplx(-0.5, 0)) < 1e-12);
  CHECK(std::abs(dec.eigenvalues[2] - Cplx(-0.7, 0)) < 1e-12);
  CHECK(std::abs(dec.eigenvalues[3] - Cplx(-1.1, 0)) < 1e-12);

  const double r = 1.0 / std::sqrt(2.0);
  CMat id(2, 2), sx(2, 2), sy(2, 2), sz(2, 2);
  id << 1, 0, 0, 1;
  sx << 0, 1, 1, 0;
  sy << 0, Cplx(0, -1), Cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  // Eigenvalue 0 -> identity direction; -s24 -> sy; -s12 -> sz; -s23 -> sx.
  CHECK(phase_distance(r * id, dec.eigenmatrices[0]) < 1e-10);
  CHECK(phase_distance(r * sy, dec.eigenmatrices[1]) < 1e-10);
  CHECK(phase_distance(r * sz, dec.eigenmatrices[2]) < 1e-10);
  CHECK(phase_distance(r * sx, dec.eigenmatrices[3]) < 1e-10);

  for (int i = 0; i < 4; ++i) {
    // This family is self-dual: dual matrices coincide with eigenmatrices.
    CHECK((dec.duals[i] - dec.eigenmatrices[i]).cwiseAbs().maxCoeff() < 1e-10);
    for (int j = 0; j < 4; ++j) {
      const Cplx pairing = (dec.duals[i].adjoint() * dec.eigenmatrices[j]).trace();
      CHECK(std::abs(pairing - (i == j ? Cplx(1, 0) : Cplx(0, 0))) < 1e-10);
    }
  }
}

TEST_CASE("spectral_decompose rejects a defective map") {
  CMat jordan = CMat::Identity(4, 4);
  jordan(0, 1) = 1.0;
  LinearMapRep m{2, jordan};
  CHECK_THROWS_AS(spectral_decompose(m), NumericalError);
}

TEST_CASE("d=2 semigroup evolution has the closed population mixing form") {
  const GeneratorRep gen = d2_diagonal_generator(0.3, 0.4, 0.7, 0.1);
  const double s12 = 0.7;
  SplitMix64 rng(19);
  for (double t : {0.0, 0.2, 1.0, 4.0}) {
    const LinearMapRep prop = matrix_exponential(gen.L, t);
    const CMat rho = random_gaussian_matrix(rng, 2, 2);
    const CMat out = apply_map(prop, rho);
    const double ap = 0.5 * (1 + std::exp(-s12 * t));
    const double am = 0.5 * (1 - std::exp(-s12 * t));
    CHECK(std::abs(out(0, 0) - (ap * rho(0, 0) + am * rho(1, 1))) < 1e-12);
    CHECK(std::abs(out(1, 1) - (am * rho(0, 0) + ap * rho(1, 1))) < 1e-12);
  }
}

TEST_CASE("time splitting at equal endpoints is the exact identity") {
  const GeneratorRep gen = d3_example_generator(0.1, 0.2, 10.0);
  const LinearMapRep v = time_splitting_propagator(gen, 1.3, 1.3);
  CHECK((v.matrix - CMat::Identity(9, 9)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("time splitting rejects bad arguments") {
  const GeneratorRep gen = d3_example_generator(0.1, 0.2, 10.0);
  CHECK_THROWS_AS(time_splitting_propagator(gen, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(time_splitting_propagator(gen, 0.0, 1.0, 0), std::invalid_argument);
  // Unreachable tolerance within the step cap.
  CHECK_THROWS_AS(time_splitting_propagator(gen, 0.0, 1.0, 16, 1e-30, 64),
                  NumericalError);
}

TEST_CASE("time splitting converges to the commuting flow") {
  const GeneratorRep gen = d3_example_generator(0.1, 0.2, 10.0);
  for (double t : {0.3, 1.0, 2.7}) {
    const LinearMapRep split = time_splitting_propagator(gen, 0.0, t);
    const LinearMapRep flow = commutative_flow(gen, t);
    CHECK((split.matrix - flow.matrix).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("time splitting composes along intermediate times") {
  const GeneratorRep gen = d3_example_generator(0.1, 0.2, 10.0);
  const double r = 0.2, s = 0.9, t = 2.1;
  const LinearMapRep vsr = time_splitting_propagator(gen, r, s);
  const LinearMapRep vts = time_splitting_propagator(gen, s, t);
  const LinearMapRep vtr = time_splitting_propagator(gen, r, t);
  CHECK((vts.matrix * vsr.matrix - vtr.matrix).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("constant profile: splitting agrees with the plain exponential") {
  const GeneratorRep gen = d2_diagonal_generator(0.3, 0.4, 0.7, 0.1);
  const LinearMapRep split = time_splitting_propagator(gen, 0.0, 2.0);
  const LinearMapRep expo = matrix_exponential(gen.L, 2.0);
  CHECK((split.matrix - expo.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("evolve_family returns one map per grid point") {
  const GeneratorRep gen = d2_diagonal_generator(0.3, 0.4, 0.7, 0.1);
  const std::vector<double> grid = uniform_grid(0.0, 2.0, 5);
  const Trajectory traj = evolve_family(gen, grid);
  REQUIRE(traj.times.size() == 5);
  REQUIRE(traj.maps.size() == 5);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 2.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    const LinearMapRep expect = commutative_flow(gen, grid[i]);
    CHECK((traj.maps[i].matrix - expect.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("uniform grid endpoints are exact") {
  const auto g = uniform_grid(0.1, 10.0, 100);
  REQUIRE(g.size() == 100);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 10.0);
  const auto single = uniform_grid(2.0, 2.0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 2.0);
}

TEST_CASE("asymptotic mass limit: unital qubit family gives exactly 1") {
  const GeneratorRep gen = d2_diagonal_generator(0.3, 0.4, 0.7, 0.1);
  const SpectralDecomposition dec = spectral_decompose(gen.L);
  CHECK(std::abs(asymptotic_g_limit(dec) - 1.0) < 1e-10);
}

TEST_CASE("asymptotic mass limit: pinching family gives d") {
  // rho -> tr(rho) E11 - rho: zero mode eps = E11, dual = I, limit = d.
  const int d = 2;
  CMat e11 = CMat::Zero(d, d);
  e11(0, 0) = 1.0;
  const CMat t = vec(e11) * vec(CMat::Identity(d, d)).transpose() -
                 CMat::Identity(d * d, d * d);
  const SpectralDecomposition dec = spectral_decompose(LinearMapRep{d, t});
  CHECK(std::abs(asymptotic_g_limit(dec) - double(d)) < 1e-10);
}

TEST_CASE("asymptotic mass limit rejects degenerate or missing kernels") {
  // Degenerate kernel: weights with s12 = 0 give two zero eigenvalues.
  const GeneratorRep degen = d2_diagonal_generator(0.0, 0.0, 0.2, 0.7);
  CHECK_THROWS_AS(asymptotic_g_limit(spectral_decompose(degen.L)), NumericalError);
  // No kernel at all.
  LinearMapRep shifted{2, -CMat::Identity(4, 4)};
  CHECK_THROWS_AS(asymptotic_g_limit(spectral_decompose(shifted)), NumericalError);
}

TEST_CASE("map mass function on reference maps") {
  for (int d = 2; d <= 3; ++d) {
    CHECK(std::abs(g_function(identity_map(d)) - double(d * d)) < 1e-12);
    // Depolarizing map rho -> tr(rho) I/d.
    const CMat id = CMat::Identity(d, d);
    LinearMapRep depol{d, (vec(id) * vec(id).transpose()) / double(d)};
    CHECK(std::abs(g_function(depol) - 1.0) < 1e-12);
    // Equality with the squared Choi trace.
    const ChoiMatrix c = choi(depol);
    CHECK(std::abs(g_function(depol) - (c.matrix * c.matrix).trace().real()) < 1e-12);
  }
}
