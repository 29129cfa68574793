#pragma once

#include <vector>

#include "decodyn/geometry.hpp"
#include "decodyn/maps.hpp"

namespace decodyn {

// Scalar time profile g(t) multiplying a constant generator direction.
struct TimeProfile {
  enum class Kind { Constant, ExpSin, Tabulated };

  Kind kind = Kind::Constant;
  double omega_param = 0.0;               // ExpSin: g(t) = e^{-t}(1 + sin(omega t))
  std::vector<double> times, values;      // Tabulated: piecewise-linear samples

  double operator()(double t) const;
  // Integral of g over [0, t]; closed form for Constant/ExpSin, exact
  // integral of the linear interpolant for Tabulated.
  double integral(double t) const;
};

struct GeneratorSpec {
  int dim = 0;
  CMat H;        // d x d Hermitian
  CMat K;        // d x d Hermitian
  CMat gamma;    // (d^2-1) x (d^2-1) Hermitian PSD
  CMat omega;    // d^2 x d^2 Hermitian PSD
  TimeProfile profile;
};

struct GeneratorRep {
  int dim = 0;
  GeneratorSpec spec;
  CMat eta;           // contraction of the geometric tensor with spec.omega
  LinearMapRep M;     // standard form from (H, gamma)
  LinearMapRep N;     // standard form from (K, eta)
  LinearMapRep L;     // M + N
};

// rho -> -i[H, rho] + sum_{mu,nu} c(mu,nu) (F_mu rho F_nu - {F_nu F_mu, rho}/2)
// with mu,nu over the traceless basis range. coeffs must be Hermitian but
// need not be PSD.
LinearMapRep build_standard_form(const CMat& H, const CMat& coeffs,
                                 const HermitianBasis& basis);

GeneratorRep build_generator(const GeneratorSpec& spec,
                             const GeometricTensor& tensor,
                             const HermitianBasis& basis);

// L = -i[S, .] + phi - {dual(phi)(I), .}/2 with phi = phi_cp + swap . psi,
// phi_cp and psi completely positive. G and C are the factor operators of
// phi_cp and psi.
struct DualFormDecomposition {
  CMat S;                 // Hermitian d x d
  LinearMapRep phi;       // phi_cp + transposition . psi
  LinearMapRep phi_cp;
  LinearMapRep psi;
  std::vector<CMat> G;
  std::vector<CMat> C;
};

DualFormDecomposition dual_form_decomposition(const GeneratorRep& gen,
                                              const HermitianBasis& basis,
                                              const XiTensor& xi,
                                              const ThetaSignature& theta);

// Extracts (H, coeffs) with H traceless (the commutator part is invariant
// under trace shifts of H) and reports whether coeffs is PSD up to -1e-10.
struct StandardFormExtraction {
  CMat H;
  CMat coeffs;
  bool is_psd = false;
};

StandardFormExtraction verify_standard_form(const LinearMapRep& map,
                                            const HermitianBasis& basis,
                                            const XiTensor& xi);

}  // namespace decodyn
