#pragma once

#include <array>
#include <utility>

#include "dlam/densmat.hpp"

namespace dlam {

// Per-beam propagation constants: dG_j/dZ = i K_j rho_j, with rho_j the coherence of beam j.
struct Coupling {
  std::array<double, 4> K{};
  // K4 chosen so the resonant zero-drive alpha4 of a single velocity class at rest is 1.
  static Coupling homogeneous(const SchemeParams& p);
  // Ratios K_j / K4 fixed by the scheme's alpha0 (or equal dipole moments).
  static Coupling from_anchor(const SchemeParams& p, double K4);
};

// Linear response of one velocity class (or its Maxwell average):
// rho_j = s_j G_j for j = 1..4, r4t = x4 G1 G3 G2*, r2t = x2 G1 G3 G4*.
struct Response {
  std::array<cplx, 4> s{};
  cplx x2, x4;
  std::array<cplx, 4> chi_norm{};
  cplx fwm2, fwm4;

  Response& operator+=(const Response& o);
  Response operator*(double w) const;
};

Response response(const SchemeParams& p, const DmSolution& dm, const Detunings& d);

struct SusceptibilitySet {
  std::array<cplx, 4> chi_norm{};
  // Cross-couplings per unit G1 G3, normalized like chi_norm.
  cplx chi_fwm_2, chi_fwm_4;
  std::array<cplx, 4> sigma{};  // per unit Z; gain means Im sigma < 0
  cplx gamma_2, gamma_4;
  Response raw;

  double alpha(int j) const { return 2 * sigma[j].imag(); }
  double dk(int j) const { return sigma[j].real(); }
};

SusceptibilitySet assemble(const Response& r, const Coupling& k, const FieldState& f);

SusceptibilitySet chi_all(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                          double v = 0);
SusceptibilitySet chi_all(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                          double v, const Coupling& k);

// Three-level limits. Both printed algebraic forms are returned.
std::pair<cplx, cplx> chi_v_scheme_forms(const SchemeParams& p, const FieldState& f,
                                         const DmSolution& dm, double v = 0);
cplx chi_v_scheme(const SchemeParams& p, const FieldState& f, const DmSolution& dm, double v = 0);
std::pair<cplx, cplx> chi_lambda_scheme_forms(const SchemeParams& p, const FieldState& f,
                                              const DmSolution& dm, double v = 0);
cplx chi_lambda_scheme(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                       double v = 0);

// Far-detuned two-term approximation of alpha4(Omega4)/alpha4^0(0) with G3 = 0.
double raman_limit(const SchemeParams& p, const FieldState& f, const DmSolution& dm);

// AWI threshold ratio dr1 |G1|^2 / (Gamma_gm Gamma_lg dr4); gain at line center when > 1.
double awi_ratio(const SchemeParams& p, const FieldState& f, const DmSolution& dm);

struct IntegratedAbsorption {
  double re = 0, im = 0;  // integrals of Re and Im of chi4/chi4^0 over Omega4
  double expected = 0;    // pi Gamma_lm dr4 / dn4
  double error_estimate = 0;
};
// Integrates over the whole real Omega4 axis (single velocity class, v = 0).
IntegratedAbsorption integrated_absorption(const SchemeParams& p, const FieldState& f);

}  // namespace dlam
