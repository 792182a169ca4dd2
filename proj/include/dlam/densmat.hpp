#pragma once

#include <array>

#include "dlam/scheme.hpp"

namespace dlam {

struct ResonanceDenominators {
  cplx P1, P2, P3, P4, P12, P43, P32, P41, d2, d4;
  static ResonanceDenominators make(const CoherenceWidths& c, const Detunings& d);
};

struct SaturationFactors {
  std::array<cplx, 9> g{};  // g[1..8]; g[0] unused
  std::array<cplx, 9> v{};  // v[1..8]
  double ae1 = 0, ae3 = 0, ae1_0 = 0, ae3_0 = 0;
  double a1 = 0, a2 = 0, a3 = 0, b1 = 0, b2 = 0, b3 = 0;  // open branching
  double b = 0, beta_closed = 0;                          // closed printed form
  static SaturationFactors make(const SchemeParams& p, const FieldState& f,
                                const ResonanceDenominators& P);
};

struct DmSolution {
  std::array<double, 4> pop{};         // r_l, r_g, r_n, r_m
  std::array<double, 4> zero_field{};  // n_l, n_g, n_n, n_m
  std::array<double, 4> dr{};          // dr1..dr4
  std::array<double, 4> dn{};          // dn1..dn4

  cplx r1, r3;                              // strong-field coherences
  cplx r2, r4, r2t, r4t, r12, r43, r32, r41;  // weak-field set

  // Field-independent response coefficients:
  // r4 = i G4 R4 / P4, r2 = i G2 R2 / P2, r4t = x4 G1 G3 G2*, r2t = x2 G1 G3 G4*.
  cplx R2, R4, x2, x4;
  bool has_coherences = false;
};

// Zero-field populations from the pump rates (normalized for closed topology).
std::array<double, 4> zero_field_populations(const SchemeParams& p);

DmSolution populations_open(const SchemeParams& p, const FieldState& f, double v);
DmSolution populations_closed(const SchemeParams& p, const FieldState& f, double v);
// Printed appendix form of the closed populations; exact only when w_g gamma_gn = w_m gamma_mn = 0.
DmSolution populations_closed_printed(const SchemeParams& p, const FieldState& f, double v);
DmSolution populations(const SchemeParams& p, const FieldState& f, double v);
DmSolution coherences(const SchemeParams& p, const FieldState& f, DmSolution pops, double v);
DmSolution solve(const SchemeParams& p, const FieldState& f, double v);

// Same operations at explicit (already shifted) detunings.
DmSolution populations_at(const SchemeParams& p, const FieldState& f, const Detunings& d);
DmSolution coherences_at(const SchemeParams& p, const FieldState& f, DmSolution pops,
                         const Detunings& d);
DmSolution solve_at(const SchemeParams& p, const FieldState& f, const Detunings& d);

// Brute-force steady state of the full rotating-frame master equation, linearized in G2, G4.
DmSolution solve_oracle(const SchemeParams& p, const FieldState& f, double v);
DmSolution solve_oracle_at(const SchemeParams& p, const FieldState& f, const Detunings& d);

}  // namespace dlam
