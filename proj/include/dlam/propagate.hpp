#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlam/doppler.hpp"

namespace dlam {

// Coefficients of the Rabi-normalized coupled-wave equations at one set of pump amplitudes.
struct WaveCoefficients {
  std::array<cplx, 4> sigma{};
  cplx gamma2, gamma4;  // FWM drives of beams 2 and 4 at the current pumps
  cplx c1, c3;          // pump back-coupling: dG1 += i c1 G4 G2 G3*, dG3 += i c3 G4 G2 G1*
};

struct PropagationOptions {
  double zmax = 10;
  double step = 0.01;
  double sample = 0.1;      // output spacing in Z (rounded to whole steps)
  bool recompute = true;    // false: coefficients evaluated once at Z = 0 and held fixed
  bool sigma_off = false;   // drop linear absorption and refraction of all four beams
  double dk_geom = 0;       // geometric wave-vector mismatch per unit Z
  double max_step_change = 0.1;
  // Constant coefficients supplied by the caller; implies no recomputation.
  std::optional<WaveCoefficients> fixed;
};

struct TraceRow {
  double Z = 0;
  std::array<cplx, 4> G{};
  double T4 = 0, T1 = 0;
  std::array<double, 4> N{};   // photon-number proxies relative to N4(0)
  std::array<double, 4> dN{};  // N - N(0), from the accumulated amplitude change
  double theta = 0, psi = 0;
};

struct PropagationTrace {
  std::vector<TraceRow> rows;
  Coupling coupling;
};

WaveCoefficients wave_coefficients(const SchemeParams& p, const FieldState& f,
                                   const VelocityGrid& grid, const Coupling& k);

PropagationTrace integrate(const SchemeParams& p, const FieldState& f0, const VelocityGrid& grid,
                           const Coupling& k, const PropagationOptions& opt);
PropagationTrace integrate(const SchemeParams& p, const FieldState& f0, const VelocityGrid& grid,
                           const PropagationOptions& opt);

// Constant-coefficient parametric pair: dG4/dZ = i s4 G4 + i g4 G2*, dG2/dZ = i s2 G2 + i g2 G4*.
struct OpaCoeffs {
  cplx sigma2, sigma4, gamma2, gamma4;
  static OpaCoeffs from_real(double alpha2, double alpha4, double dk2, double dk4, cplx gamma2,
                             cplx gamma4);
  cplx beta() const;
  cplx mu() const;
};

// Returns (G2*, G4) at length L from boundary values (G2(0), G4(0)).
std::pair<cplx, cplx> analytic_opa(cplx G20, cplx G40, const OpaCoeffs& c, double L);

struct Efficiency {
  double eta = 0;
  std::string warning;
};
// I4(L)/I2(0) for I4(0) = 0.
Efficiency fwm_efficiency(const OpaCoeffs& c, double L);
// Probe transmission for I2(0) = 0 to lowest order in gamma^2/beta^2.
double opa_transmission_approx(const OpaCoeffs& c, double L);

struct ManleyRoweRow {
  double Z = 0;
  std::array<double, 4> dN{};
  double defect = 0;
};
std::vector<ManleyRoweRow> manley_rowe_report(const PropagationTrace& t);

enum class SweepVariable { Omega4, G10 };

struct SwitchingRow {
  double value = 0;  // internal units
  double T = 0;
};
std::vector<SwitchingRow> switching_curve(const SchemeParams& p, const FieldState& f0,
                                          const VelocityGrid& grid, const Coupling& k,
                                          PropagationOptions opt, double Z,
                                          SweepVariable var, const std::vector<double>& values);

}  // namespace dlam
