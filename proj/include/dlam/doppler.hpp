#pragma once

#include <string>
#include <vector>

#include "dlam/suscept.hpp"

namespace dlam {

enum class GridScheme { uniform, gauss_hermite };

struct VelocityGrid {
  GridScheme scheme = GridScheme::uniform;
  double u = 0;               // thermal speed, m/s
  std::vector<double> x;      // v/u
  std::vector<double> v;      // m/s
  std::vector<double> w;      // Maxwell weights, sum 1

  std::size_t size() const { return v.size(); }

  // Uniform nodes on [-span, span] in units of u, weights proportional to exp(-x^2).
  static VelocityGrid uniform(const SchemeParams& p, int n, double span = 5.0);
  static VelocityGrid gauss_hermite(const SchemeParams& p, int n);
  // A single node at rest (homogeneous medium).
  static VelocityGrid at_rest(const SchemeParams& p);
};

constexpr int kDefaultNodes = 2001;

// Empty when the grid resolves every homogeneous width in its Doppler-shift units.
std::string resolution_warning(const SchemeParams& p, const VelocityGrid& grid);

Response average_response(const SchemeParams& p, const FieldState& f, const VelocityGrid& grid,
                          std::vector<Response>* per_node = nullptr);

// Fixes K4 so the averaged zero-drive resonant alpha4 is 1 per unit Z.
Coupling doppler_coupling(const SchemeParams& p, const VelocityGrid& grid);

SusceptibilitySet average_susceptibility(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid, const Coupling& k,
                                         std::vector<Response>* per_node = nullptr);
SusceptibilitySet average_susceptibility(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid);

// Normalized light-shift compensation residual (|G1|/Omega1)^2 k1/(k1 - k2) - 1.
double compensation_residual(const SchemeParams& p, const FieldState& f);

enum class ProfileQuantity { dr1, dr2, dr3, dr4, alpha4, stokes_gain };

struct ProfileRow {
  double v_over_u = 0, weight = 0;
  cplx value;
};

// Per-node values. With remove_envelope the Maxwell weight is not applied.
std::vector<ProfileRow> velocity_profile(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid, ProfileQuantity q,
                                         const Coupling& k, bool remove_envelope = true);

struct Peak {
  bool found = false;
  double center = 0, height = 0, fwhm = 0;
};

// Highest local maximum of y inside [lo, hi] and its full width at half maximum, by linear
// interpolation between samples. Width is 0 if the half level is not crossed on both sides.
Peak find_peak(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi);

}  // namespace dlam
