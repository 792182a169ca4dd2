#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace dlam {

using cplx = std::complex<double>;

// Levels of the double-lambda loop. l and n are the lower pair, g and m the upper.
enum class Level { l = 0, g = 1, n = 2, m = 3 };

enum class Topology { open, closed };

// Transitions are indexed 0..3 for beams 1..4: l-g, g-n, n-m, m-l.
constexpr int kBeams = 4;

namespace phys {
constexpr double pi = 3.14159265358979323846;
constexpr double kB = 1.380649e-23;
constexpr double h = 6.62607015e-34;
constexpr double c = 299792458.0;
constexpr double amu = 1.66053906660e-27;
}  // namespace phys

struct DecayRates {
  double gl = 7, gn = 4, mn = 5, ml = 10;
};

struct LevelWidths {
  double l = 20, g = 120, n = 20, m = 120;
};

struct CoherenceWidths {
  double lg = 70, ng = 70, nm = 70, lm = 70, ln = 20, gm = 120;
  // Homogeneous half-width of beam j's transition.
  double beam(int j) const;
};

struct SchemeParams {
  Topology topology = Topology::closed;
  std::array<double, 4> lambda_nm{655, 756, 532, 480};
  DecayRates gamma;
  LevelWidths width;
  CoherenceWidths coh;
  // Indexed by Level. Open: q_j. Closed: w_j feeding from l (the l entry is unused).
  std::array<double, 4> pump{0, 0, 0, 0};
  // Open topology only: if > 0, pumps are rescaled so the zero-field populations sum to this.
  double occupancy = 0;
  double temperature = 683;
  double molar_mass = 45.98;
  // Resonant zero-field absorption of each beam relative to beam 4. With equal_dipole the
  // values are derived as k_j dn_j / Gamma_j (normalized to beam 4) and alpha0 is ignored.
  bool equal_dipole = true;
  std::array<double, 4> alpha0{1, 1, 1, 1};
  std::array<int, 4> propagation_sign{1, 1, 1, 1};
  // Use the light-shift denominator as printed in the compensation formula instead of the
  // three-level Stokes form (comparison switch, only affects chi_lambda_scheme).
  bool stokes_alt_denominator = false;

  // Wavenumber of beam j in 1/m.
  double k(int j) const;
};

// Detunings at one velocity class, internal units (angular, 1e6 s^-1).
struct Detunings {
  double O1 = 0, O2 = 0, O3 = 0, O4 = 0;
  double operator[](int j) const { return j == 0 ? O1 : j == 1 ? O2 : j == 2 ? O3 : O4; }
};

struct FieldState {
  std::array<cplx, 4> G{};
  double Omega1 = 0, Omega3 = 0, Omega4 = 0;

  double Omega2() const { return Omega1 + Omega3 - Omega4; }
  Detunings detunings() const { return {Omega1, Omega2(), Omega3, Omega4}; }
};

// Ordinary MHz (caption units) to internal angular units and back.
constexpr double from_mhz(double mhz) { return 2 * phys::pi * mhz; }
constexpr double to_mhz(double internal) { return internal / (2 * phys::pi); }

double thermal_speed(const SchemeParams& p);
// Doppler FWHM of beam j (0..3) in GHz.
double doppler_fwhm(const SchemeParams& p, int beam);
// Doppler FWHM of the two-photon Raman l-n transition (k1 - k2) in GHz.
double raman_doppler_fwhm(const SchemeParams& p);
// Homogeneous FWHM of the Raman transition 2*Gamma_ln/2pi in MHz.
double raman_homogeneous_fwhm(const SchemeParams& p);
// Energy of each level relative to l in joules, derived from the wavelengths.
std::array<double, 4> level_energies(const SchemeParams& p);
double boltzmann_fraction(const SchemeParams& p, Level upper, Level lower);

// Detunings seen by molecules moving with velocity v (m/s) along the beam axis.
Detunings shifted(const SchemeParams& p, const FieldState& f, double v);

double frequency_mismatch(const SchemeParams& p);

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};
std::vector<Check> check(const SchemeParams& p);
// Throws a config error naming the first failing check.
void validate(const SchemeParams& p);

SchemeParams na2_hinze();

}  // namespace dlam
