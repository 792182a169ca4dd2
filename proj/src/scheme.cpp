#include "dlam/scheme.hpp"

#include <cmath>
#include <sstream>

#include "dlam/error.hpp"

namespace dlam {

double CoherenceWidths::beam(int j) const {
  switch (j) {
    case 0: return lg;
    case 1: return ng;
    case 2: return nm;
    case 3: return lm;
  }
  fail(ErrorKind::misuse, "beam index out of range");
}

double SchemeParams::k(int j) const {
  if (j < 0 || j >= kBeams) fail(ErrorKind::misuse, "beam index out of range");
  return 2 * phys::pi / (lambda_nm[j] * 1e-9);
}

double thermal_speed(const SchemeParams& p) {
  if (!(p.temperature > 0)) fail(ErrorKind::config, "temperature must be positive");
  if (!(p.molar_mass > 0)) fail(ErrorKind::config, "molar mass must be positive");
  return std::sqrt(2 * phys::kB * p.temperature / (p.molar_mass * phys::amu));
}

static double fwhm_ghz(double k, double u) {
  return 2 * std::sqrt(std::log(2.0)) * k * u / (2 * phys::pi) * 1e-9;
}

double doppler_fwhm(const SchemeParams& p, int beam) {
  return fwhm_ghz(p.k(beam), thermal_speed(p));
}

double raman_doppler_fwhm(const SchemeParams& p) {
  return fwhm_ghz(std::abs(p.k(0) - p.k(1)), thermal_speed(p));
}

double raman_homogeneous_fwhm(const SchemeParams& p) { return 2 * p.coh.ln / (2 * phys::pi); }

std::array<double, 4> level_energies(const SchemeParams& p) {
  auto e = [&](int j) { return phys::h * phys::c / (p.lambda_nm[j] * 1e-9); };
  // l -> g by beam 1, g -> n down by beam 2, n -> m by beam 3.
  double El = 0, Eg = e(0), En = Eg - e(1), Em = En + e(2);
  return {El, Eg, En, Em};
}

double boltzmann_fraction(const SchemeParams& p, Level upper, Level lower) {
  auto E = level_energies(p);
  double dE = E[static_cast<int>(upper)] - E[static_cast<int>(lower)];
  if (dE < 0) fail(ErrorKind::misuse, "boltzmann_fraction: upper level lies below lower level");
  if (std::isinf(p.temperature)) return 1.0;
  if (!(p.temperature > 0)) fail(ErrorKind::config, "temperature must be positive");
  return std::exp(-dE / (phys::kB * p.temperature));
}

Detunings shifted(const SchemeParams& p, const FieldState& f, double v) {
  auto sh = [&](int j) { return p.propagation_sign[j] * p.k(j) * v * 1e-6; };
  Detunings d;
  d.O1 = f.Omega1 - sh(0);
  d.O3 = f.Omega3 - sh(2);
  d.O4 = f.Omega4 - sh(3);
  d.O2 = d.O1 + d.O3 - d.O4;
  return d;
}

double frequency_mismatch(const SchemeParams& p) {
  auto inv = [&](int j) { return 1.0 / p.lambda_nm[j]; };
  return std::abs(inv(3) + inv(1) - inv(0) - inv(2)) * p.lambda_nm[3];
}

std::vector<Check> check(const SchemeParams& p) {
  std::vector<Check> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  auto num = [](double x) {
    std::ostringstream s;
    s << x;
    return s.str();
  };

  bool lam_ok = true;
  for (double l : p.lambda_nm) lam_ok = lam_ok && l > 0 && std::isfinite(l);
  add("wavelengths positive", lam_ok, "");
  if (lam_ok) {
    double r = frequency_mismatch(p);
    add("frequency matching", r < 5e-4, "residual " + num(r) + " (limit 5e-4)");
  }

  struct Rate { const char* name; double value; };
  const Rate rates[] = {
      {"gamma_gl", p.gamma.gl}, {"gamma_gn", p.gamma.gn}, {"gamma_mn", p.gamma.mn},
      {"gamma_ml", p.gamma.ml}, {"Gamma_l", p.width.l},   {"Gamma_g", p.width.g},
      {"Gamma_n", p.width.n},   {"Gamma_m", p.width.m},   {"Gamma_lg", p.coh.lg},
      {"Gamma_ng", p.coh.ng},   {"Gamma_nm", p.coh.nm},   {"Gamma_lm", p.coh.lm},
      {"Gamma_ln", p.coh.ln},   {"Gamma_gm", p.coh.gm}};
  for (const auto& r : rates)
    add(std::string(r.name) + " positive", r.value > 0 && std::isfinite(r.value), num(r.value));

  add("gamma_gl + gamma_gn <= Gamma_g", p.gamma.gl + p.gamma.gn <= p.width.g,
      num(p.gamma.gl + p.gamma.gn) + " vs " + num(p.width.g));
  add("gamma_mn + gamma_ml <= Gamma_m", p.gamma.mn + p.gamma.ml <= p.width.m,
      num(p.gamma.mn + p.gamma.ml) + " vs " + num(p.width.m));

  bool pump_ok = true;
  for (double q : p.pump) pump_ok = pump_ok && q >= 0 && std::isfinite(q);
  add("pump rates non-negative", pump_ok, "");
  if (p.topology == Topology::closed)
    add("closed pumps feed from l", p.pump[0] == 0, "w_l must be 0, got " + num(p.pump[0]));
  else
    add("open occupancy in [0,1]", p.occupancy >= 0 && p.occupancy <= 1, num(p.occupancy));

  add("temperature positive", p.temperature > 0, num(p.temperature) + " K");
  add("molar mass positive", p.molar_mass > 0, num(p.molar_mass) + " amu");

  bool a_ok = true;
  for (double a : p.alpha0) a_ok = a_ok && a > 0 && std::isfinite(a);
  add("alpha0 positive", p.equal_dipole || a_ok, "");
  bool s_ok = true;
  for (int s : p.propagation_sign) s_ok = s_ok && (s == 1 || s == -1);
  add("propagation signs are +-1", s_ok, "");
  return out;
}

void validate(const SchemeParams& p) {
  for (const auto& c : check(p))
    if (!c.ok) fail(ErrorKind::config, "check failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

SchemeParams na2_hinze() {
  SchemeParams p;
  p.topology = Topology::closed;
  double bf = boltzmann_fraction(p, Level::n, Level::l);
  // Thermal population of n relaxing at Gamma_n, fed from l.
  p.pump = {0, 0, bf * p.width.n, 0};
  return p;
}

}  // namespace dlam
