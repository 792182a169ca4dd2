// Acceptance checks. One PASS/FAIL line per criterion; tolerances are fixed here.
//
//   dlam_acceptance [--known-fail N]... [N]...
//
// With criterion numbers only those run. A criterion listed with --known-fail still prints its
// verdict but does not make the exit status nonzero.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dlam/config.hpp"
#include "dlam/densmat.hpp"
#include "dlam/doppler.hpp"
#include "dlam/error.hpp"
#include "dlam/harness.hpp"
#include "dlam/propagate.hpp"
#include "dlam/suscept.hpp"

using namespace dlam;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

bool within(double x, double target, double rel) { return std::abs(x - target) <= rel * target; }

// 1. Probe Doppler width 1.7 GHz within 2 %.
Verdict doppler_width() {
  double w = doppler_fwhm(na2_hinze(), 3);
  return {within(w, 1.7, 0.02), fmt("FWHM %.4f GHz (target 1.7 +- 2%%)", w)};
}

// 2. Raman Doppler width 170 MHz and homogeneous Raman width 6.4 MHz, each within 2 %.
Verdict raman_widths() {
  auto p = na2_hinze();
  double d = raman_doppler_fwhm(p) * 1e3, h = raman_homogeneous_fwhm(p);
  return {within(d, 170, 0.02) && within(h, 6.4, 0.02),
          fmt("Doppler %.2f MHz (170 +- 2%%), homogeneous %.3f MHz (6.4 +- 2%%)", d, h)};
}

// 3. Boltzmann fraction of n equal to 1.4 % within 0.1 percentage points.
Verdict boltzmann() {
  double b = 100 * boltzmann_fraction(na2_hinze(), Level::n, Level::l);
  return {std::abs(b - 1.4) <= 0.1, fmt("%.4f %% (target 1.4 +- 0.1)", b)};
}

SchemeParams random_scheme(std::mt19937_64& rng, Topology top) {
  std::uniform_real_distribution<double> R(1, 200), U(0, 1);
  SchemeParams p;
  p.topology = top;
  p.width = {R(rng), R(rng), R(rng), R(rng)};
  p.gamma = {U(rng) * p.width.g / 2, U(rng) * p.width.g / 2, U(rng) * p.width.m / 2,
             U(rng) * p.width.m / 2};
  p.coh = {R(rng), R(rng), R(rng), R(rng), R(rng), R(rng)};
  if (top == Topology::closed)
    p.pump = {0, R(rng) * U(rng), R(rng) * U(rng), R(rng) * U(rng)};
  else
    p.pump = {R(rng), R(rng), R(rng), R(rng)};
  return p;
}

FieldState random_fields(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> G(0, 2000), O(-5000, 5000), ph(-M_PI, M_PI);
  FieldState f;
  f.G = {std::polar(G(rng), ph(rng)), std::polar(1.0, ph(rng)), std::polar(G(rng), ph(rng)),
         std::polar(1.0, ph(rng))};
  f.Omega1 = O(rng);
  f.Omega3 = O(rng);
  f.Omega4 = O(rng);
  return f;
}

double worst_mismatch(const DmSolution& a, const DmSolution& b) {
  double w = 0;
  auto upd = [&](cplx x, cplx y) {
    double s = std::max(std::abs(x), std::abs(y));
    if (s > 1e-250) w = std::max(w, std::abs(x - y) / s);
  };
  for (int j = 0; j < 4; ++j) upd(a.pop[j], b.pop[j]);
  for (auto [x, y] : {std::pair{a.r1, b.r1}, {a.r3, b.r3}, {a.r2, b.r2}, {a.r4, b.r4},
                      {a.r2t, b.r2t}, {a.r4t, b.r4t}, {a.r12, b.r12}, {a.r43, b.r43},
                      {a.r32, b.r32}, {a.r41, b.r41}})
    upd(x, y);
  return w;
}

// 4. Closed forms against the master-equation solve, 1000 draws per topology, 1e-10 relative.
Verdict oracle() {
  const int draws = 1000;
  double worst[2] = {0, 0};
  for (int t = 0; t < 2; ++t) {
    auto top = t ? Topology::open : Topology::closed;
    std::mt19937_64 rng(1000 + t);
    for (int i = 0; i < draws; ++i) {
      auto p = random_scheme(rng, top);
      auto f = random_fields(rng);
      worst[t] = std::max(worst[t], worst_mismatch(solve(p, f, 0), solve_oracle(p, f, 0)));
    }
  }
  bool ok = worst[0] < 1e-10 && worst[1] < 1e-10;
  return {ok, fmt("%d draws per topology; worst relative deviation closed %.2e, open %.2e "
                  "(limit 1e-10)",
                  draws, worst[0], worst[1])};
}

// 5. Frozen-coefficient integration against the parametric closed form, Z in [0, 30], 1e-8.
Verdict analytic_propagation() {
  auto p = na2_hinze();
  auto grid = VelocityGrid::at_rest(p);
  auto k = Coupling::homogeneous(p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<std::pair<OpaCoeffs, cplx>> cases;
  for (int i = 0; i < 20; ++i)
    cases.push_back({OpaCoeffs{cplx(U(rng), 0.5 + 0.5 * U(rng)), cplx(U(rng), 0.5 + 0.5 * U(rng)),
                               cplx(U(rng), U(rng)), cplx(U(rng), U(rng))},
                     cplx(U(rng), U(rng))});
  // R = 0: gamma2* gamma4 = -beta^2.
  OpaCoeffs deg{cplx(0.3, -0.2), cplx(-0.1, 0.6), 0, 1};
  deg.gamma2 = std::conj(-deg.beta() * deg.beta());
  cases.push_back({deg, 0});
  cases.push_back({deg, cplx(0.5, -0.2)});

  double worst = 0, worst_deg = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [c, G20] = cases[i];
    double& slot = i + 2 >= cases.size() ? worst_deg : worst;
    PropagationOptions opt;
    opt.zmax = 30;
    opt.step = 0.005;
    opt.sample = 0.5;
    WaveCoefficients w;
    w.sigma = {0, c.sigma2, 0, c.sigma4};
    w.gamma2 = c.gamma2;
    w.gamma4 = c.gamma4;
    opt.fixed = w;
    FieldState f;
    f.G = {1, G20, 1, 1};
    auto t = integrate(p, f, grid, k, opt);
    for (const auto& r : t.rows) {
      auto [G2c, G4] = analytic_opa(G20, 1, c, r.Z);
      double s = std::max(std::abs(G4), std::abs(G2c));
      double e = std::max(std::abs(r.G[3] - G4), std::abs(std::conj(r.G[1]) - G2c)) / s;
      slot = std::max(slot, e);
    }
  }
  return {worst < 1e-8 && worst_deg < 1e-8,
          fmt("worst relative deviation %.2e generic, %.2e at R = 0 (limit 1e-8)", worst, worst_deg)};
}

// 6. Integrated normalized probe absorption, 10 random drive settings, 1e-3 relative.
Verdict sum_rule() {
  auto p = na2_hinze();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> G(0, 1500), O(-2500, 2500);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    FieldState f;
    f.G = {from_mhz(G(rng)), 1e-3, from_mhz(G(rng)), 1e-3};
    f.Omega1 = from_mhz(O(rng));
    f.Omega3 = from_mhz(O(rng));
    auto r = integrated_absorption(p, f);
    worst = std::max(worst, std::abs(r.re - r.expected) / std::abs(r.expected));
  }
  return {worst < 1e-3, fmt("worst relative deviation %.2e over 10 drive settings (limit 1e-3)", worst)};
}

// Largest D / |dN4| along a Manley-Rowe trace, skipping Z = 0.
double mr_ratio(const std::string& preset) {
  auto c = load_preset(preset);
  auto t = run_manley_rowe(c);
  const auto d4 = t.column("dN4"), dd = t.column("D");
  double worst = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (t.rows[i][d4] != 0) worst = std::max(worst, t.rows[i][dd] / std::abs(t.rows[i][d4]));
  return worst;
}

// 7. Photon-number defect below 5 % detuned, above 50 % somewhere at full resonance.
Verdict manley_rowe() {
  double detuned = mr_ratio("fig10b"), resonant = mr_ratio("fig10a");
  return {detuned < 0.05 && resonant > 0.5,
          fmt("max D/|dN4|: detuned %.3g (limit 0.05), resonant %.3g (needs > 0.5)", detuned,
              resonant)};
}

// 8. Detuned probe reaches unit transmission at Z = 4 +- 2 and stays above; resonant probe never
//    exceeds unit transmission up to Z = 30.
Verdict transparency_then_gain() {
  auto c = load_preset("fig9a");
  auto t = run_propagation(c);
  const auto iz = t.column("Z"), iT = t.column("T4");
  double tmin = INFINITY, zcross = NAN;
  bool above_after = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    double T0 = t.rows[i - 1][iT], T1 = t.rows[i][iT];
    tmin = std::min(tmin, T1);
    if (std::isnan(zcross) && T0 < 1 && T1 >= 1) {
      double z0 = t.rows[i - 1][iz], z1 = t.rows[i][iz];
      zcross = z0 + (1 - T0) * (z1 - z0) / (T1 - T0);
    } else if (!std::isnan(zcross) && T1 <= 1) {
      above_after = false;
    }
  }
  const double tend = t.rows.back()[iT], zend = t.rows.back()[iz];

  auto r = load_preset("fig9a_resonant");
  if (r.prop.zmax < 30) fail(ErrorKind::config, "fig9a_resonant must reach Z = 30");
  auto u = run_propagation(r);
  const auto uz = u.column("Z"), uT = u.column("T4");
  double rmax = 0;
  for (const auto& row : u.rows)
    if (row[uz] > 0 && row[uz] <= 30) rmax = std::max(rmax, row[uT]);

  bool ok = tmin < 1 && !std::isnan(zcross) && std::abs(zcross - 4) <= 2 && above_after &&
            rmax <= 1;
  return {ok, fmt("detuned: min T %.3g, crosses 1 at Z = %.3g (4 +- 2), T = %.3g at Z = %.3g%s; "
                  "resonant: max T %.3g for 0 < Z <= 30",
                  tmin, zcross, tend, zend, above_after ? "" : ", falls back below 1", rmax)};
}

// 9. Minimum transmission at Z = 2 in the probe-detuning sweep below 1e-2.
Verdict switching_depth() {
  auto c = load_preset("fig9b_omega4");
  auto t = run_switching(c);
  double tmin = INFINITY, at = 0;
  for (const auto& r : t.rows)
    if (r[1] < tmin) {
      tmin = r[1];
      at = r[0];
    }
  return {tmin < 1e-2, fmt("min T %.3g at Omega4 = %g MHz, Z = %g (limit 1e-2)", tmin, at,
                           c.switching.z)};
}

// 10. Non-monotonic width of the induced probe resonance with the minimum at G1 = 1000 MHz,
//     widths within 30 % of (98, 17.6, 133) MHz, and a broad central range of velocity classes
//     carrying the narrowed resonance.
//
// Central participation W: length of the part of |v| < u where the envelope-removed alpha4(v)
// is at least half its maximum over |v| < u, with the probe at the resonance center. A single
// resonant velocity group is at most ~0.03 u wide, so W >= 0.5 u means many classes respond
// together. W at G1 = 1000 must also exceed W at G1 = 1500 and 500.
Verdict narrowing() {
  const char* presets[] = {"fig7_g1500", "fig7_g1000", "fig7_g500"};
  const double target[] = {98, 17.6, 133};
  double width[3], spread[3];
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    auto c = load_preset(presets[i]);
    auto t = run_spectrum(c);
    std::vector<double> x, y;
    for (const auto& r : t.rows) {
      x.push_back(r[0]);
      y.push_back(r[1]);
    }
    auto pk = find_peak(x, y, c.scan.peak_lo, c.scan.peak_hi);
    width[i] = pk.found ? pk.fwhm : NAN;
    ok = ok && pk.found && pk.fwhm > 0 && within(pk.fwhm, target[i], 0.3);

    c.fields.Omega4 = c.from_file_units(pk.center);
    c.velocity.quantity = ProfileQuantity::alpha4;
    c.velocity.remove_envelope = true;
    auto v = run_velocity(c);
    double top = 0;
    for (const auto& r : v.rows)
      if (std::abs(r[0]) < 1) top = std::max(top, r[2]);
    double dx = v.rows[1][0] - v.rows[0][0], w = 0;
    for (const auto& r : v.rows)
      if (std::abs(r[0]) < 1 && r[2] >= top / 2) w += dx;
    spread[i] = w;
  }
  ok = ok && width[1] < width[0] && width[1] < width[2];
  ok = ok && spread[1] >= 0.5 && spread[1] > spread[0] && spread[1] > spread[2];

  return {ok, fmt("FWHM %.1f / %.1f / %.1f MHz at G1 = 1500 / 1000 / 500 (targets 98 / 17.6 / 133 "
                  "+- 30%%); central participation W %.2f / %.2f / %.2f u (G1 = 1000 needs >= 0.5 "
                  "and the largest)",
                  width[0], width[1], width[2], spread[0], spread[1], spread[2])};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "probe Doppler width", doppler_width},
      {2, "Raman Doppler and homogeneous widths", raman_widths},
      {3, "Boltzmann fraction of n", boltzmann},
      {4, "closed forms vs master equation", oracle},
      {5, "frozen propagation vs closed form", analytic_propagation},
      {6, "integrated absorption sum rule", sum_rule},
      {7, "Manley-Rowe dichotomy", manley_rowe},
      {8, "transparency then gain", transparency_then_gain},
      {9, "switching depth", switching_depth},
      {10, "sub-Doppler narrowing", narrowing},
  };
  std::set<int> only, known;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--known-fail" && i + 1 < argc) known.insert(std::atoi(argv[++i]));
    else only.insert(std::atoi(a.c_str()));
  }

  int unexpected = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s: %s [%.1fs]%s\n", c.id, v.pass ? "PASS" : "FAIL", c.name,
                v.detail.c_str(), secs, !v.pass && known.count(c.id) ? " (known)" : "");
    std::fflush(stdout);
    if (!v.pass && !known.count(c.id)) ++unexpected;
  }
  return unexpected ? 1 : 0;
}
