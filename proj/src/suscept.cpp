#include "dlam/suscept.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "dlam/error.hpp"

namespace dlam {

namespace {

const cplx I{0, 1};

cplx normalized(cplx s, double Gam, double dn) { return dn != 0 ? s * Gam / (I * dn) : cplx{}; }

double beam_dn(const std::array<double, 4>& n, int j) {
  switch (j) {
    case 0: return n[0] - n[1];
    case 1: return n[2] - n[1];
    case 2: return n[2] - n[3];
    default: return n[0] - n[3];
  }
}

}  // namespace

Coupling Coupling::homogeneous(const SchemeParams& p) {
  auto n = zero_field_populations(p);
  double dn4 = beam_dn(n, 3);
  if (dn4 <= 0) fail(ErrorKind::config, "zero-field probe transition is not absorbing (dn4 <= 0)");
  return from_anchor(p, p.coh.lm / (2 * dn4));
}

Coupling Coupling::from_anchor(const SchemeParams& p, double K4) {
  Coupling c;
  if (p.equal_dipole) {
    for (int j = 0; j < kBeams; ++j) c.K[j] = K4 * p.k(j) / p.k(3);
    return c;
  }
  auto n = zero_field_populations(p);
  double dn4 = beam_dn(n, 3);
  for (int j = 0; j < kBeams; ++j) {
    double dn = beam_dn(n, j);
    if (dn == 0)
      fail(ErrorKind::config, "alpha0 given for a transition with no zero-field population difference");
    c.K[j] = K4 * (p.alpha0[j] / p.alpha0[3]) * (p.coh.beam(j) * dn4) / (p.coh.lm * dn);
  }
  return c;
}

Response& Response::operator+=(const Response& o) {
  for (int j = 0; j < kBeams; ++j) {
    s[j] += o.s[j];
    chi_norm[j] += o.chi_norm[j];
  }
  x2 += o.x2;
  x4 += o.x4;
  fwm2 += o.fwm2;
  fwm4 += o.fwm4;
  return *this;
}

Response Response::operator*(double w) const {
  Response r = *this;
  for (int j = 0; j < kBeams; ++j) {
    r.s[j] *= w;
    r.chi_norm[j] *= w;
  }
  r.x2 *= w;
  r.x4 *= w;
  r.fwm2 *= w;
  r.fwm4 *= w;
  return r;
}

Response response(const SchemeParams& p, const DmSolution& dm, const Detunings& d) {
  auto P = ResonanceDenominators::make(p.coh, d);
  Response r;
  r.s = {I * dm.dr[0] / P.P1, I * dm.R2 / P.P2, I * dm.dr[2] / P.P3, I * dm.R4 / P.P4};
  r.x2 = dm.x2;
  r.x4 = dm.x4;
  for (int j = 0; j < kBeams; ++j) r.chi_norm[j] = normalized(r.s[j], p.coh.beam(j), dm.dn[j]);
  r.fwm2 = normalized(dm.x2, p.coh.ng, dm.dn[1]);
  r.fwm4 = normalized(dm.x4, p.coh.lm, dm.dn[3]);
  return r;
}

SusceptibilitySet assemble(const Response& r, const Coupling& k, const FieldState& f) {
  SusceptibilitySet s;
  s.raw = r;
  s.chi_norm = r.chi_norm;
  s.chi_fwm_2 = r.fwm2;
  s.chi_fwm_4 = r.fwm4;
  for (int j = 0; j < kBeams; ++j) s.sigma[j] = k.K[j] * r.s[j];
  const cplx g13 = f.G[0] * f.G[2];
  s.gamma_4 = k.K[3] * r.x4 * g13;
  s.gamma_2 = k.K[1] * r.x2 * g13;
  return s;
}

SusceptibilitySet chi_all(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                          double v, const Coupling& k) {
  return assemble(response(p, dm, shifted(p, f, v)), k, f);
}

SusceptibilitySet chi_all(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                          double v) {
  return chi_all(p, f, dm, v, Coupling::homogeneous(p));
}

std::pair<cplx, cplx> chi_v_scheme_forms(const SchemeParams& p, const FieldState& f,
                                         const DmSolution& dm, double v) {
  if (f.G[2] != cplx{}) fail(ErrorKind::misuse, "chi_v_scheme requires G3 = 0");
  auto P = ResonanceDenominators::make(p.coh, shifted(p, f, v));
  const double G1 = std::norm(f.G[0]);
  const double dr1 = dm.dr[0], dr4 = dm.dr[3], dn4 = dm.dn[3], G4 = p.coh.lm;
  const cplx g1 = G1 / (P.P41 * std::conj(P.P1));
  const cplx g4 = G1 / (P.P41 * P.P4);
  cplx a = G4 / P.P4 * (dr4 - g1 * dr1) / (dn4 * (1.0 + g4));
  cplx b = G4 / dn4 * (dr4 * P.P41 - dr1 * G1 / std::conj(P.P1)) / (P.P41 * P.P4 + G1);
  return {a, b};
}

cplx chi_v_scheme(const SchemeParams& p, const FieldState& f, const DmSolution& dm, double v) {
  return chi_v_scheme_forms(p, f, dm, v).first;
}

std::pair<cplx, cplx> chi_lambda_scheme_forms(const SchemeParams& p, const FieldState& f,
                                              const DmSolution& dm, double v) {
  if (f.G[2] != cplx{}) fail(ErrorKind::misuse, "chi_lambda_scheme requires G3 = 0");
  auto P = ResonanceDenominators::make(p.coh, shifted(p, f, v));
  const double G1 = std::norm(f.G[0]);
  const double dr1 = dm.dr[0], dr2 = dm.dr[1], dn2 = dm.dn[1], G2 = p.coh.ng;
  const cplx P12c = std::conj(P.P12), P1c = std::conj(P.P1);
  const cplx Pd = p.stokes_alt_denominator ? P.P1 : P.P2;
  const cplx g3 = G1 / (P12c * P1c);
  const cplx g2 = G1 / (P12c * Pd);
  cplx a = G2 / P.P2 * (dr2 - g3 * dr1) / (dn2 * (1.0 + g2));
  cplx b = G2 / dn2 * (dr2 * P12c - dr1 * G1 / P1c) / (P.P2 * (P12c + G1 / Pd));
  return {a, b};
}

cplx chi_lambda_scheme(const SchemeParams& p, const FieldState& f, const DmSolution& dm,
                       double v) {
  return chi_lambda_scheme_forms(p, f, dm, v).first;
}

double raman_limit(const SchemeParams& p, const FieldState& f, const DmSolution& dm) {
  if (f.G[2] != cplx{}) fail(ErrorKind::misuse, "raman_limit requires G3 = 0");
  const double G4 = p.coh.lm, G14 = p.coh.gm;
  const double wide = 10 * std::max(p.coh.lg, p.coh.lm);
  if (std::abs(f.Omega4) < wide || std::abs(f.Omega1) < wide)
    fail(ErrorKind::misuse, "raman_limit requires |Omega1|, |Omega4| >= 10 max(Gamma_lg, Gamma_lm)");
  auto P = ResonanceDenominators::make(p.coh, f.detunings());
  const double G1 = std::norm(f.G[0]);
  const double g1 = std::abs(G1 / (P.P41 * std::conj(P.P1)));
  const double g4 = std::abs(G1 / (P.P41 * P.P4));
  if (g1 > 0.1 || g4 > 0.1) fail(ErrorKind::misuse, "raman_limit requires |g1|, |g4| <= 0.1");
  const double O4 = f.Omega4, O1 = f.Omega1;
  const double dr1 = dm.dr[0], dr4 = dm.dr[3], dn4 = dm.dn[3];
  return G4 * G4 * dr4 / (O4 * O4 * dn4) -
         G4 * G14 / (G14 * G14 + (O4 - O1) * (O4 - O1)) * G1 * (dr1 - dr4) / (O4 * O4 * dn4);
}

double awi_ratio(const SchemeParams& p, const FieldState& f, const DmSolution& dm) {
  return dm.dr[0] * std::norm(f.G[0]) / (p.coh.gm * p.coh.lg * dm.dr[3]);
}

IntegratedAbsorption integrated_absorption(const SchemeParams& p, const FieldState& f) {
  using boost::math::quadrature::gauss_kronrod;
  const DmSolution pops = populations_at(p, f, f.detunings());
  auto chi = [&](double O4) {
    FieldState g = f;
    g.Omega4 = O4;
    auto d = g.detunings();
    auto dm = coherences_at(p, g, pops, d);
    return response(p, dm, d).chi_norm[3];
  };

  // Pair points symmetrically about the two-photon center so the 1/Omega tails of Im cancel.
  const double c = 0;
  const double scale = std::max({p.coh.lm, std::abs(f.G[0]), std::abs(f.G[2]), std::abs(f.Omega1),
                                 std::abs(f.Omega3), 1.0});
  auto paired = [&](double x) { return chi(c + x) + chi(c - x); };
  auto theta_of = [&](double x) { return std::atan(x / scale); };

  // Break points at the resonance positions the drives can create.
  std::vector<double> xs{0};
  const double feats[] = {f.Omega1, f.Omega1 + f.Omega3, f.Omega3, std::abs(f.G[0]),
                          std::abs(f.G[2]), std::abs(f.G[0]) + std::abs(f.G[2])};
  for (double a : feats)
    for (double s : {std::abs(a), std::abs(a) + std::abs(f.Omega1), std::abs(a) + std::abs(f.Omega3)})
      if (s > 0) xs.push_back(s);
  std::vector<double> ths;
  for (double x : xs) ths.push_back(theta_of(x));
  ths.push_back(phys::pi / 2);
  std::sort(ths.begin(), ths.end());
  ths.erase(std::unique(ths.begin(), ths.end(), [](double a, double b) { return b - a < 1e-12; }),
            ths.end());

  IntegratedAbsorption out;
  for (int part = 0; part < 2; ++part) {
    auto integrand = [&](double th) {
      if (th >= phys::pi / 2) {
        // Paired tail 2 Gamma^2 dr4 / (dn4 x^2) times the Jacobian.
        return part == 0 ? 2 * p.coh.lm * p.coh.lm * pops.dr[3] / (pops.dn[3] * scale) : 0.0;
      }
      double t = std::tan(th), sec2 = 1 + t * t;
      cplx z = paired(scale * t) * scale * sec2;
      return part == 0 ? z.real() : z.imag();
    };
    double total = 0, err_total = 0;
    for (size_t i = 0; i + 1 < ths.size(); ++i) {
      double err = 0;
      total += gauss_kronrod<double, 31>::integrate(integrand, ths[i], ths[i + 1], 12, 1e-10, &err);
      err_total += err;
    }
    (part == 0 ? out.re : out.im) = total;
    out.error_estimate += err_total;
  }
  out.expected = phys::pi * p.coh.lm * pops.dr[3] / pops.dn[3];
  return out;
}

}  // namespace dlam
