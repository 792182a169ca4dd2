#include "dlam/densmat.hpp"

#include <cmath>

#include "dlam/error.hpp"

namespace dlam {

namespace {

const cplx I{0, 1};

double sq(double x) { return x * x; }

void fill_deltas(DmSolution& s) {
  const auto& r = s.pop;
  s.dr = {r[0] - r[1], r[2] - r[1], r[2] - r[3], r[0] - r[3]};
  const auto& n = s.zero_field;
  s.dn = {n[0] - n[1], n[2] - n[1], n[2] - n[3], n[0] - n[3]};
}

// Two-level saturation rate 2|G|^2 Gamma / |P|^2.
double sat_rate(cplx G, double Gam, cplx P) { return 2 * std::norm(G) * Gam / std::norm(P); }

std::array<double, 4> closed_steady(const SchemeParams& p, double s1, double s3) {
  const auto& w = p.pump;
  const auto& W = p.width;
  const auto& y = p.gamma;
  double rl = 1.0;
  double rg = (w[1] + s1) / (W.g + s1) * rl;
  double det = W.m * W.n + s3 * (W.m + W.n - y.mn);
  double feed_n = w[2] * rl + y.gn * rg;
  double rn = ((W.m + s3) * feed_n + (s3 + y.mn) * w[3] * rl) / det;
  double rm = (w[3] * rl * (W.n + s3) + s3 * feed_n) / det;
  double sum = rl + rg + rn + rm;
  return {rl / sum, rg / sum, rn / sum, rm / sum};
}

}  // namespace

ResonanceDenominators ResonanceDenominators::make(const CoherenceWidths& c, const Detunings& d) {
  ResonanceDenominators P;
  P.P1 = {c.lg, d.O1};
  P.P2 = {c.ng, d.O2};
  P.P3 = {c.nm, d.O3};
  P.P4 = {c.lm, d.O4};
  P.P12 = {c.ln, d.O1 - d.O2};
  P.P43 = {c.ln, d.O4 - d.O3};
  P.P32 = {c.gm, d.O3 - d.O2};
  P.P41 = {c.gm, d.O4 - d.O1};
  P.d2 = {c.ng, d.O1 + d.O3 - d.O4};
  P.d4 = {c.lm, d.O1 - d.O2 + d.O3};
  return P;
}

SaturationFactors SaturationFactors::make(const SchemeParams& p, const FieldState& f,
                                          const ResonanceDenominators& P) {
  SaturationFactors s;
  const double G1 = std::norm(f.G[0]), G3 = std::norm(f.G[2]);
  auto cj = [](cplx z) { return std::conj(z); };
  s.g[1] = G1 / (P.P41 * cj(P.P1));
  s.g[2] = G1 / (cj(P.P12) * P.P2);
  s.g[3] = G1 / (cj(P.P12) * cj(P.P1));
  s.g[4] = G1 / (P.P41 * P.P4);
  s.g[5] = G1 / (P.P43 * cj(P.d2));
  s.g[6] = G1 / (P.P41 * cj(P.d2));
  s.g[7] = G1 / (cj(P.P32) * cj(P.d4));
  s.g[8] = G1 / (cj(P.P12) * cj(P.d4));
  s.v[1] = G3 / (P.P43 * cj(P.P3));
  s.v[2] = G3 / (cj(P.P32) * P.P2);
  s.v[3] = G3 / (cj(P.P32) * cj(P.P3));
  s.v[4] = G3 / (P.P43 * P.P4);
  s.v[5] = G3 / (P.P41 * cj(P.d2));
  s.v[6] = G3 / (P.P43 * cj(P.d2));
  s.v[7] = G3 / (cj(P.P12) * cj(P.d4));
  s.v[8] = G3 / (cj(P.P32) * cj(P.d4));

  const auto& W = p.width;
  const auto& y = p.gamma;
  const double Glg = p.coh.lg, Gnm = p.coh.nm;
  if (p.topology == Topology::open) {
    double c1 = W.l + W.g - y.gl, c3 = W.m + W.n - y.mn;
    s.ae1_0 = 2 * c1 * G1 / (W.l * W.g * Glg);
    s.ae3_0 = 2 * c3 * G3 / (W.m * W.n * Gnm);
    s.a1 = y.gn * W.l / (W.n * c1);
    s.a2 = s.a1 * (W.n - y.gn) / y.gn;
    s.a3 = (W.g - y.gl) / c1;
    s.b1 = y.ml * W.n / (W.l * c3);
    s.b2 = s.b1 * W.l * (W.m - y.mn) / (y.ml * W.n);
    s.b3 = s.b1 * W.l * (W.l - y.ml) / y.ml;
  } else {
    s.ae1_0 = 2 * G1 / (W.g * Glg);
    s.ae3_0 = 2 * G3 * (W.m + W.n - y.mn) / (W.m * W.n * Gnm);
    s.b = W.n / (W.m + W.n - y.mn);
  }
  s.ae1 = s.ae1_0 * sq(Glg) / std::norm(P.P1);
  s.ae3 = s.ae3_0 * sq(Gnm) / std::norm(P.P3);
  return s;
}

std::array<double, 4> zero_field_populations(const SchemeParams& p) {
  const auto& W = p.width;
  const auto& y = p.gamma;
  const auto& q = p.pump;
  if (p.topology == Topology::closed) return closed_steady(p, 0, 0);
  double nm = q[3] / W.m;
  double ng = q[1] / W.g;
  double nn = (q[2] + y.gn * ng + y.mn * nm) / W.n;
  double nl = (q[0] + y.gl * ng + y.ml * nm) / W.l;
  std::array<double, 4> n{nl, ng, nn, nm};
  if (p.occupancy > 0) {
    double sum = nl + ng + nn + nm;
    if (sum > 0)
      for (double& x : n) x *= p.occupancy / sum;
  }
  return n;
}

static SchemeParams scaled_open(const SchemeParams& p) {
  // Fold the occupancy normalization into the pump rates; populations are linear in q.
  if (p.occupancy <= 0) return p;
  SchemeParams s = p;
  s.occupancy = 0;
  auto n = zero_field_populations(s);
  double sum = n[0] + n[1] + n[2] + n[3];
  if (sum > 0)
    for (double& q : s.pump) q *= p.occupancy / sum;
  return s;
}

DmSolution populations_at(const SchemeParams& p0, const FieldState& f, const Detunings& d) {
  DmSolution s;
  if (p0.topology == Topology::closed) {
    auto P = ResonanceDenominators::make(p0.coh, d);
    double s1 = sat_rate(f.G[0], p0.coh.lg, P.P1);
    double s3 = sat_rate(f.G[2], p0.coh.nm, P.P3);
    s.zero_field = zero_field_populations(p0);
    s.pop = closed_steady(p0, s1, s3);
    fill_deltas(s);
    return s;
  }

  const SchemeParams p = scaled_open(p0);
  auto P = ResonanceDenominators::make(p.coh, d);
  auto sf = SaturationFactors::make(p, f, P);
  auto n = zero_field_populations(p);
  s.zero_field = n;
  double dn1 = n[0] - n[1], dn3 = n[2] - n[3];
  double e1 = sf.ae1, e3 = sf.ae3;
  double den = (1 + e1) * (1 + e3) - sf.a1 * e1 * sf.b1 * e3;
  if (!(std::abs(den) > 1e-300)) fail(ErrorKind::numerical, "singular saturation denominator (open)");
  double dr1 = ((1 + e3) * dn1 + sf.b1 * e3 * dn3) / den;
  double dr3 = ((1 + e1) * dn3 + sf.a1 * e1 * dn1) / den;
  double rm = n[3] + (1 - sf.b2) * e3 * dr3;
  double rg = n[1] + (1 - sf.a3) * e1 * dr1;
  double rn = n[2] - sf.b2 * e3 * dr3 + sf.a1 * e1 * dr1;
  double rl = n[0] - sf.a3 * e1 * dr1 + sf.b1 * e3 * dr3;
  s.pop = {rl, rg, rn, rm};
  fill_deltas(s);
  return s;
}

DmSolution populations_open(const SchemeParams& p, const FieldState& f, double v) {
  if (p.topology != Topology::open) fail(ErrorKind::misuse, "populations_open requires open topology");
  return populations_at(p, f, shifted(p, f, v));
}

DmSolution populations_closed(const SchemeParams& p, const FieldState& f, double v) {
  if (p.topology != Topology::closed)
    fail(ErrorKind::misuse, "populations_closed requires closed topology");
  return populations_at(p, f, shifted(p, f, v));
}

DmSolution populations_closed_printed(const SchemeParams& p, const FieldState& f, double v) {
  if (p.topology != Topology::closed)
    fail(ErrorKind::misuse, "populations_closed_printed requires closed topology");
  auto d = shifted(p, f, v);
  auto P = ResonanceDenominators::make(p.coh, d);
  auto sf = SaturationFactors::make(p, f, P);
  const auto& W = p.width;
  const auto& y = p.gamma;
  const auto& w = p.pump;
  double wn = w[2] + w[1] * y.gn / W.n + w[3] * y.mn / W.n;
  double nl = 1 / (1 + w[3] / W.m + w[1] / W.g + wn / W.n);
  double ng = nl * w[1] / W.g, nm = nl * w[3] / W.m, nn = nl * wn / W.n;
  double dn1 = nl - ng, dn3 = nn - nm;
  double e1 = sf.ae1, e3 = sf.ae3, b = sf.b;
  double X = dn3 * (1 + e1) + dn1 * y.gn * e1 / W.n;
  double beta = (1 + e3) * (1 - dn3 + 2 * (nl + nm) * e1) + (1 + 2 * b * e3) * X;
  if (!(std::abs(beta) > 1e-300)) fail(ErrorKind::numerical, "singular saturation denominator (closed)");
  DmSolution s;
  s.zero_field = {nl, ng, nn, nm};
  s.pop = {nl * (1 + e3) * (1 + e1) / beta, (1 + e3) * (nl * (1 + e1) - dn1) / beta,
           (nm * (1 + e3) * (1 + e1) + X * (1 + b * e3)) / beta,
           (nm * (1 + e3) * (1 + e1) + X * b * e3) / beta};
  fill_deltas(s);
  return s;
}

DmSolution populations(const SchemeParams& p, const FieldState& f, double v) {
  return populations_at(p, f, shifted(p, f, v));
}

DmSolution coherences_at(const SchemeParams& p, const FieldState& f, DmSolution s,
                         const Detunings& d) {
  auto P = ResonanceDenominators::make(p.coh, d);
  auto sf = SaturationFactors::make(p, f, P);
  const auto& g = sf.g;
  const auto& v = sf.v;
  auto cj = [](cplx z) { return std::conj(z); };
  const double dr1 = s.dr[0], dr2 = s.dr[1], dr3 = s.dr[2], dr4 = s.dr[3];

  s.R2 = (dr2 * (1.0 + g[7] + v[7]) - v[3] * (1.0 + v[7] - g[8]) * dr3 -
          g[3] * (1.0 + g[7] - v[8]) * dr1) /
         ((1.0 + g[2] + v[2]) + (g[7] + g[2] * (g[7] - v[8]) + v[7] + v[2] * (v[7] - g[8])));
  s.R4 = (dr4 * (1.0 + v[5] + g[5]) - g[1] * (1.0 + g[5] - v[6]) * dr1 -
          v[1] * (1.0 + v[5] - g[6]) * dr3) /
         ((1.0 + g[4] + v[4]) + (v[5] + v[4] * (v[5] - g[6]) + g[5] + g[4] * (g[5] - v[6])));

  s.x2 = -I *
         (dr1 / (P.P1 * cj(P.P41)) + dr3 / (P.P3 * cj(P.P43)) +
          cj(s.R4) / cj(P.P4) * (1.0 / cj(P.P41) + 1.0 / cj(P.P43))) /
         (P.d2 * (1.0 + cj(v[5]) + cj(g[5])));
  s.x4 = -I *
         (dr1 / (P.P1 * P.P12) + dr3 / (P.P3 * P.P32) +
          cj(s.R2) / cj(P.P2) * (1.0 / P.P12 + 1.0 / P.P32)) /
         (P.d4 * (1.0 + cj(v[7]) + cj(g[7])));

  const cplx G1 = f.G[0], G2 = f.G[1], G3 = f.G[2], G4 = f.G[3];
  s.r1 = I * G1 * dr1 / P.P1;
  s.r3 = I * G3 * dr3 / P.P3;
  s.r2 = I * G2 * s.R2 / P.P2;
  s.r4 = I * G4 * s.R4 / P.P4;
  s.r2t = s.x2 * G1 * G3 * cj(G4);
  s.r4t = s.x4 * G1 * G3 * cj(G2);
  s.r41 = (-I * cj(G1) * s.r4 + I * cj(s.r1) * G4 + I * G3 * cj(s.r2t)) / P.P41;
  s.r43 = (-I * G4 * cj(s.r3) + I * s.r4 * cj(G3) - I * G1 * cj(s.r2t)) / P.P43;
  s.r12 = (-I * G1 * cj(s.r2) + I * s.r1 * cj(G2) + I * s.r4t * cj(G3)) / P.P12;
  s.r32 = (-I * cj(G2) * s.r3 + I * cj(s.r2) * G3 - I * cj(G1) * s.r4t) / P.P32;
  s.has_coherences = true;
  return s;
}

DmSolution coherences(const SchemeParams& p, const FieldState& f, DmSolution pops, double v) {
  return coherences_at(p, f, std::move(pops), shifted(p, f, v));
}

DmSolution solve_at(const SchemeParams& p, const FieldState& f, const Detunings& d) {
  return coherences_at(p, f, populations_at(p, f, d), d);
}

DmSolution solve(const SchemeParams& p, const FieldState& f, double v) {
  return solve_at(p, f, shifted(p, f, v));
}

}  // namespace dlam
