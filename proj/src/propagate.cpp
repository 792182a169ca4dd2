#include "dlam/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dlam/error.hpp"
#include "dlam/parallel.hpp"

namespace dlam {

namespace {

const cplx I{0, 1};
using Amps = std::array<cplx, 4>;

Amps operator+(const Amps& a, const Amps& b) {
  Amps r;
  for (int j = 0; j < 4; ++j) r[j] = a[j] + b[j];
  return r;
}

Amps operator*(double h, const Amps& a) {
  Amps r;
  for (int j = 0; j < 4; ++j) r[j] = h * a[j];
  return r;
}

double photon_proxy(const Amps& G, const Coupling& k, int j) { return std::norm(G[j]) / k.K[j]; }

TraceRow make_row(double Z, const Amps& G, const Amps& D, const Amps& G0, const Coupling& k,
                  double dk_geom) {
  TraceRow r;
  r.Z = Z;
  r.G = G;
  r.T4 = std::norm(G0[3]) > 0 ? std::norm(G[3]) / std::norm(G0[3]) : 0.0;
  r.T1 = std::norm(G0[0]) > 0 ? std::norm(G[0]) / std::norm(G0[0]) : 0.0;
  double N40 = photon_proxy(G0, k, 3);
  const double norm = N40 > 0 ? N40 : 1.0;
  for (int j = 0; j < 4; ++j) {
    r.N[j] = photon_proxy(G, k, j) / norm;
    r.dN[j] = (2 * (std::conj(G0[j]) * D[j]).real() + std::norm(D[j])) / k.K[j] / norm;
  }
  r.theta = std::arg(G[3] * std::conj(G[2]) * G[1] * std::conj(G[0]));
  r.psi = r.theta + dk_geom * Z;
  return r;
}

}  // namespace

WaveCoefficients wave_coefficients(const SchemeParams& p, const FieldState& f,
                                   const VelocityGrid& grid, const Coupling& k) {
  Response r = average_response(p, f, grid);
  WaveCoefficients c;
  for (int j = 0; j < 4; ++j) c.sigma[j] = k.K[j] * r.s[j];
  const cplx g13 = f.G[0] * f.G[2];
  c.gamma4 = k.K[3] * r.x4 * g13;
  c.gamma2 = k.K[1] * r.x2 * g13;
  c.c1 = k.K[0] * std::conj(r.x4);
  c.c3 = k.K[2] * std::conj(r.x2);
  return c;
}

PropagationTrace integrate(const SchemeParams& p, const FieldState& f0, const VelocityGrid& grid,
                           const Coupling& k, const PropagationOptions& opt) {
  if (!(opt.zmax >= 0) || !std::isfinite(opt.zmax)) fail(ErrorKind::config, "zmax must be >= 0");
  if (!(opt.step > 0)) fail(ErrorKind::config, "step must be positive");

  PropagationTrace trace;
  trace.coupling = k;
  const Amps G0 = f0.G;
  const long nsteps = std::lround(std::ceil(opt.zmax / opt.step - 1e-9));
  const double h = nsteps > 0 ? opt.zmax / nsteps : 0.0;
  const long every = std::max(1L, std::lround(opt.sample / std::max(h, 1e-300)));

  // Frozen mode keeps the FWM drives as numbers, not as functions of the pumps.
  const WaveCoefficients frozen = opt.fixed ? *opt.fixed : wave_coefficients(p, f0, grid, k);
  const bool recompute = opt.recompute && !opt.fixed;

  auto rhs = [&](double Z, const Amps& G, double* rate) {
    WaveCoefficients c = frozen;
    if (recompute) {
      FieldState f = f0;
      f.G = G;
      c = wave_coefficients(p, f, grid, k);
    }
    const cplx g4 = c.gamma4, g2 = c.gamma2;
    const cplx ph = std::exp(I * opt.dk_geom * Z);
    std::array<cplx, 4> s = c.sigma;
    if (opt.sigma_off) s = {};
    Amps d;
    d[0] = I * (s[0] * G[0] + c.c1 * G[3] * G[1] * std::conj(G[2]) * std::conj(ph));
    d[2] = I * (s[2] * G[2] + c.c3 * G[3] * G[1] * std::conj(G[0]) * std::conj(ph));
    d[3] = I * (s[3] * G[3] + g4 * std::conj(G[1]) * ph);
    d[1] = I * (s[1] * G[1] + g2 * std::conj(G[3]) * ph);
    if (rate) {
      double r = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2]), std::abs(s[3])});
      r = std::max(r, std::abs(s[1]) + std::abs(g2));
      r = std::max(r, std::abs(s[3]) + std::abs(g4));
      const double a1 = std::abs(G[0]), a3 = std::abs(G[2]);
      const double tri = std::abs(G[3] * G[1]);
      if (a1 > 0) r = std::max(r, std::abs(c.c1) * tri * a3 / a1);
      if (a3 > 0) r = std::max(r, std::abs(c.c3) * tri * a1 / a3);
      *rate = r;
    }
    return d;
  };

  // D accumulates the same increments as G, so small photon-number changes of strong beams keep
  // their relative precision while G keeps its own for strongly absorbed beams.
  Amps G = G0, D{};
  trace.rows.push_back(make_row(0, G, D, G0, k, opt.dk_geom));
  for (long i = 0; i < nsteps; ++i) {
    const double Z = i * h;
    double rate = 0;
    Amps k1 = rhs(Z, G, &rate);
    if (h * rate > opt.max_step_change) {
      std::ostringstream s;
      s << "integration step too large at Z = " << Z << ": relative change per step " << h * rate
        << " exceeds " << opt.max_step_change << "; use a step below "
        << opt.max_step_change / rate;
      fail(ErrorKind::numerical, s.str());
    }
    Amps k2 = rhs(Z + h / 2, G + (h / 2) * k1, nullptr);
    Amps k3 = rhs(Z + h / 2, G + (h / 2) * k2, nullptr);
    Amps k4 = rhs(Z + h, G + h * k3, nullptr);
    for (int j = 0; j < 4; ++j) {
      const cplx step = h / 6 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      G[j] += step;
      D[j] += step;
    }
    for (const auto& g : G)
      if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
        std::ostringstream s;
        s << "propagation diverged at Z = " << Z + h;
        fail(ErrorKind::numerical, s.str());
      }
    if ((i + 1) % every == 0 || i + 1 == nsteps)
      trace.rows.push_back(make_row((i + 1) * h, G, D, G0, k, opt.dk_geom));
  }
  return trace;
}

PropagationTrace integrate(const SchemeParams& p, const FieldState& f0, const VelocityGrid& grid,
                           const PropagationOptions& opt) {
  return integrate(p, f0, grid, doppler_coupling(p, grid), opt);
}

OpaCoeffs OpaCoeffs::from_real(double alpha2, double alpha4, double dk2, double dk4, cplx gamma2,
                               cplx gamma4) {
  return {cplx{dk2, alpha2 / 2}, cplx{dk4, alpha4 / 2}, gamma2, gamma4};
}

cplx OpaCoeffs::beta() const { return -I * (sigma4 + std::conj(sigma2)) / 2.0; }
cplx OpaCoeffs::mu() const { return I * (sigma4 - std::conj(sigma2)) / 2.0; }

std::pair<cplx, cplx> analytic_opa(cplx G20, cplx G40, const OpaCoeffs& c, double L) {
  const cplx beta = c.beta(), mu = c.mu();
  const cplx R2 = beta * beta + std::conj(c.gamma2) * c.gamma4;
  const cplx R = std::sqrt(R2);
  const cplx RL = R * L;
  cplx ch, shr;  // cosh(RL), sinh(RL)/R
  if (std::abs(RL) < 1e-4) {
    const cplx x = R2 * L * L;
    ch = 1.0 + x / 2.0 + x * x / 24.0;
    shr = L * (1.0 + x / 6.0 + x * x / 120.0);
  } else {
    ch = std::cosh(RL);
    shr = std::sinh(RL) / R;
  }
  const cplx e = std::exp(mu * L);
  const cplx G20c = std::conj(G20);
  cplx G4 = e * (G40 * (ch - beta * shr) + I * c.gamma4 * shr * G20c);
  cplx G2c = e * (G20c * (ch + beta * shr) - I * std::conj(c.gamma2) * shr * G40);
  return {G2c, G4};
}

Efficiency fwm_efficiency(const OpaCoeffs& c, double L) {
  const cplx beta = c.beta();
  const cplx g2 = std::conj(c.gamma2) * c.gamma4;
  Efficiency e;
  if (std::abs(beta) == 0) {
    e.warning = "fwm_efficiency: beta = 0";
    e.eta = std::numeric_limits<double>::infinity();
    return e;
  }
  if (std::abs(g2 / (beta * beta)) >= 0.3)
    e.warning = "fwm_efficiency: |gamma^2/beta^2| >= 0.3, weak-coupling formula unreliable";
  const cplx a = std::exp(-I * std::conj(c.sigma2) * L);  // exp(g2 L/2) at zero dispersion
  const cplx b = std::exp(I * c.sigma4 * L);              // exp(-alpha4 L/2)
  e.eta = std::norm(c.gamma4) / std::norm(2.0 * beta) * std::norm(a - b);
  return e;
}

double opa_transmission_approx(const OpaCoeffs& c, double L) {
  const cplx beta = c.beta();
  const cplx q = std::conj(c.gamma2) * c.gamma4 / (4.0 * beta * beta);
  const cplx a = std::exp(-I * std::conj(c.sigma2) * L);
  const cplx b = std::exp(I * c.sigma4 * L);
  return std::norm(b + q * (a - b));
}

std::vector<ManleyRoweRow> manley_rowe_report(const PropagationTrace& t) {
  std::vector<ManleyRoweRow> out;
  if (t.rows.empty()) return out;
  for (const auto& r : t.rows) {
    ManleyRoweRow m;
    m.Z = r.Z;
    m.dN = r.dN;
    m.defect = std::abs(m.dN[3] - m.dN[1]) + std::abs(m.dN[3] + m.dN[0]) +
               std::abs(m.dN[3] + m.dN[2]);
    out.push_back(m);
  }
  return out;
}

std::vector<SwitchingRow> switching_curve(const SchemeParams& p, const FieldState& f0,
                                          const VelocityGrid& grid, const Coupling& k,
                                          PropagationOptions opt, double Z,
                                          SweepVariable var, const std::vector<double>& values) {
  if (!(Z > 0)) fail(ErrorKind::config, "switching curve needs Z > 0");
  opt.zmax = Z;
  opt.sample = Z;
  std::vector<SwitchingRow> rows(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    FieldState f = f0;
    if (var == SweepVariable::Omega4)
      f.Omega4 = values[i];
    else
      f.G[0] = std::polar(values[i], std::arg(f0.G[0]));
    auto t = integrate(p, f, grid, k, opt);
    rows[i] = {values[i], t.rows.back().T4};
  }, 1);
  return rows;
}

}  // namespace dlam
