#include "dlam/doppler.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "dlam/error.hpp"
#include "dlam/parallel.hpp"

namespace dlam {

VelocityGrid VelocityGrid::uniform(const SchemeParams& p, int n, double span) {
  if (n < 1) fail(ErrorKind::config, "velocity grid needs at least one node");
  if (!(span > 0)) fail(ErrorKind::config, "velocity grid span must be positive");
  VelocityGrid g;
  g.scheme = GridScheme::uniform;
  g.u = thermal_speed(p);
  g.x.resize(n);
  g.w.resize(n);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    g.x[i] = n == 1 ? 0.0 : -span + 2 * span * i / (n - 1);
    g.w[i] = std::exp(-g.x[i] * g.x[i]);
    sum += g.w[i];
  }
  for (int i = 0; i < n; ++i) g.w[i] /= sum;
  // Exact mirror symmetry of the nodes.
  for (int i = 0; i < n / 2; ++i) {
    g.x[n - 1 - i] = -g.x[i];
    g.w[n - 1 - i] = g.w[i];
  }
  g.v.resize(n);
  for (int i = 0; i < n; ++i) g.v[i] = g.x[i] * g.u;
  return g;
}

VelocityGrid VelocityGrid::gauss_hermite(const SchemeParams& p, int n) {
  if (n < 1) fail(ErrorKind::config, "velocity grid needs at least one node");
  // Golub-Welsch for the weight exp(-x^2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  VelocityGrid g;
  g.scheme = GridScheme::gauss_hermite;
  g.u = thermal_speed(p);
  g.x.resize(n);
  g.w.resize(n);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    g.x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    g.w[i] = v0 * v0;
    sum += g.w[i];
  }
  for (int i = 0; i < n; ++i) g.w[i] /= sum;
  for (int i = 0; i < n / 2; ++i) {
    double xs = 0.5 * (g.x[n - 1 - i] - g.x[i]), ws = 0.5 * (g.w[i] + g.w[n - 1 - i]);
    g.x[i] = -xs;
    g.x[n - 1 - i] = xs;
    g.w[i] = g.w[n - 1 - i] = ws;
  }
  if (n % 2) g.x[n / 2] = 0;
  g.v.resize(n);
  for (int i = 0; i < n; ++i) g.v[i] = g.x[i] * g.u;
  return g;
}

VelocityGrid VelocityGrid::at_rest(const SchemeParams& p) {
  VelocityGrid g;
  g.scheme = GridScheme::uniform;
  g.u = thermal_speed(p);
  g.x = {0};
  g.v = {0};
  g.w = {1};
  return g;
}

std::string resolution_warning(const SchemeParams& p, const VelocityGrid& grid) {
  if (grid.size() < 2) return {};
  double dv = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) dv = std::max(dv, grid.v[i] - grid.v[i - 1]);
  auto kp = [&](int j) { return p.propagation_sign[j] * p.k(j); };
  struct Item { const char* name; double k, width; };
  const Item items[] = {{"l-g", kp(0), p.coh.lg},          {"g-n", kp(1), p.coh.ng},
                        {"n-m", kp(2), p.coh.nm},          {"l-m", kp(3), p.coh.lm},
                        {"l-n", kp(0) - kp(1), p.coh.ln}, {"g-m", kp(3) - kp(0), p.coh.gm}};
  std::ostringstream out;
  for (const auto& it : items) {
    double shift = std::abs(it.k) * dv * 1e-6;
    if (shift > it.width)
      out << "velocity grid too coarse for " << it.name << ": node spacing " << shift
          << " exceeds width " << it.width << "; ";
  }
  return out.str();
}

Response average_response(const SchemeParams& p, const FieldState& f, const VelocityGrid& grid,
                          std::vector<Response>* per_node) {
  std::vector<Response> nodes(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    auto d = shifted(p, f, grid.v[i]);
    nodes[i] = response(p, solve_at(p, f, d), d);
  });
  Response sum;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += nodes[i] * grid.w[i];
  if (per_node) *per_node = std::move(nodes);
  return sum;
}

Coupling doppler_coupling(const SchemeParams& p, const VelocityGrid& grid) {
  FieldState f0;
  Response r = average_response(p, f0, grid);
  double im = r.s[3].imag();
  if (!(im > 0)) fail(ErrorKind::config, "zero-drive probe transition is not absorbing");
  return Coupling::from_anchor(p, 1 / (2 * im));
}

SusceptibilitySet average_susceptibility(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid, const Coupling& k,
                                         std::vector<Response>* per_node) {
  return assemble(average_response(p, f, grid, per_node), k, f);
}

SusceptibilitySet average_susceptibility(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid) {
  return average_susceptibility(p, f, grid, doppler_coupling(p, grid));
}

double compensation_residual(const SchemeParams& p, const FieldState& f) {
  if (f.Omega1 == 0) fail(ErrorKind::misuse, "compensation undefined at Omega1 = 0");
  double k1 = p.propagation_sign[0] * p.k(0), k2 = p.propagation_sign[1] * p.k(1);
  double r = std::abs(f.G[0]) / f.Omega1;
  return r * r * k1 / (k1 - k2) - 1;
}

std::vector<ProfileRow> velocity_profile(const SchemeParams& p, const FieldState& f,
                                         const VelocityGrid& grid, ProfileQuantity q,
                                         const Coupling& k, bool remove_envelope) {
  std::vector<ProfileRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    auto d = shifted(p, f, grid.v[i]);
    auto dm = solve_at(p, f, d);
    cplx val;
    switch (q) {
      case ProfileQuantity::dr1: val = dm.dr[0]; break;
      case ProfileQuantity::dr2: val = dm.dr[1]; break;
      case ProfileQuantity::dr3: val = dm.dr[2]; break;
      case ProfileQuantity::dr4: val = dm.dr[3]; break;
      case ProfileQuantity::alpha4:
        val = 2 * k.K[3] * response(p, dm, d).s[3].imag();
        break;
      case ProfileQuantity::stokes_gain:
        val = -2 * k.K[1] * response(p, dm, d).s[1].imag();
        break;
    }
    rows[i] = {grid.x[i], grid.w[i], remove_envelope ? val : val * grid.w[i]};
  });
  return rows;
}

Peak find_peak(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
  Peak pk;
  const std::size_t n = std::min(x.size(), y.size());
  std::size_t best = 0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (x[j] < lo || x[j] > hi) continue;
    if (y[j] >= y[j - 1] && y[j] > y[j + 1] && (!pk.found || y[j] > y[best])) {
      best = j;
      pk.found = true;
    }
  }
  if (!pk.found) return pk;
  pk.center = x[best];
  pk.height = y[best];
  const double half = y[best] / 2;
  std::size_t a = best, b = best;
  while (a > 0 && y[a] > half) --a;
  while (b + 1 < n && y[b] > half) ++b;
  if (y[a] > half || y[b] > half) return pk;
  double xa = x[a] + (half - y[a]) * (x[a + 1] - x[a]) / (y[a + 1] - y[a]);
  double xb = x[b - 1] + (half - y[b - 1]) * (x[b] - x[b - 1]) / (y[b] - y[b - 1]);
  pk.fwhm = xb - xa;
  return pk;
}

}  // namespace dlam
