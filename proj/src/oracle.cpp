#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "dlam/densmat.hpp"
#include "dlam/error.hpp"

namespace dlam {

namespace {

using Mat4 = Eigen::Matrix4cd;
using MatL = Eigen::Matrix<cplx, 16, 16>;
using VecL = Eigen::Matrix<cplx, 16, 1>;

const cplx I{0, 1};
constexpr int L = 0, Gl = 1, N = 2, M = 3;

int idx(int j, int k) { return 4 * j + k; }

// Hermitian coupling with the lower level as first index.
Mat4 coupling(cplx G1, cplx G2, cplx G3, cplx G4) {
  Mat4 V = Mat4::Zero();
  V(L, Gl) = G1;
  V(N, Gl) = G2;
  V(N, M) = G3;
  V(L, M) = G4;
  return V + Mat4(V.adjoint());
}

// Column-stacked action of rho -> -i[V, rho].
MatL commutator(const Mat4& V) {
  MatL C = MatL::Zero();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      for (int s = 0; s < 4; ++s) {
        C(idx(j, k), idx(s, k)) += -I * V(j, s);
        C(idx(j, k), idx(j, s)) += I * V(s, k);
      }
  return C;
}

VecL apply_commutator(const Mat4& V, const VecL& rho) { return commutator(V) * rho; }

}  // namespace

DmSolution solve_oracle_at(const SchemeParams& p, const FieldState& f, const Detunings& d) {
  const auto& W = p.width;
  const auto& y = p.gamma;
  const auto& c = p.coh;
  const bool closed = p.topology == Topology::closed;

  // Rotating-frame level phases.
  const double phi[4] = {0, -d.O1, d.O2 - d.O1, -d.O4};
  double cw[4][4] = {};
  auto set_cw = [&](int a, int b, double v) { cw[a][b] = cw[b][a] = v; };
  set_cw(L, Gl, c.lg);
  set_cw(N, Gl, c.ng);
  set_cw(N, M, c.nm);
  set_cw(L, M, c.lm);
  set_cw(L, N, c.ln);
  set_cw(Gl, M, c.gm);
  const double Gam[4] = {W.l, W.g, W.n, W.m};

  // Relaxation and pumping part of the Liouvillian.
  MatL A = MatL::Zero();
  VecL b0 = VecL::Zero();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      if (j != k) A(idx(j, k), idx(j, k)) = -(cw[j][k] + I * (phi[j] - phi[k]));
  for (int j = 0; j < 4; ++j) A(idx(j, j), idx(j, j)) = -Gam[j];
  A(idx(L, L), idx(Gl, Gl)) += y.gl;
  A(idx(N, N), idx(Gl, Gl)) += y.gn;
  A(idx(N, N), idx(M, M)) += y.mn;
  A(idx(L, L), idx(M, M)) += y.ml;

  SchemeParams ps = p;
  if (!closed && p.occupancy > 0) {
    SchemeParams raw = p;
    raw.occupancy = 0;
    auto n = zero_field_populations(raw);
    double sum = n[0] + n[1] + n[2] + n[3];
    if (sum > 0)
      for (double& q : ps.pump) q *= p.occupancy / sum;
  }
  if (closed) {
    for (int j = 1; j < 4; ++j) A(idx(j, j), idx(L, L)) += ps.pump[j];
  } else {
    for (int j = 0; j < 4; ++j) b0(idx(j, j)) = -ps.pump[j];
  }

  MatL A0 = A + commutator(coupling(f.G[0], 0, f.G[2], 0));
  if (closed) {
    A0.row(idx(L, L)).setZero();
    for (int j = 0; j < 4; ++j) A0(idx(L, L), idx(j, j)) = 1;
    b0(idx(L, L)) = 1;
  }

  Eigen::PartialPivLU<MatL> lu(A0);
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    std::ostringstream s;
    s << "oracle matrix numerically singular (reciprocal condition estimate " << rc << ")";
    fail(ErrorKind::numerical, s.str());
  }
  const VecL rho0 = lu.solve(b0);
  if (!rho0.allFinite()) fail(ErrorKind::numerical, "oracle steady state is not finite");

  auto first_order = [&](const Mat4& V1) {
    VecL rhs = -apply_commutator(V1, rho0);
    if (closed) rhs(idx(L, L)) = 0;
    return VecL(lu.solve(rhs));
  };
  // Unit sources; gauge covariance carries the phase of the actual amplitude.
  const VecL s4 = first_order(coupling(0, 0, 0, 1));
  const VecL s2 = first_order(coupling(0, 1, 0, 0));
  if (!s4.allFinite() || !s2.allFinite())
    fail(ErrorKind::numerical, "oracle first-order response is not finite");

  DmSolution s;
  s.zero_field = zero_field_populations(p);
  for (int j = 0; j < 4; ++j) s.pop[j] = rho0(idx(j, j)).real();
  s.dr = {s.pop[0] - s.pop[1], s.pop[2] - s.pop[1], s.pop[2] - s.pop[3], s.pop[0] - s.pop[3]};
  const auto& n = s.zero_field;
  s.dn = {n[0] - n[1], n[2] - n[1], n[2] - n[3], n[0] - n[3]};

  const cplx G1 = f.G[0], G2 = f.G[1], G3 = f.G[2], G4 = f.G[3];
  auto P = ResonanceDenominators::make(c, d);
  s.r1 = rho0(idx(L, Gl));
  s.r3 = rho0(idx(N, M));
  s.R4 = s4(idx(L, M)) * P.P4 / I;
  s.R2 = s2(idx(N, Gl)) * P.P2 / I;
  const cplx g13 = G1 * G3;
  s.x2 = std::abs(g13) > 0 ? s4(idx(N, Gl)) / g13 : cplx{};
  s.x4 = std::abs(g13) > 0 ? s2(idx(L, M)) / g13 : cplx{};

  s.r4 = G4 * s4(idx(L, M));
  s.r2t = std::conj(G4) * s4(idx(N, Gl));
  s.r41 = G4 * s4(idx(Gl, M));
  s.r43 = G4 * s4(idx(L, N));
  s.r2 = G2 * s2(idx(N, Gl));
  s.r4t = std::conj(G2) * s2(idx(L, M));
  s.r32 = std::conj(G2) * s2(idx(Gl, M));
  s.r12 = std::conj(G2) * s2(idx(L, N));
  s.has_coherences = true;
  return s;
}

DmSolution solve_oracle(const SchemeParams& p, const FieldState& f, double v) {
  return solve_oracle_at(p, f, shifted(p, f, v));
}

}  // namespace dlam
