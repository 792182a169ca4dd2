#include <doctest.h>

#include "dlam/error.hpp"
#include "dlam/suscept.hpp"
#include "helpers.hpp"

using namespace dlam;
using testing::rel;

namespace {

FieldState probe_only(double O4) {
  FieldState f;
  f.G = {0, 1e-3, 0, 1e-3};
  f.Omega4 = O4;
  return f;
}

cplx chi4(const SchemeParams& p, const FieldState& f) {
  return chi_all(p, f, solve(p, f, 0)).chi_norm[3];
}

}  // namespace

TEST_CASE("zero-drive probe response is the normalized Lorentzian") {
  auto p = na2_hinze();
  for (double O4 : {-500.0, -70.0, 0.0, 35.0, 900.0}) {
    auto c = chi4(p, probe_only(O4));
    double G = p.coh.lm;
    CHECK(c.real() == doctest::Approx(G * G / (G * G + O4 * O4)).epsilon(1e-12));
    CHECK(std::abs(c) == doctest::Approx(G / std::hypot(G, O4)).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous coupling normalizes the resonant absorption to 1") {
  auto p = na2_hinze();
  auto f = probe_only(0);
  auto s = chi_all(p, f, solve(p, f, 0));
  CHECK(s.alpha(3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.dk(3) == doctest::Approx(0.0).epsilon(1e-12));
  auto k = Coupling::homogeneous(p);
  for (int j = 0; j < 4; ++j) CHECK(k.K[j] / k.K[3] == doctest::Approx(p.k(j) / p.k(3)));
}

TEST_CASE("alpha0 fixes the zero-drive absorption ratios") {
  auto p = na2_hinze();
  p.topology = Topology::open;
  p.pump = {40, 5, 20, 2};
  p.equal_dipole = false;
  p.alpha0 = {2.0, 0.5, 3.0, 1.0};
  auto k = Coupling::homogeneous(p);
  FieldState f;
  f.G = {1e-3, 1e-3, 1e-3, 1e-3};
  auto s = chi_all(p, f, solve(p, f, 0), 0, k);
  for (int j = 0; j < 4; ++j)
    CHECK(s.alpha(j) / s.alpha(3) == doctest::Approx(p.alpha0[j] / p.alpha0[3]).epsilon(1e-6));

  auto empty = p;
  empty.pump = {10, 0, 0, 0};
  CHECK_THROWS_AS(Coupling::from_anchor(empty, 1.0), Error);
}

TEST_CASE("V-scheme limit equals the full probe response with G3 = 0") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    auto p = testing::random_scheme(rng, t % 2 ? Topology::open : Topology::closed);
    auto f = testing::random_fields(rng);
    f.G[2] = 0;
    auto dm = solve(p, f, 0);
    if (dm.dn[3] == 0) continue;
    auto [a, b] = chi_v_scheme_forms(p, f, dm);
    CHECK(rel(a, b) < 1e-10);
    CHECK(rel(a, response(p, dm, shifted(p, f, 0)).chi_norm[3]) < 1e-10);
  }
}

TEST_CASE("Lambda-scheme limit equals the full Stokes response with G3 = 0") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    auto p = testing::random_scheme(rng, t % 2 ? Topology::open : Topology::closed);
    auto f = testing::random_fields(rng);
    f.G[2] = 0;
    auto dm = solve(p, f, 0);
    if (dm.dn[1] == 0) continue;
    auto [a, b] = chi_lambda_scheme_forms(p, f, dm);
    CHECK(rel(a, b) < 1e-10);
    CHECK(rel(a, response(p, dm, shifted(p, f, 0)).chi_norm[1]) < 1e-10);
  }
}

TEST_CASE("alternative Stokes denominator changes the result") {
  auto p = na2_hinze();
  FieldState f;
  f.G = {from_mhz(800), 1e-3, 0, 1e-3};
  f.Omega1 = from_mhz(200);
  f.Omega4 = from_mhz(150);
  auto dm = solve(p, f, 0);
  auto a = chi_lambda_scheme(p, f, dm);
  p.stokes_alt_denominator = true;
  auto b = chi_lambda_scheme(p, f, dm);
  CHECK(rel(a, b) > 1e-3);
}

TEST_CASE("three-level limits reject a coupled third drive") {
  auto p = na2_hinze();
  FieldState f;
  f.G = {10, 1e-3, 10, 1e-3};
  auto dm = solve(p, f, 0);
  CHECK_THROWS_AS(chi_v_scheme(p, f, dm), Error);
  CHECK_THROWS_AS(chi_lambda_scheme(p, f, dm), Error);
  CHECK_THROWS_AS(raman_limit(p, f, dm), Error);
}

TEST_CASE("integrated probe absorption is independent of the drives") {
  auto p = na2_hinze();
  struct Case {
    double G1, G3, O1, O3;
  };
  for (auto c : {Case{0, 0, 0, 0}, Case{1500, 0, 0, 0}, Case{1000, 0, 300, 0},
                 Case{600, 400, -200, 150}, Case{1500, 200, 0, 0}}) {
    FieldState f;
    f.G = {from_mhz(c.G1), 1e-3, from_mhz(c.G3), 1e-3};
    f.Omega1 = from_mhz(c.O1);
    f.Omega3 = from_mhz(c.O3);
    auto r = integrated_absorption(p, f);
    CAPTURE(c.G1);
    CAPTURE(c.O1);
    CHECK(r.re == doctest::Approx(r.expected).epsilon(1e-8));
    CHECK(std::abs(r.im) < 1e-8 * std::abs(r.expected));
  }
}

TEST_CASE("AWI threshold coincides with vanishing line-center absorption") {
  auto p = na2_hinze();
  p.coh.gm = 30;
  auto ratio_at = [&](double G1) {
    FieldState f = probe_only(0);
    f.G[0] = G1;
    auto dm = solve(p, f, 0);
    return std::pair{awi_ratio(p, f, dm), chi_v_scheme(p, f, dm).real()};
  };
  double lo = 1, hi = 3000;
  REQUIRE(ratio_at(lo).first < 1);
  REQUIRE(ratio_at(hi).first > 1);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (ratio_at(mid).first < 1 ? lo : hi) = mid;
  }
  CHECK(std::abs(ratio_at(lo).second) < 1e-9);
  CHECK(ratio_at(0.5 * lo).second > 0);
  CHECK(ratio_at(1.5 * lo).second < 0);
}

TEST_CASE("AWI ratio saturates below threshold in the Na2 preset") {
  auto p = na2_hinze();
  for (double G : {100.0, 1000.0, 1e4, 1e5}) {
    FieldState f = probe_only(0);
    f.G[0] = G;
    CHECK(awi_ratio(p, f, solve(p, f, 0)) < p.width.g / (2 * p.coh.gm) + 1e-12);
  }
}

TEST_CASE("Raman limit tracks the exact far-detuned absorption") {
  auto p = na2_hinze();
  FieldState f = probe_only(0);
  f.G[0] = from_mhz(40);
  f.Omega1 = from_mhz(2000);
  for (double d = -150; d <= 150; d += 10) {
    f.Omega4 = from_mhz(2000 + d);
    auto dm = solve(p, f, 0);
    double exact = chi_v_scheme(p, f, dm).real();
    CAPTURE(d);
    CHECK(raman_limit(p, f, dm) == doctest::Approx(exact).epsilon(0.05));
  }
  f.Omega1 = from_mhz(50);
  CHECK_THROWS_AS(raman_limit(p, f, solve(p, f, 0)), Error);
  f.Omega1 = from_mhz(2000);
  f.G[0] = from_mhz(2000);
  CHECK_THROWS_AS(raman_limit(p, f, solve(p, f, 0)), Error);
}

TEST_CASE("response arithmetic") {
  Response a;
  a.s = {1, 2, 3, 4};
  a.x4 = cplx(0, 1);
  Response b = a * 0.5;
  b += a;
  CHECK(b.s[3] == cplx(6));
  CHECK(b.x4 == cplx(0, 1.5));
}
