#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dlam/doppler.hpp"
#include "dlam/error.hpp"

using namespace dlam;

namespace {

FieldState drives(double G1, double G3, double O1, double O3) {
  FieldState f;
  f.G = {from_mhz(G1), 0, from_mhz(G3), 0};
  f.Omega1 = from_mhz(O1);
  f.Omega3 = from_mhz(O3);
  return f;
}

}  // namespace

TEST_CASE("uniform grid") {
  auto p = na2_hinze();
  auto g = VelocityGrid::uniform(p, 401);
  CHECK(g.size() == 401);
  CHECK(std::accumulate(g.w.begin(), g.w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.x.front() == -5.0);
  CHECK(g.x[200] == 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.x[i] == -g.x[g.size() - 1 - i]);
    CHECK(g.v[i] == doctest::Approx(g.x[i] * thermal_speed(p)));
  }
  double m2 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) m2 += g.w[i] * g.x[i] * g.x[i];
  CHECK(m2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(VelocityGrid::uniform(p, 0), Error);
  CHECK_THROWS_AS(VelocityGrid::uniform(p, 11, -1), Error);
}

TEST_CASE("Gauss-Hermite grid integrates polynomial moments exactly") {
  auto p = na2_hinze();
  auto g = VelocityGrid::gauss_hermite(p, 20);
  double m0 = 0, m2 = 0, m4 = 0, m1 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x = g.x[i];
    m0 += g.w[i];
    m1 += g.w[i] * x;
    m2 += g.w[i] * x * x;
    m4 += g.w[i] * x * x * x * x;
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(m1) < 1e-13);
  CHECK(m2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m4 == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("grid resolution warning") {
  auto p = na2_hinze();
  CHECK(resolution_warning(p, VelocityGrid::uniform(p, kDefaultNodes)).empty());
  auto coarse = resolution_warning(p, VelocityGrid::uniform(p, 11));
  CHECK(coarse.find("l-n") != std::string::npos);
  CHECK(resolution_warning(p, VelocityGrid::at_rest(p)).empty());
}

TEST_CASE("Doppler coupling normalizes the averaged resonant absorption") {
  auto p = na2_hinze();
  auto grid = VelocityGrid::uniform(p, 801);
  FieldState f;
  auto s = average_susceptibility(p, f, grid);
  CHECK(s.alpha(3) == doctest::Approx(1.0).epsilon(1e-12));
  auto rest = average_susceptibility(p, f, VelocityGrid::at_rest(p));
  CHECK(rest.alpha(3) == doctest::Approx(1.0).epsilon(1e-12));
  auto k_rest = doppler_coupling(p, VelocityGrid::at_rest(p));
  CHECK(k_rest.K[3] == doctest::Approx(Coupling::homogeneous(p).K[3]).epsilon(1e-12));
}

TEST_CASE("averaged zero-drive line has the Doppler width") {
  auto p = na2_hinze();
  auto grid = VelocityGrid::uniform(p, kDefaultNodes);
  auto k = doppler_coupling(p, grid);
  std::vector<double> xs, ys;
  for (double m = -2000; m <= 2000; m += 10) {
    FieldState f;
    f.Omega4 = from_mhz(m);
    xs.push_back(m);
    ys.push_back(average_susceptibility(p, f, grid, k).alpha(3));
  }
  auto pk = find_peak(xs, ys, -100, 100);
  REQUIRE(pk.found);
  CHECK(pk.center == 0);
  CHECK(pk.height == doctest::Approx(1.0).epsilon(1e-9));
  double homog = 2 * p.coh.lm / (2 * phys::pi);
  double voigt = 0.5346 * homog + std::sqrt(0.2166 * homog * homog +
                                            std::pow(doppler_fwhm(p, 3) * 1e3, 2));
  CHECK(pk.fwhm == doctest::Approx(voigt).epsilon(0.01));
}

TEST_CASE("velocity averaging converges with the node count") {
  auto p = na2_hinze();
  auto f = drives(1000, 242, 2140, 2140);
  f.Omega4 = from_mhz(2140);
  auto a = average_response(p, f, VelocityGrid::uniform(p, 2001));
  auto b = average_response(p, f, VelocityGrid::uniform(p, 4001));
  CHECK(std::abs(a.s[3] - b.s[3]) < 1e-4 * std::abs(b.s[3]));
  CHECK(std::abs(a.s[1] - b.s[1]) < 1e-4 * std::abs(b.s[1]));
}

TEST_CASE("light-shift compensation residual") {
  auto p = na2_hinze();
  FieldState f;
  f.Omega1 = from_mhz(2140);
  double k1 = p.k(0), k2 = p.k(1);
  f.G[0] = f.Omega1 * std::sqrt((k1 - k2) / k1);
  CHECK(std::abs(compensation_residual(p, f)) < 1e-12);
  f.G[0] = from_mhz(1000);
  CHECK(compensation_residual(p, f) > 0);
  f.G[0] = from_mhz(500);
  CHECK(compensation_residual(p, f) < 0);
  f.Omega1 = 0;
  CHECK_THROWS_AS(compensation_residual(p, f), Error);
}

TEST_CASE("weak drives invert the Stokes transition only in a narrow velocity band") {
  auto p = na2_hinze();
  auto grid = VelocityGrid::uniform(p, kDefaultNodes);
  auto f = drives(16, 19, 0, 0);
  auto k = doppler_coupling(p, grid);
  auto d2 = velocity_profile(p, f, grid, ProfileQuantity::dr2, k);
  auto d1 = velocity_profile(p, f, grid, ProfileQuantity::dr1, k);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (d2[i].value.real() < 0) {
      lo = std::min(lo, d2[i].v_over_u);
      hi = std::max(hi, d2[i].v_over_u);
    }
    // r_l - r_n = (r_l - r_g) - (r_n - r_g)
    double rl_rn = d1[i].value.real() - d2[i].value.real();
    CHECK(rl_rn > 0);
  }
  REQUIRE(hi >= lo);
  // Narrow against the thermal FWHM of 2 sqrt(ln 2) u.
  CHECK(hi - lo < 0.25 * 2 * std::sqrt(std::log(2.0)));
  CHECK(std::abs(0.5 * (lo + hi)) < 0.1);
}

TEST_CASE("velocity profile with and without the Maxwell envelope") {
  auto p = na2_hinze();
  auto grid = VelocityGrid::uniform(p, 101);
  auto k = doppler_coupling(p, grid);
  auto f = drives(1000, 242, 2140, 2140);
  f.Omega4 = from_mhz(2140);
  auto bare = velocity_profile(p, f, grid, ProfileQuantity::alpha4, k, true);
  auto kept = velocity_profile(p, f, grid, ProfileQuantity::alpha4, k, false);
  double sum = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(kept[i].value.real() == doctest::Approx(bare[i].value.real() * grid.w[i]));
    sum += kept[i].value.real();
  }
  CHECK(sum == doctest::Approx(average_susceptibility(p, f, grid, k).alpha(3)).epsilon(1e-10));
}

TEST_CASE("peak finder") {
  std::vector<double> x, y;
  for (int i = -200; i <= 200; ++i) {
    x.push_back(i * 0.05);
    y.push_back(std::exp(-x.back() * x.back()) + 0.5 * std::exp(-(x.back() - 6) * (x.back() - 6) * 4));
  }
  auto a = find_peak(x, y, -10, 10);
  REQUIRE(a.found);
  CHECK(a.center == doctest::Approx(0).epsilon(1e-12));
  CHECK(a.fwhm == doctest::Approx(2 * std::sqrt(std::log(2.0))).epsilon(2e-3));
  auto b = find_peak(x, y, 4, 8);
  REQUIRE(b.found);
  CHECK(b.center == doctest::Approx(6));
  CHECK(b.fwhm == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(5e-3));
  CHECK_FALSE(find_peak(x, y, 2.5, 3.5).found);
  std::vector<double> ramp{0, 1, 2, 3, 2, 2.5};
  auto c = find_peak({0, 1, 2, 3, 4, 5}, ramp, 0, 5);
  CHECK(c.found);
  CHECK(c.fwhm == 0);
}
