#include <doctest.h>

#include <numeric>

#include "dlam/densmat.hpp"
#include "dlam/error.hpp"
#include "helpers.hpp"

using namespace dlam;
using testing::rel;

namespace {

double worst_mismatch(const DmSolution& a, const DmSolution& b) {
  double w = 0;
  auto upd = [&](cplx x, cplx y) {
    if (std::abs(y) < 1e-250) return;
    w = std::max(w, rel(x, y));
  };
  for (int j = 0; j < 4; ++j) upd(a.pop[j], b.pop[j]);
  for (auto [x, y] : {std::pair{a.r1, b.r1}, {a.r3, b.r3}, {a.r2, b.r2}, {a.r4, b.r4},
                      {a.r2t, b.r2t}, {a.r4t, b.r4t}, {a.r12, b.r12}, {a.r43, b.r43},
                      {a.r32, b.r32}, {a.r41, b.r41}})
    upd(x, y);
  return w;
}

}  // namespace

TEST_CASE("closed forms match the master-equation solve") {
  for (auto top : {Topology::closed, Topology::open}) {
    CAPTURE(static_cast<int>(top));
    std::mt19937_64 rng(top == Topology::closed ? 11 : 12);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      auto p = testing::random_scheme(rng, top);
      auto f = testing::random_fields(rng);
      worst = std::max(worst, worst_mismatch(solve(p, f, 0), solve_oracle(p, f, 0)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("Na2 preset against the master-equation solve over velocity") {
  auto p = na2_hinze();
  FieldState f;
  f.G = {from_mhz(1500), 1e-3, from_mhz(200), 1e-3};
  f.Omega1 = from_mhz(300);
  f.Omega3 = from_mhz(-100);
  f.Omega4 = from_mhz(40);
  for (double v : {-1500.0, -400.0, 0.0, 250.0, 2000.0})
    CHECK(worst_mismatch(solve(p, f, v), solve_oracle(p, f, v)) < 1e-9);
}

TEST_CASE("zero-field populations") {
  auto p = na2_hinze();
  auto n = zero_field_populations(p);
  CHECK(std::accumulate(n.begin(), n.end(), 0.0) == doctest::Approx(1.0));
  CHECK(n[1] == 0);
  CHECK(n[3] == 0);
  CHECK(n[2] / n[0] == doctest::Approx(boltzmann_fraction(p, Level::n, Level::l)).epsilon(0.02));

  FieldState dark;
  auto s = solve(p, dark, 0);
  for (int j = 0; j < 4; ++j) CHECK(s.pop[j] == doctest::Approx(n[j]).epsilon(1e-12));
}

TEST_CASE("closed populations are a probability distribution") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto p = testing::random_scheme(rng, Topology::closed);
    auto f = testing::random_fields(rng);
    auto s = populations(p, f, 0);
    CHECK(std::accumulate(s.pop.begin(), s.pop.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : s.pop) CHECK(r >= -1e-14);
    CHECK(s.dr[0] == doctest::Approx(s.pop[0] - s.pop[1]));
    CHECK(s.dr[1] == doctest::Approx(s.pop[2] - s.pop[1]));
    CHECK(s.dr[2] == doctest::Approx(s.pop[2] - s.pop[3]));
    CHECK(s.dr[3] == doctest::Approx(s.pop[0] - s.pop[3]));
  }
}

TEST_CASE("printed closed populations agree when the upper-level pumps are off") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    auto p = testing::random_scheme(rng, Topology::closed);
    p.pump[1] = p.pump[3] = 0;
    auto f = testing::random_fields(rng);
    auto a = populations_closed(p, f, 0);
    auto b = populations_closed_printed(p, f, 0);
    for (int j = 0; j < 4; ++j) CHECK(b.pop[j] == doctest::Approx(a.pop[j]).epsilon(1e-9));
  }
}

TEST_CASE("topology guards") {
  auto p = na2_hinze();
  FieldState f;
  CHECK_THROWS_AS(populations_open(p, f, 0), Error);
  p.topology = Topology::open;
  p.pump = {10, 0, 1, 0};
  CHECK_THROWS_AS(populations_closed(p, f, 0), Error);
}

TEST_CASE("weak-field coherences are linear in G2 and G4") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto p = testing::random_scheme(rng, t % 2 ? Topology::open : Topology::closed);
    auto f = testing::random_fields(rng);
    auto a = solve(p, f, 0);
    auto g = f;
    g.G[1] *= cplx(3, -1);
    g.G[3] *= cplx(-2, 0.5);
    auto b = solve(p, g, 0);
    CHECK(rel(b.r4, a.r4 * cplx(-2, 0.5)) < 1e-12);
    CHECK(rel(b.r2, a.r2 * cplx(3, -1)) < 1e-12);
    CHECK(rel(b.r4t, a.r4t * std::conj(cplx(3, -1))) < 1e-12);
    CHECK(rel(b.r2t, a.r2t * std::conj(cplx(-2, 0.5))) < 1e-12);
    for (int j = 0; j < 4; ++j) CHECK(b.pop[j] == a.pop[j]);
  }
}

TEST_CASE("pump phases enter as a gauge") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto p = testing::random_scheme(rng, Topology::closed);
    auto f = testing::random_fields(rng);
    auto a = solve(p, f, 0);
    auto g = f;
    cplx e1 = std::polar(1.0, 0.7), e3 = std::polar(1.0, -1.9);
    g.G[0] *= e1;
    g.G[2] *= e3;
    auto b = solve(p, g, 0);
    CHECK(rel(b.r1, a.r1 * e1) < 1e-12);
    CHECK(rel(b.r3, a.r3 * e3) < 1e-12);
    CHECK(rel(b.r4, a.r4) < 1e-12);
    CHECK(rel(b.r4t, a.r4t * e1 * e3) < 1e-12);
    CHECK(rel(b.x4, a.x4) < 1e-12);
  }
}

TEST_CASE("conjugate symmetry of the detunings") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    auto p = testing::random_scheme(rng, Topology::open);
    auto f = testing::random_fields(rng);
    for (auto& g : f.G) g = std::abs(g);
    auto m = f;
    m.Omega1 = -f.Omega1;
    m.Omega3 = -f.Omega3;
    m.Omega4 = -f.Omega4;
    auto a = solve(p, f, 0), b = solve(p, m, 0);
    for (int j = 0; j < 4; ++j) CHECK(b.pop[j] == doctest::Approx(a.pop[j]).epsilon(1e-10));
    CHECK(rel(b.r4, -std::conj(a.r4)) < 1e-10);
  }
}

TEST_CASE("singular oracle is reported as a numerical error") {
  auto p = na2_hinze();
  p.coh = {0, 0, 0, 0, 0, 0};
  p.width = {0, 0, 0, 0};
  p.gamma = {0, 0, 0, 0};
  p.pump = {0, 0, 0, 0};
  FieldState f;
  try {
    solve_oracle(p, f, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numerical);
  }
}
