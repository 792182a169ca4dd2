#pragma once

#include <algorithm>
#include <complex>
#include <random>

#include "dlam/scheme.hpp"

namespace testing {

inline double rel(std::complex<double> a, std::complex<double> b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

// Physical random scheme: rates in [1, 200], partial decays inside the level widths.
inline dlam::SchemeParams random_scheme(std::mt19937_64& rng, dlam::Topology top) {
  std::uniform_real_distribution<double> R(1, 200), U(0, 1);
  dlam::SchemeParams p;
  p.topology = top;
  p.width = {R(rng), R(rng), R(rng), R(rng)};
  p.gamma = {U(rng) * p.width.g / 2, U(rng) * p.width.g / 2, U(rng) * p.width.m / 2,
             U(rng) * p.width.m / 2};
  p.coh = {R(rng), R(rng), R(rng), R(rng), R(rng), R(rng)};
  if (top == dlam::Topology::closed)
    p.pump = {0, R(rng) * U(rng), R(rng) * U(rng), R(rng) * U(rng)};
  else
    p.pump = {R(rng), R(rng), R(rng), R(rng)};
  return p;
}

inline dlam::FieldState random_fields(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> G(0, 2000), O(-5000, 5000), ph(-3.14159, 3.14159);
  dlam::FieldState f;
  f.G = {std::polar(G(rng), ph(rng)), std::polar(1.0, ph(rng)), std::polar(G(rng), ph(rng)),
         std::polar(1.0, ph(rng))};
  f.Omega1 = O(rng);
  f.Omega3 = O(rng);
  f.Omega4 = O(rng);
  return f;
}

}  // namespace testing
