#pragma once

#include <cmath>
#include <random>

#include "hbspace/hardy.hpp"
#include "hbspace/pair.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace hbspace;

// b = (1+z)/2, a = (1-z)/2.
inline Pair canonical() { return pair_from_b(RationalFn(ComplexPoly{0.5, 0.5})); }

// b = z/2, a = sqrt(3)/2.
inline Pair half_z() { return pair_from_b(RationalFn(ComplexPoly{0.0, 0.5})); }

// Mate with a double zero at 1: a = (1-z)^2 (alpha - beta z) / 16 with
// alpha = sqrt2+1, beta = sqrt2-1, so that max |a|^2 = 1/2 at z = -1.
inline ComplexPoly degree2_mate() {
  const double alpha = std::sqrt(2.0) + 1.0;
  const double beta = std::sqrt(2.0) - 1.0;
  return (1.0 / 16.0) * (ComplexPoly{1.0, -1.0} * ComplexPoly{1.0, -1.0} * ComplexPoly{alpha, -beta});
}

// b is the outer factor of 1 - |a|^2, computed independently of the library.
inline ComplexPoly degree2_b() {
  const ComplexPoly a = degree2_mate();
  return oracle::cepstral_outer([&](double t) { return 1.0 - std::norm(a(std::polar(1.0, t))); }, 3);
}

inline Pair degree2() { return pair_from_b(RationalFn(degree2_b())); }

inline HardyVec random_poly(std::mt19937_64& rng, int degree, std::size_t n) {
  std::normal_distribution<double> g;
  HardyVec f(n);
  for (int k = 0; k <= degree; ++k) f[k] = {g(rng), g(rng)};
  return f;
}

inline HardyVec monomial(int p, std::size_t n) {
  HardyVec f(n);
  f[p] = 1.0;
  return f;
}

}  // namespace fixture
