#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hbspace {

// Numerical tolerances shared by every module. Each one is overridable from the
// command line as `--tol-<name>`.
struct Tolerances {
  double root = 1e-10;     // root residual, relative to (1+|z|)^deg * ||p||
  double gcd = 1e-8;       // common-root cancellation in rational functions
  double cluster = 1e-8;   // "lies on the circle" / "equals z0"
  double pos = 1e-10;      // allowed negativity of a symbol on the circle
  double fr = 1e-8;        // Fejer-Riesz reconstruction, max norm on the grid
  double pair = 1e-9;      // | |a|^2 + |b|^2 - 1 | on the grid
  double plus = 1e-9;      // plus-part solver residual
  double iso = 1e-8;       // W_lambda isometry, relative
  double quad = 1e-6;      // V_b quadrature isometry, relative
  double ker = 1e-8;       // (A_lambda - conj z0)^k residual of kernel candidates
  double orth = 1e-7;      // H0(b) orthogonality to a z^n
  double null = 1e-6;      // relative singular-value threshold
  double angle = 1e-5;     // principal angles, radians
  double limit = 1e-3;     // nontangential limit check, relative to the limit norm
  double ystar = 1e-6;     // Y*-invariance residual
  int grid = 4096;         // circle sample count for validation

  // Name/pointer table used by the CLI and JSON reports.
  std::vector<std::pair<std::string_view, double*>> named();
  std::vector<std::pair<std::string_view, double>> named() const;
};

}  // namespace hbspace
