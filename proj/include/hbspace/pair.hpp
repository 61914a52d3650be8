#pragma once

#include <string>
#include <vector>

#include "hbspace/config.hpp"
#include "hbspace/poly.hpp"

namespace hbspace {

struct UnimodularPoint {
  cplx z;      // on the circle
  cplx value;  // b(z), unimodular
};

/// Nonextreme rational pair (b, a) with |a|^2 + |b|^2 = 1 on the circle, a outer
/// and a(0) > 0. Besides the reduced b and a, the common-denominator form
/// b = p/q, a = r/q (q monic, roots outside the closed disk) is kept because all
/// Toeplitz work downstream is banded in p, q, r.
class Pair {
 public:
  const RationalFn& b() const noexcept { return b_; }
  const RationalFn& a() const noexcept { return a_; }
  const ComplexPoly& p() const noexcept { return p_; }
  const ComplexPoly& q() const noexcept { return q_; }
  const ComplexPoly& r() const noexcept { return r_; }
  /// Circle points where |b| = 1, i.e. circle zeros of a.
  const std::vector<UnimodularPoint>& unimodular_set() const noexcept { return unimodular_; }
  double grid_residual() const noexcept { return grid_residual_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

 private:
  friend Pair pair_from_b(const RationalFn& b, const Tolerances& tol);
  RationalFn b_, a_;
  ComplexPoly p_, q_, r_;
  std::vector<UnimodularPoint> unimodular_;
  double grid_residual_ = 0.0;
  Tolerances tol_;
};

Pair pair_from_b(const RationalFn& b, const Tolerances& tol = {});

struct FLambda {
  RationalFn f;                   // a / (1 - conj(lambda) b), reduced
  bool pole_on_circle = false;    // lambda is a boundary value of b
  std::vector<cplx> circle_poles;
};

FLambda f_lambda(const Pair& pair, cplx lambda);

struct AcVerdict {
  bool absolutely_continuous = true;
  std::vector<cplx> atoms;  // circle points with b(z) = lambda
};

AcVerdict mu_is_absolutely_continuous(const Pair& pair, cplx lambda);

struct MembershipVerdict {
  int k_max = -1;       // largest k with F_lambda (1 - conj(z0) z)^{-k-1} in H^2
  int order_of_a = 0;   // multiplicity of z0 as a zero of a
  cplx b_at_z0;
  std::vector<std::string> reasons;
};

/// Throws kHypothesisViolation when lambda = b(z0) and kNotAbsolutelyContinuous
/// when mu_lambda has atoms.
MembershipVerdict membership(const Pair& pair, cplx lambda, cplx z0);

/// Returns z/|z|, rejecting points more than 1e-12 off the circle.
cplx require_unimodular(cplx z, const char* what);

}  // namespace hbspace
