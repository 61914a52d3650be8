#pragma once

#include <cstddef>
#include <vector>

#include "hbspace/config.hpp"
#include "hbspace/poly.hpp"

namespace hbspace {

/// First N Taylor coefficients of an H^2 function. `tail_bound` bounds the
/// l^2 norm of the discarded coefficients (0 for polynomials that fit).
class HardyVec {
 public:
  HardyVec() = default;
  explicit HardyVec(std::size_t n) : c_(n) {}
  explicit HardyVec(std::vector<cplx> c, double tail_bound = 0.0) : c_(std::move(c)), tail_(tail_bound) {}

  std::size_t size() const noexcept { return c_.size(); }
  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  std::vector<cplx>& coeffs() noexcept { return c_; }
  cplx operator[](std::size_t n) const noexcept { return n < c_.size() ? c_[n] : cplx{}; }
  cplx& operator[](std::size_t n) { return c_[n]; }
  double tail_bound() const noexcept { return tail_; }
  void set_tail_bound(double t) noexcept { tail_ = t; }

  cplx eval(cplx z) const noexcept;
  /// Multiplication by z; the result is one coefficient longer.
  HardyVec shift() const;
  /// Backward shift S*.
  HardyVec backshift() const;
  /// Zero-padded or truncated copy.
  HardyVec resized(std::size_t n) const;

  HardyVec& operator+=(const HardyVec& o);
  HardyVec& operator-=(const HardyVec& o);
  HardyVec& operator*=(cplx s);
  friend HardyVec operator+(HardyVec a, const HardyVec& b) { return a += b; }
  friend HardyVec operator-(HardyVec a, const HardyVec& b) { return a -= b; }
  friend HardyVec operator*(cplx s, HardyVec a) { return a *= s; }
  friend HardyVec operator*(HardyVec a, cplx s) { return a *= s; }

 private:
  std::vector<cplx> c_;
  double tail_ = 0.0;
};

/// sum f_n conj(g_n), sizes may differ.
cplx inner(const HardyVec& f, const HardyVec& g) noexcept;
double norm(const HardyVec& f) noexcept;

HardyVec from_poly(const ComplexPoly& p, std::size_t n);

/// Taylor coefficients of f (poles must lie outside the closed disk).
HardyVec expand(const RationalFn& f, std::size_t n, const Tolerances& tol = {});

/// Coefficients of (1 - conj(w) z)^{-j}: C(n+j-1, j-1) conj(w)^n.
HardyVec cauchy_kernel_power(cplx w, int j, std::size_t n);

/// d^j/d(conj w)^j of (1 - conj(w) z)^{-1} = j! z^j (1 - conj(w) z)^{-j-1},
/// coefficients n!/(n-j)! conj(w)^{n-j}.
HardyVec cauchy_kernel_wbar_derivative(cplx w, int j, std::size_t n);

// Truncated Toeplitz operators with polynomial data. Each keeps the length of
// its input. The conjugate-symbol versions are exact for inputs whose support
// fits in the truncation.

/// T_s f
HardyVec multiply(const ComplexPoly& s, const HardyVec& f);
/// T_{1/t} f by forward recursion; t(0) != 0 and stable when t has no roots in the disk.
HardyVec divide(const ComplexPoly& t, const HardyVec& f);
/// T_{conj s} f,  (T f)_n = sum_k conj(s_k) f_{n+k}.
HardyVec conj_multiply(const ComplexPoly& s, const HardyVec& f);
/// Solves T_{conj t} y = u by backward recursion with y vanishing past the truncation.
HardyVec conj_divide(const ComplexPoly& t, const HardyVec& u);

/// f or conj(f) for a rational f analytic on the closed disk.
struct Symbol {
  RationalFn f;
  bool conjugate = false;
  static Symbol analytic(RationalFn f) { return {std::move(f), false}; }
  static Symbol conjugate_of(RationalFn f) { return {std::move(f), true}; }
};

HardyVec toeplitz_apply(const Symbol& symbol, const HardyVec& f, const Tolerances& tol = {});

/// Throws kNotInH2 unless every root of t lies outside the closed disk.
void require_outside_closed_disk(const ComplexPoly& t, const Tolerances& tol, const char* what);

}  // namespace hbspace
