#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hbspace/config.hpp"

namespace hbspace {

using cplx = std::complex<double>;

/// Complex polynomial with coefficients in ascending degree. Exact trailing
/// zeros are stripped on construction, so the zero polynomial has no
/// coefficients and degree -1.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly constant(cplx c);
  static ComplexPoly monomial(std::size_t n, cplx c = 1.0);
  /// lead * prod (z - r_i)
  static ComplexPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  cplx operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : cplx{}; }
  cplx leading() const noexcept { return c_.empty() ? cplx{} : c_.back(); }

  cplx operator()(cplx z) const noexcept;
  ComplexPoly derivative(int order = 1) const;
  double norm_inf() const noexcept;
  /// Drops trailing coefficients with |c| <= rel_tol * ||p||_inf.
  ComplexPoly trimmed(double rel_tol) const;
  /// Coefficients of p(z0 + h) in powers of h.
  ComplexPoly taylor_shift(cplx z0) const;
  /// Quotient of p by (z - root); the remainder is returned through `remainder`.
  ComplexPoly deflate(cplx root, cplx* remainder = nullptr) const;

  ComplexPoly& operator+=(const ComplexPoly& o);
  ComplexPoly& operator-=(const ComplexPoly& o);
  ComplexPoly& operator*=(cplx s);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, cplx s) { return a *= s; }
  friend ComplexPoly operator*(cplx s, ComplexPoly a) { return a *= s; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator-(const ComplexPoly& a) { return a * cplx{-1.0}; }

 private:
  void normalize();
  std::vector<cplx> c_;
};

struct RootCluster {
  cplx z;
  int multiplicity;
};

/// All deg(p) roots with multiplicity. Simultaneous (Aberth-Ehrlich) iteration
/// with a companion-matrix fallback; numerically coincident roots are merged
/// into exact repeats when that does not degrade the reconstruction of p.
std::vector<cplx> roots(const ComplexPoly& p, const Tolerances& tol = {});
/// Same roots, grouped into distinct points with multiplicities.
std::vector<RootCluster> root_clusters(const ComplexPoly& p, const Tolerances& tol = {});

/// Ratio of polynomials, kept reduced (no common roots within tol.gcd) with a
/// monic denominator.
class RationalFn {
 public:
  RationalFn() : den_(ComplexPoly::constant(1.0)) {}
  RationalFn(ComplexPoly num, ComplexPoly den, const Tolerances& tol = {});
  explicit RationalFn(ComplexPoly num) : RationalFn(std::move(num), ComplexPoly::constant(1.0)) {}
  static RationalFn constant(cplx c) { return RationalFn(ComplexPoly::constant(c)); }

  const ComplexPoly& num() const noexcept { return num_; }
  const ComplexPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() <= 0; }

  cplx operator()(cplx z) const;
  /// t[j] = f^{(j)}(z0) / j!, j = 0..order. z0 must not be a pole.
  std::vector<cplx> taylor_at(cplx z0, int order) const;
  cplx derivative_at(cplx z0, int order) const;
  std::vector<cplx> poles(const Tolerances& tol = {}) const { return roots(den_, tol); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(cplx s, const RationalFn& a);
  friend RationalFn operator-(const RationalFn& a) { return cplx{-1.0} * a; }

 private:
  struct Unreduced {};
  RationalFn(ComplexPoly num, ComplexPoly den, Unreduced);
  ComplexPoly num_;
  ComplexPoly den_;
};

/// Coefficients c_n, n = -m..m, of a function on the unit circle.
class LaurentSymbol {
 public:
  LaurentSymbol() : c_{cplx{}} {}
  /// coeffs[k] holds c_{k-m}; coeffs must have odd length 2m+1.
  explicit LaurentSymbol(std::vector<cplx> coeffs);

  int m() const noexcept { return static_cast<int>(c_.size() / 2); }
  cplx coeff(int n) const noexcept;
  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  cplx operator()(cplx z) const noexcept;
  double value_at_angle(double theta) const noexcept { return (*this)(std::polar(1.0, theta)).real(); }
  /// max |c_{-n} - conj(c_n)|
  double hermitian_defect() const noexcept;
  double norm_inf() const noexcept;
  LaurentSymbol trimmed(double rel_tol) const;

  friend LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);

 private:
  std::vector<cplx> c_;
};

/// Fourier coefficients of |p(e^{i theta})|^2.
LaurentSymbol abs_square_on_circle(const ComplexPoly& p);

/// Outer polynomial r with |r|^2 = w on the circle, r(0) > 0. Roots of w on the
/// circle must have even multiplicity and are split equally.
ComplexPoly fejer_riesz(const LaurentSymbol& w, const Tolerances& tol = {});

/// Multiplicity of z0 as a zero of f.
int ord_at(const RationalFn& f, cplx z0, const Tolerances& tol = {});

/// Sample points e^{2 pi i k / n}.
std::vector<cplx> circle_grid(int n);

}  // namespace hbspace
