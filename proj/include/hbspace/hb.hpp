#pragma once

#include <cstddef>
#include <cstdint>

#include "hbspace/hardy.hpp"
#include "hbspace/pair.hpp"

namespace hbspace {

/// A function in H(b) together with its plus-part f+, the H^2 solution of
/// T_conj(a) f+ = T_conj(b) f. Then <f,g>_b = <f,g>_2 + <f+,g+>_2.
struct HbElement {
  HardyVec value;
  HardyVec plus;
  double plus_residual = 0.0;
  std::uint64_t space = 0;

  HbElement& operator+=(const HbElement& o);
  HbElement& operator-=(const HbElement& o);
  HbElement& operator*=(cplx s);
  friend HbElement operator+(HbElement a, const HbElement& b) { return a += b; }
  friend HbElement operator-(HbElement a, const HbElement& b) { return a -= b; }
  friend HbElement operator*(cplx s, HbElement a) { return a *= s; }
};

/// H(b) for a fixed pair at default truncation N. Holds precomputed b and S*b
/// as elements; it is immutable after construction.
class HbSpace {
 public:
  HbSpace(Pair pair, std::size_t n);

  const Pair& pair() const noexcept { return pair_; }
  std::size_t N() const noexcept { return n_; }
  const Tolerances& tol() const noexcept { return pair_.tolerances(); }
  std::uint64_t id() const noexcept { return id_; }

  const HbElement& b_element() const noexcept { return b_; }
  const HbElement& backshift_b_element() const noexcept { return backshift_b_; }

  /// Wraps f with its plus-part; throws kNotInHbAtTruncation when the solve
  /// residual exceeds tol().plus * ||f||.
  HbElement element(HardyVec f) const;
  /// Wraps f and a known plus-part.
  HbElement element(HardyVec f, HardyVec plus) const;

 private:
  Pair pair_;
  std::size_t n_;
  std::uint64_t id_;
  HbElement b_;
  HbElement backshift_b_;
};

struct PlusSolve {
  HardyVec plus;
  double residual;  // ||T_conj(a) plus - T_conj(b) f||_2 / ||f||_2
};

/// Exact for f supported in the truncation: solves T_conj(r) g = T_conj(p) f.
PlusSolve plus_part(const Pair& pair, const HardyVec& f);

cplx hb_inner(const HbElement& f, const HbElement& g);
double hb_norm(const HbElement& f);

/// k_w^b = (1 - conj(b(w)) b) / (1 - conj(w) z), |w| < 1. n = 0 uses space.N().
HbElement kernel(const HbSpace& space, cplx w, std::size_t n = 0);
/// d^m/d(conj w)^m of k_w^b; reproduces f^(m)(w).
HbElement deriv_kernel(const HbSpace& space, cplx w, int m, std::size_t n = 0);

/// Nontangential limit of deriv_kernel(., m) at the circle point z0, built as
/// W_lambda of an explicit rational H^2 preimage.
HbElement boundary_kernel(const HbSpace& space, cplx lambda, cplx z0, int m, std::size_t n = 0);
/// The W_lambda-preimage used by boundary_kernel, as a rational function.
RationalFn boundary_preimage(const Pair& pair, cplx lambda, cplx z0, int m);
/// Pointwise value of the Leibniz formula for the derivative kernel at w = z0,
/// evaluated at |z| < 1.
cplx boundary_kernel_direct(const Pair& pair, cplx z0, int m, cplx z);

/// W_lambda f = T_{1 - conj(lambda) b} T_conj(F_lambda) f; an isometry of H^2
/// onto H(b) when mu_lambda is absolutely continuous.
HbElement w_lambda_apply(const HbSpace& space, cplx lambda, const HardyVec& f);
/// Inverse of W_lambda on its range.
HardyVec w_lambda_preimage(const HbSpace& space, cplx lambda, const HardyVec& h);

/// X* h = z h - <h, S*b>_b b.
HbElement x_star(const HbSpace& space, const HbElement& h);
/// z h as an element (plus-part re-solved).
HbElement shift_element(const HbSpace& space, const HbElement& h);

struct VbResult {
  HbElement element;
  double mu_norm = 0.0;                // ||q|| in L^2 of the absolutely continuous part of mu
  bool singular_part_dropped = false;  // mu has atoms; only its a.c. part was used
};

/// V_b q = (1 - b) * Cauchy transform of q dmu for the Clark measure at lambda = 1,
/// by quadrature on 8N circle points. q must be a polynomial of degree <= N/4.
VbResult v_b_apply(const HbSpace& space, const HardyVec& q);

/// z0 (1 - 2^-n e^{i phi}); inside the Stolz angle with C = 2 for |phi| <= pi/4.
cplx approach_point(cplx z0, int n, double phi = 0.0);
/// Truncation large enough that kernels at w lose nothing: at least n, and
/// about 48 / (1 - |w|), rounded up to a power of two, capped at 2^21.
std::size_t approach_truncation(std::size_t n, cplx w);

}  // namespace hbspace
