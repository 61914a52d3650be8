#include "hbspace/hb.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>

#include "hbspace/error.hpp"

namespace hbspace {

namespace {

std::atomic<std::uint64_t> next_space_id{1};

constexpr std::size_t kMaxTruncation = std::size_t{1} << 21;

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

void require_same_space(const HbElement& f, const HbElement& g) {
  if (f.space != g.space) throw Error(ErrorCode::kInvalidArgument, "elements belong to different H(b) spaces");
}

void require_interior(cplx w) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::kInvalidArgument, "kernel point must lie in the open disk");
}

void require_absolutely_continuous(const Pair& pair, cplx lambda) {
  const AcVerdict ac = mu_is_absolutely_continuous(pair, lambda);
  if (!ac.absolutely_continuous) {
    throw Error(ErrorCode::kNotAbsolutelyContinuous, "mu_lambda has an atom, W_lambda is not an isometry");
  }
}

// b^{(i)}(w) for i = 0..m.
std::vector<cplx> derivatives_at(const RationalFn& f, cplx w, int m) {
  auto t = f.taylor_at(w, m);
  for (int i = 0; i <= m; ++i) t[i] *= factorial(i);
  return t;
}

// T_r conj(g) - T_p conj(f) measured in the banded form, relative to ||f||.
double plus_residual(const Pair& pair, const HardyVec& f, const HardyVec& g) {
  const HardyVec lhs = conj_multiply(pair.r(), g.resized(f.size()));
  const HardyVec rhs = conj_multiply(pair.p(), f);
  const double scale = norm(f);
  if (scale == 0.0) return norm(g);
  return norm(lhs - rhs) / scale;
}

}  // namespace

// ---------------------------------------------------------------- HbElement

HbElement& HbElement::operator+=(const HbElement& o) {
  require_same_space(*this, o);
  value += o.value;
  plus += o.plus;
  plus_residual += o.plus_residual;
  return *this;
}

HbElement& HbElement::operator-=(const HbElement& o) {
  require_same_space(*this, o);
  value -= o.value;
  plus -= o.plus;
  plus_residual += o.plus_residual;
  return *this;
}

HbElement& HbElement::operator*=(cplx s) {
  value *= s;
  plus *= s;
  return *this;
}

cplx hb_inner(const HbElement& f, const HbElement& g) {
  require_same_space(f, g);
  return inner(f.value, g.value) + inner(f.plus, g.plus);
}

double hb_norm(const HbElement& f) { return std::sqrt(std::max(hb_inner(f, f).real(), 0.0)); }

// ---------------------------------------------------------------- plus-part

PlusSolve plus_part(const Pair& pair, const HardyVec& f) {
  // T_conj(a) = T_conj(1/q) T_conj(r) and T_conj(b) = T_conj(1/q) T_conj(p).
  HardyVec g = conj_divide(pair.r(), conj_multiply(pair.p(), f));
  return {g, plus_residual(pair, f, g)};
}

// ---------------------------------------------------------------- HbSpace

HbSpace::HbSpace(Pair pair, std::size_t n) : pair_(std::move(pair)), n_(n), id_(next_space_id++) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "truncation must be at least 2");
  const HardyVec bv = expand(pair_.b(), n_, tol());
  b_ = element(bv);
  backshift_b_ = element(bv.backshift());
}

HbElement HbSpace::element(HardyVec f) const {
  PlusSolve s = plus_part(pair_, f);
  if (s.residual > tol().plus) {
    throw Error(ErrorCode::kNotInHbAtTruncation, "plus-part residual exceeds tolerance", s.residual);
  }
  return {std::move(f), std::move(s.plus), s.residual, id_};
}

HbElement HbSpace::element(HardyVec f, HardyVec plus) const {
  const double residual = plus_residual(pair_, f, plus);
  return {std::move(f), std::move(plus), residual, id_};
}

// ---------------------------------------------------------------- kernels

HbElement kernel(const HbSpace& space, cplx w, std::size_t n) { return deriv_kernel(space, w, 0, n); }

HbElement deriv_kernel(const HbSpace& space, cplx w, int m, std::size_t n) {
  require_interior(w);
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "derivative order must be >= 0");
  if (n == 0) n = space.N();
  const Pair& pair = space.pair();
  const auto db = derivatives_at(pair.b(), w, m);

  // sum_j C(m,j) conj(b^{(m-j)}(w)) d^j k_w; the kernel is D^m k_w - b * sum and
  // its plus-part is a * sum.
  HardyVec sum(n);
  for (int j = 0; j <= m; ++j) {
    sum += binomial(m, j) * std::conj(db[m - j]) * cauchy_kernel_wbar_derivative(w, j, n);
  }
  HardyVec value = cauchy_kernel_wbar_derivative(w, m, n) - divide(pair.q(), multiply(pair.p(), sum));
  HardyVec plus = divide(pair.q(), multiply(pair.r(), sum));
  return space.element(std::move(value), std::move(plus));
}

RationalFn boundary_preimage(const Pair& pair, cplx lambda, cplx z0, int m) {
  lambda = require_unimodular(lambda, "lambda");
  z0 = require_unimodular(z0, "z0");
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "derivative order must be >= 0");
  const MembershipVerdict mv = membership(pair, lambda, z0);
  if (mv.k_max < m) {
    throw Error(ErrorCode::kKernelLimitDoesNotExist,
                "boundary kernel of order " + std::to_string(m) + " needs a zero of order " +
                    std::to_string(m + 1) + " of a at z0, found " + std::to_string(mv.order_of_a));
  }
  const FLambda fl = f_lambda(pair, lambda);
  const ComplexPoly& s = fl.f.num();
  const auto db = derivatives_at(pair.b(), z0, m);

  // Q[i] = s / (1 - conj(z0) z)^{i+1}, a polynomial since ord_{z0} s >= m+1.
  std::vector<ComplexPoly> quotient(m + 1);
  ComplexPoly cur = s;
  cplx scale = 1.0;
  for (int i = 0; i <= m; ++i) {
    cur = cur.deflate(z0);
    scale /= -std::conj(z0);
    quotient[i] = scale * cur;
  }
  ComplexPoly g = ((1.0 - lambda * std::conj(db[0])) * factorial(m)) * ComplexPoly::monomial(m) * quotient[m];
  for (int j = 1; j <= m; ++j) {
    g -= (binomial(m, j) * lambda * std::conj(db[j]) * factorial(m - j)) *
         ComplexPoly::monomial(m - j) * quotient[m - j];
  }
  return RationalFn(g, fl.f.den(), pair.tolerances());
}

HbElement boundary_kernel(const HbSpace& space, cplx lambda, cplx z0, int m, std::size_t n) {
  if (n == 0) n = space.N();
  const RationalFn g = boundary_preimage(space.pair(), lambda, z0, m);
  return w_lambda_apply(space, lambda, expand(g, n, space.tol()));
}

cplx boundary_kernel_direct(const Pair& pair, cplx z0, int m, cplx z) {
  require_interior(z);
  const auto db = derivatives_at(pair.b(), z0, m);
  const cplx c = 1.0 - std::conj(z0) * z;
  auto dk = [&](int j) { return factorial(j) * std::pow(z, j) / std::pow(c, j + 1); };
  cplx sum{};
  for (int j = 0; j <= m; ++j) sum += binomial(m, j) * std::conj(db[m - j]) * dk(j);
  return dk(m) - pair.b()(z) * sum;
}

// ---------------------------------------------------------------- W_lambda

HbElement w_lambda_apply(const HbSpace& space, cplx lambda, const HardyVec& f) {
  lambda = require_unimodular(lambda, "lambda");
  const Pair& pair = space.pair();
  require_absolutely_continuous(pair, lambda);
  const FLambda fl = f_lambda(pair, lambda);
  const ComplexPoly d = pair.q() - std::conj(lambda) * pair.p();

  const HardyVec u = conj_divide(fl.f.den(), conj_multiply(fl.f.num(), f));
  HardyVec value = divide(pair.q(), multiply(d, u));
  // (W f)+ = conj(lambda) (a u - f).
  HardyVec plus = std::conj(lambda) * (divide(pair.q(), multiply(pair.r(), u)) - f);
  return space.element(std::move(value), std::move(plus));
}

HardyVec w_lambda_preimage(const HbSpace& space, cplx lambda, const HardyVec& h) {
  lambda = require_unimodular(lambda, "lambda");
  const Pair& pair = space.pair();
  require_absolutely_continuous(pair, lambda);
  const FLambda fl = f_lambda(pair, lambda);
  const ComplexPoly d = pair.q() - std::conj(lambda) * pair.p();
  // u = h / (1 - conj(lambda) b), then T_conj(s) f = T_conj(t) u.
  const HardyVec u = divide(d, multiply(pair.q(), h));
  return conj_divide(fl.f.num(), conj_multiply(fl.f.den(), u));
}

// ---------------------------------------------------------------- X*

HbElement shift_element(const HbSpace& space, const HbElement& h) {
  if (h.space != space.id()) throw Error(ErrorCode::kInvalidArgument, "element belongs to another space");
  return space.element(h.value.shift());
}

HbElement x_star(const HbSpace& space, const HbElement& h) {
  const cplx c = hb_inner(h, space.backshift_b_element());
  return shift_element(space, h) - c * space.b_element();
}

// ---------------------------------------------------------------- V_b

VbResult v_b_apply(const HbSpace& space, const HardyVec& q) {
  const std::size_t n = space.N();
  std::size_t deg = 0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] != cplx{}) deg = k;
  }
  if (4 * deg > n) throw Error(ErrorCode::kInvalidArgument, "V_b needs a polynomial of degree <= N/4");

  const Pair& pair = space.pair();
  VbResult out;
  out.singular_part_dropped = !mu_is_absolutely_continuous(pair, 1.0).absolutely_continuous;
  const FLambda fl = f_lambda(pair, 1.0);
  if (!fl.circle_poles.empty()) {
    throw Error(ErrorCode::kUnsupportedSymbol, "density of the Clark measure has a pole on the circle");
  }

  // Fourier coefficients of q |F_1|^2 on 8N points.
  const std::size_t m = 8 * n;
  std::vector<cplx> samples(m);
  double mass = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    cplx qz{};
    for (std::size_t j = deg + 1; j-- > 0;) qz = qz * z + q[j];
    const double density = std::norm(fl.f(z));
    samples[k] = qz * density;
    mass += std::norm(qz) * density;
  }
  out.mu_norm = std::sqrt(mass / static_cast<double>(m));
  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum;
  fft.fwd(spectrum, samples);
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = spectrum[k] / static_cast<double>(m);

  const ComplexPoly one_minus_b_num = pair.q() - pair.p();
  HardyVec value = divide(pair.q(), multiply(one_minus_b_num, HardyVec(std::move(c))));
  out.element = space.element(std::move(value));
  return out;
}

// ---------------------------------------------------------------- approach

cplx approach_point(cplx z0, int n, double phi) {
  return z0 * (1.0 - std::ldexp(1.0, -n) * std::polar(1.0, phi));
}

std::size_t approach_truncation(std::size_t n, cplx w) {
  const double gap = 1.0 - std::abs(w);
  if (!(gap > 0.0)) throw Error(ErrorCode::kInvalidArgument, "approach point must lie in the open disk");
  const double wanted = std::min(48.0 / gap, static_cast<double>(kMaxTruncation));
  return std::max(n, std::bit_ceil(static_cast<std::size_t>(std::ceil(wanted))));
}

}  // namespace hbspace
