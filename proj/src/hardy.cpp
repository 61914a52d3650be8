#include "hbspace/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hbspace/error.hpp"

namespace hbspace {

cplx HardyVec::eval(cplx z) const noexcept {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

HardyVec HardyVec::shift() const {
  std::vector<cplx> c(c_.size() + 1);
  std::copy(c_.begin(), c_.end(), c.begin() + 1);
  return HardyVec(std::move(c), tail_);
}

HardyVec HardyVec::backshift() const {
  if (c_.empty()) return *this;
  std::vector<cplx> c(c_.size());
  std::copy(c_.begin() + 1, c_.end(), c.begin());
  return HardyVec(std::move(c), tail_);
}

HardyVec HardyVec::resized(std::size_t n) const {
  std::vector<cplx> c(n);
  std::copy_n(c_.begin(), std::min(n, c_.size()), c.begin());
  double tail = tail_;
  if (n < c_.size()) {
    double dropped = 0.0;
    for (std::size_t k = n; k < c_.size(); ++k) dropped += std::norm(c_[k]);
    tail = std::hypot(tail, std::sqrt(dropped));
  }
  return HardyVec(std::move(c), tail);
}

HardyVec& HardyVec::operator+=(const HardyVec& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  tail_ += o.tail_;
  return *this;
}

HardyVec& HardyVec::operator-=(const HardyVec& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  tail_ += o.tail_;
  return *this;
}

HardyVec& HardyVec::operator*=(cplx s) {
  for (auto& x : c_) x *= s;
  tail_ *= std::abs(s);
  return *this;
}

cplx inner(const HardyVec& f, const HardyVec& g) noexcept {
  const std::size_t n = std::min(f.size(), g.size());
  cplx acc{};
  for (std::size_t k = 0; k < n; ++k) acc += f.coeffs()[k] * std::conj(g.coeffs()[k]);
  return acc;
}

double norm(const HardyVec& f) noexcept {
  double acc = 0.0;
  for (const auto& x : f.coeffs()) acc += std::norm(x);
  return std::sqrt(acc);
}

HardyVec from_poly(const ComplexPoly& p, std::size_t n) {
  std::vector<cplx> c(n);
  double dropped = 0.0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    if (k < n) c[k] = p.coeffs()[k]; else dropped += std::norm(p.coeffs()[k]);
  }
  return HardyVec(std::move(c), std::sqrt(dropped));
}

void require_outside_closed_disk(const ComplexPoly& t, const Tolerances& tol, const char* what) {
  if (t.is_zero()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is the zero polynomial");
  if (t.degree() < 1) return;
  for (const auto& cl : root_clusters(t, tol)) {
    if (std::abs(cl.z) <= 1.0 + tol.cluster) {
      throw Error(ErrorCode::kNotInH2, std::string(what) + " has a root in the closed disk",
                  std::abs(cl.z));
    }
  }
}

namespace {

// Cauchy estimate |c_n| <= M(R) R^{-n} on a few radii between 1 and the nearest
// pole, summed over n >= N in l^2.
double tail_estimate(const RationalFn& f, std::size_t n, const Tolerances& tol) {
  if (f.den().degree() < 1) {
    double dropped = 0.0;
    for (std::size_t k = n; k < f.num().coeffs().size(); ++k) {
      dropped += std::norm(f.num().coeffs()[k] / f.den()[0]);
    }
    return std::sqrt(dropped);
  }
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& cl : root_clusters(f.den(), tol)) rho = std::min(rho, std::abs(cl.z));
  double best = std::numeric_limits<double>::infinity();
  for (double t : {0.25, 0.5, 0.75, 0.9}) {
    const double radius = 1.0 + t * (std::min(rho, 1e3) - 1.0);
    double m = 0.0;
    for (int k = 0; k < 256; ++k) {
      m = std::max(m, std::abs(f(std::polar(radius, 2.0 * std::numbers::pi * k / 256))));
    }
    m *= 2.0;  // sampling of the maximum
    const double log_tail = std::log(m) - static_cast<double>(n) * std::log(radius) -
                            0.5 * std::log1p(-1.0 / (radius * radius));
    best = std::min(best, std::exp(log_tail));
  }
  return best;
}

}  // namespace

HardyVec expand(const RationalFn& f, std::size_t n, const Tolerances& tol) {
  require_outside_closed_disk(f.den(), tol, "denominator");
  HardyVec out = divide(f.den(), from_poly(f.num(), n));
  out.set_tail_bound(tail_estimate(f, n, tol));
  return out;
}

HardyVec cauchy_kernel_power(cplx w, int j, std::size_t n) {
  if (j < 1) throw Error(ErrorCode::kInvalidArgument, "kernel power must be >= 1");
  std::vector<cplx> c(n);
  const cplx wb = std::conj(w);
  if (n > 0) c[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = c[k - 1] * wb * (static_cast<double>(k + j - 1) / static_cast<double>(k));
  }
  return HardyVec(std::move(c));
}

HardyVec cauchy_kernel_wbar_derivative(cplx w, int j, std::size_t n) {
  if (j < 0) throw Error(ErrorCode::kInvalidArgument, "derivative order must be >= 0");
  std::vector<cplx> c(n);
  const cplx wb = std::conj(w);
  if (static_cast<std::size_t>(j) < n) {
    c[j] = std::tgamma(j + 1.0);
    for (std::size_t k = j + 1; k < n; ++k) {
      c[k] = c[k - 1] * wb * (static_cast<double>(k) / static_cast<double>(k - j));
    }
  }
  return HardyVec(std::move(c));
}

HardyVec multiply(const ComplexPoly& s, const HardyVec& f) {
  const auto& fc = f.coeffs();
  const int n = static_cast<int>(fc.size());
  const int d = s.degree();
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) {
    cplx acc{};
    for (int j = 0; j <= std::min(d, k); ++j) acc += s[j] * fc[k - j];
    out[k] = acc;
  }
  return HardyVec(std::move(out), f.tail_bound() * s.norm_inf() * (d + 1));
}

HardyVec divide(const ComplexPoly& t, const HardyVec& f) {
  if (t[0] == cplx{}) throw Error(ErrorCode::kNotInH2, "division by a polynomial vanishing at 0");
  const auto& fc = f.coeffs();
  const int n = static_cast<int>(fc.size());
  const int d = t.degree();
  const cplx inv0 = 1.0 / t[0];
  std::vector<cplx> y(n);
  for (int k = 0; k < n; ++k) {
    cplx acc = fc[k];
    for (int j = 1; j <= std::min(d, k); ++j) acc -= t[j] * y[k - j];
    y[k] = acc * inv0;
  }
  return HardyVec(std::move(y), f.tail_bound());
}

HardyVec conj_multiply(const ComplexPoly& s, const HardyVec& f) {
  const auto& fc = f.coeffs();
  const int n = static_cast<int>(fc.size());
  const int d = s.degree();
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) {
    cplx acc{};
    for (int j = 0; j <= d && k + j < n; ++j) acc += std::conj(s[j]) * fc[k + j];
    out[k] = acc;
  }
  return HardyVec(std::move(out), f.tail_bound() * s.norm_inf() * (d + 1));
}

HardyVec conj_divide(const ComplexPoly& t, const HardyVec& u) {
  if (t[0] == cplx{}) throw Error(ErrorCode::kNotInH2, "conjugate division by a polynomial vanishing at 0");
  const auto& uc = u.coeffs();
  const int n = static_cast<int>(uc.size());
  const int d = t.degree();
  const cplx inv0 = 1.0 / std::conj(t[0]);
  std::vector<cplx> y(n);
  for (int k = n - 1; k >= 0; --k) {
    cplx acc = uc[k];
    for (int j = 1; j <= d && k + j < n; ++j) acc -= std::conj(t[j]) * y[k + j];
    y[k] = acc * inv0;
  }
  return HardyVec(std::move(y), u.tail_bound());
}

HardyVec toeplitz_apply(const Symbol& symbol, const HardyVec& f, const Tolerances& tol) {
  try {
    require_outside_closed_disk(symbol.f.den(), tol, "symbol denominator");
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnsupportedSymbol, std::string("symbol is not bounded analytic: ") + e.what());
  }
  if (symbol.conjugate) return conj_divide(symbol.f.den(), conj_multiply(symbol.f.num(), f));
  return divide(symbol.f.den(), multiply(symbol.f.num(), f));
}

}  // namespace hbspace
