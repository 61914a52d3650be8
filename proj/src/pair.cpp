#include "hbspace/pair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbspace/error.hpp"

namespace hbspace {

namespace {

// Roots of r closer than this to the circle are circle zeros; fejer_riesz has
// already snapped them onto the circle, so this only absorbs re-rooting noise.
constexpr double kCircleBand = 1e-6;

std::string format(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

cplx require_unimodular(cplx z, const char* what) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be unimodular");
  }
  return z / std::abs(z);
}

Pair pair_from_b(const RationalFn& b, const Tolerances& tol) {
  if (b.is_constant()) throw Error(ErrorCode::kInvalidArgument, "b must be nonconstant");
  if (b.den().degree() >= 1) {
    for (const auto& pole : root_clusters(b.den(), tol)) {
      const double m = std::abs(pole.z);
      if (m < 1.0 - tol.cluster) throw Error(ErrorCode::kNotInH2, "b has a pole in the open disk");
      if (m <= 1.0 + tol.cluster) throw Error(ErrorCode::kPoleOnBoundary, "b has a pole on the circle");
    }
  }

  Pair out;
  out.tol_ = tol;
  out.b_ = b;
  out.p_ = b.num();
  out.q_ = b.den();

  const auto grid = circle_grid(tol.grid);
  double sup_b = 0.0;
  double defect = 0.0;
  for (const auto& z : grid) {
    const double bz = std::abs(b(z));
    sup_b = std::max(sup_b, bz);
    defect = std::max(defect, std::abs(1.0 - bz * bz));
  }
  if (sup_b > 1.0 + tol.pos) {
    throw Error(ErrorCode::kNotInUnitBall, "sup |b| on the circle exceeds 1", sup_b - 1.0);
  }
  if (defect <= tol.pos) {
    throw Error(ErrorCode::kExtremeSymbol, "|b| = 1 on the circle (b is inner, hence extreme)", defect);
  }

  const LaurentSymbol w = abs_square_on_circle(out.q_) - abs_square_on_circle(out.p_);
  out.r_ = fejer_riesz(w, tol);
  // a(0) = r(0)/q(0) > 0.
  const cplx q0 = out.q_[0];
  out.r_ *= q0 / std::abs(q0);
  out.a_ = RationalFn(out.r_, out.q_, tol);

  double residual = 0.0;
  for (const auto& z : grid) {
    residual = std::max(residual, std::abs(std::norm(out.a_(z)) + std::norm(b(z)) - 1.0));
  }
  out.grid_residual_ = residual;
  if (residual > tol.pair) {
    throw Error(ErrorCode::kNumerical, "pair identity |a|^2 + |b|^2 = 1 fails on the grid", residual);
  }

  if (out.r_.degree() >= 1) {
    for (const auto& cl : root_clusters(out.r_, tol)) {
      if (std::abs(std::abs(cl.z) - 1.0) > kCircleBand) continue;
      const cplx z = cl.z / std::abs(cl.z);
      out.unimodular_.push_back({z, b(z)});
    }
  }
  return out;
}

FLambda f_lambda(const Pair& pair, cplx lambda) {
  lambda = require_unimodular(lambda, "lambda");
  const Tolerances& tol = pair.tolerances();
  const ComplexPoly den = pair.q() - std::conj(lambda) * pair.p();
  if (den.is_zero()) throw Error(ErrorCode::kInvalidArgument, "1 - conj(lambda) b vanishes identically");

  FLambda out;
  out.f = RationalFn(pair.r(), den, tol);
  for (const auto& u : pair.unimodular_set()) {
    if (std::abs(u.value - lambda) <= tol.cluster) out.pole_on_circle = true;
  }
  if (out.f.den().degree() >= 1) {
    for (const auto& cl : root_clusters(out.f.den(), tol)) {
      if (std::abs(cl.z) <= 1.0 + kCircleBand) {
        out.pole_on_circle = true;
        out.circle_poles.push_back(cl.z);
      }
    }
  }
  return out;
}

AcVerdict mu_is_absolutely_continuous(const Pair& pair, cplx lambda) {
  lambda = require_unimodular(lambda, "lambda");
  // Atoms of mu_lambda sit where b(z) = lambda on the circle; such z has |b(z)| = 1,
  // so it is a circle zero of a.
  AcVerdict out;
  for (const auto& u : pair.unimodular_set()) {
    if (std::abs(u.value - lambda) <= pair.tolerances().cluster) {
      out.absolutely_continuous = false;
      out.atoms.push_back(u.z);
    }
  }
  return out;
}

MembershipVerdict membership(const Pair& pair, cplx lambda, cplx z0) {
  lambda = require_unimodular(lambda, "lambda");
  z0 = require_unimodular(z0, "z0");
  const Tolerances& tol = pair.tolerances();
  MembershipVerdict out;
  out.b_at_z0 = pair.b()(z0);
  if (std::abs(out.b_at_z0 - lambda) <= tol.cluster) {
    throw Error(ErrorCode::kHypothesisViolation, "lambda equals b(z0) = " + format(out.b_at_z0));
  }
  const AcVerdict ac = mu_is_absolutely_continuous(pair, lambda);
  if (!ac.absolutely_continuous) {
    throw Error(ErrorCode::kNotAbsolutelyContinuous,
                "mu_lambda has an atom at " + format(ac.atoms.front()));
  }
  out.order_of_a = ord_at(pair.a(), z0, tol);
  out.k_max = out.order_of_a - 1;
  out.reasons.push_back("a has a zero of order " + std::to_string(out.order_of_a) + " at z0");
  out.reasons.push_back("1 - conj(lambda) b(z0) = " + format(1.0 - std::conj(lambda) * out.b_at_z0) +
                        " is nonzero");
  out.reasons.push_back(out.k_max >= 0 ? "F_lambda / (1 - conj(z0) z)^(k+1) is in H^2 for k <= " +
                                             std::to_string(out.k_max)
                                       : "F_lambda / (1 - conj(z0) z) is not in H^2");
  return out;
}

}  // namespace hbspace
