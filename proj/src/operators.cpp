#include "hbspace/operators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbspace/error.hpp"
#include "hbspace/subspace.hpp"

namespace hbspace {

namespace {

Eigen::VectorXcd to_eigen(const HardyVec& f) {
  return Eigen::Map<const Eigen::VectorXcd>(f.coeffs().data(), static_cast<Eigen::Index>(f.size()));
}

HardyVec from_eigen(const Eigen::VectorXcd& v) {
  return HardyVec(std::vector<cplx>(v.data(), v.data() + v.size()));
}

std::string lambda_label(const char* name, cplx lambda) {
  std::ostringstream os;
  os << name << "(lambda=" << lambda.real() << (lambda.imag() < 0 ? "-" : "+") << std::abs(lambda.imag())
     << "i)";
  return os.str();
}

// S* F_lambda truncated to n, and F_lambda(0).
HardyVec backshift_f(const Pair& pair, cplx lambda, std::size_t n, cplx& f0) {
  const FLambda fl = f_lambda(pair, lambda);
  f0 = fl.f(0.0);
  if (std::abs(f0) <= pair.tolerances().cluster) {
    throw Error(ErrorCode::kFormulaUndefined, "F_lambda(0) = 0, A_lambda is undefined");
  }
  return expand(fl.f, n + 1, pair.tolerances()).backshift().resized(n);
}

}  // namespace

HardyVec OpMatrix::apply(const HardyVec& f) const {
  return from_eigen(entries * to_eigen(f.resized(static_cast<std::size_t>(entries.cols()))));
}

OpMatrix shift_matrix(std::size_t n) {
  OpMatrix m{Eigen::MatrixXcd::Zero(n, n), "S"};
  for (std::size_t i = 1; i < n; ++i) m.entries(i, i - 1) = 1.0;
  return m;
}

OpMatrix backshift_matrix(std::size_t n) {
  OpMatrix m{Eigen::MatrixXcd::Zero(n, n), "S*"};
  for (std::size_t i = 1; i < n; ++i) m.entries(i - 1, i) = 1.0;
  return m;
}

cplx f_lambda_at_zero(const Pair& pair, cplx lambda) { return f_lambda(pair, lambda).f(0.0); }

OpMatrix a_lambda_matrix(const Pair& pair, cplx lambda, std::size_t n) {
  lambda = require_unimodular(lambda, "lambda");
  cplx f0;
  const HardyVec sf = backshift_f(pair, lambda, n, f0);
  OpMatrix m = backshift_matrix(n);
  m.label = lambda_label("A", lambda);
  for (std::size_t i = 0; i < n; ++i) m.entries(i, 0) -= sf[i] / f0;
  return m;
}

HardyVec a_lambda_apply(const Pair& pair, cplx lambda, const HardyVec& f) {
  lambda = require_unimodular(lambda, "lambda");
  cplx f0;
  const HardyVec sf = backshift_f(pair, lambda, f.size(), f0);
  return f.backshift() - (f[0] / f0) * sf;
}

SubspaceBasis a_kernel_candidates(const Pair& pair, cplx lambda, cplx z0, int k, std::size_t n) {
  lambda = require_unimodular(lambda, "lambda");
  z0 = require_unimodular(z0, "z0");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "kernel power must be >= 1");
  const MembershipVerdict mv = membership(pair, lambda, z0);
  if (mv.k_max < k - 1) {
    throw Error(ErrorCode::kKernelLimitDoesNotExist,
                "F_lambda / (1 - conj(z0) z)^" + std::to_string(k) + " is not in H^2");
  }
  const FLambda fl = f_lambda(pair, lambda);
  std::vector<HardyVec> raw;
  ComplexPoly cur = fl.f.num();
  cplx scale = 1.0;
  for (int j = 1; j <= k; ++j) {
    cur = cur.deflate(z0);
    scale /= -std::conj(z0);
    raw.push_back(expand(RationalFn(scale * cur, fl.f.den(), pair.tolerances()), n, pair.tolerances()));
  }
  const auto ip = [](const HardyVec& x, const HardyVec& y) { return inner(x, y); };
  SubspaceBasis out;
  out.vectors = orthonormalize(raw, ip);
  out.orthonormalized = true;
  out.gram = gram_matrix(out.vectors, ip);
  const cplx zb = std::conj(z0);
  for (const auto& v : out.vectors) {
    HardyVec x = v;
    for (int i = 0; i < k; ++i) x = a_lambda_apply(pair, lambda, x) - zb * x;
    out.residuals.push_back(norm(x));
  }
  return out;
}

NullspaceReport numeric_nullspace(const OpMatrix& m, cplx z0, int k, double tol) {
  if (k < 1 || k > 8) throw Error(ErrorCode::kInvalidArgument, "power must lie in 1..8");
  const Eigen::Index n = m.entries.rows();
  const Eigen::MatrixXcd shifted = m.entries - std::conj(z0) * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd power = shifted;
  for (int i = 1; i < k; ++i) power = power * shifted;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(power, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  NullspaceReport out;
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double threshold = tol * s(0);
  int dim = 0;
  for (Eigen::Index i = n - 1; i >= 0 && s(i) <= threshold; --i) ++dim;
  out.dim = dim;
  // With an empty null space the gap is between the two smallest values.
  const Eigen::Index kept = dim == 0 ? n - 2 : n - dim - 1;
  const Eigen::Index discarded = kept + 1;
  if (kept >= 0 && discarded < n) {
    out.gap_ratio = s(discarded) > 0.0 ? s(kept) / s(discarded) : std::numeric_limits<double>::infinity();
  }
  out.ambiguous = out.gap_ratio < 10.0;

  for (int i = 0; i < dim; ++i) out.basis.vectors.push_back(from_eigen(svd.matrixV().col(n - 1 - i)));
  out.basis.orthonormalized = true;
  out.basis.gram = gram_matrix(out.basis.vectors, [](const HardyVec& x, const HardyVec& y) { return inner(x, y); });
  return out;
}

double intertwine_residual(const HbSpace& space, cplx lambda, const HardyVec& f, const HbElement& h) {
  const double scale = norm(f) * hb_norm(h);
  if (scale == 0.0) return 0.0;
  const HbElement lhs = w_lambda_apply(space, lambda, a_lambda_apply(space.pair(), lambda, f));
  const HbElement rhs = w_lambda_apply(space, lambda, f);
  const HbElement zh = shift_element(space, h);
  return std::abs(hb_inner(lhs, h) - hb_inner(rhs, zh)) / scale;
}

}  // namespace hbspace
