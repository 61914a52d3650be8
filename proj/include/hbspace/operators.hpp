#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hbspace/hb.hpp"

namespace hbspace {

/// Dense matrix of an operator on the first N Taylor coefficients.
struct OpMatrix {
  Eigen::MatrixXcd entries;
  std::string label;

  HardyVec apply(const HardyVec& f) const;
};

OpMatrix shift_matrix(std::size_t n);
OpMatrix backshift_matrix(std::size_t n);

/// A_lambda = S* - F_lambda(0)^{-1} (S* F_lambda) (x) 1; throws kFormulaUndefined
/// when F_lambda(0) = 0.
OpMatrix a_lambda_matrix(const Pair& pair, cplx lambda, std::size_t n);
/// Same operator applied to a vector without forming the matrix.
HardyVec a_lambda_apply(const Pair& pair, cplx lambda, const HardyVec& f);

struct SubspaceBasis {
  std::vector<HardyVec> vectors;
  bool orthonormalized = false;
  Eigen::MatrixXcd gram;
  std::vector<double> residuals;  // per vector, where the producer defines one
};

/// Orthonormalized span of F_lambda / (1 - conj(z0) z)^j, j = 1..k, which spans
/// ker(A_lambda - conj(z0))^k when a vanishes to order >= k at z0. residuals[j]
/// is ||(A_lambda - conj z0)^k v_j||_2.
SubspaceBasis a_kernel_candidates(const Pair& pair, cplx lambda, cplx z0, int k, std::size_t n);

struct NullspaceReport {
  int dim = 0;
  std::vector<double> singular_values;  // all, descending
  double gap_ratio = 0.0;  // smallest kept over largest discarded singular value
  bool ambiguous = false;  // gap_ratio < 10
  SubspaceBasis basis;
};

/// Right singular vectors of (M - conj(z0))^k with sigma <= tol * sigma_max.
NullspaceReport numeric_nullspace(const OpMatrix& m, cplx z0, int k, double tol);

/// |<W A f, h>_b - <W f, z h>_b| / (||f||_2 ||h||_b), the weak form of
/// W_lambda A_lambda = Y* W_lambda.
double intertwine_residual(const HbSpace& space, cplx lambda, const HardyVec& f, const HbElement& h);

cplx f_lambda_at_zero(const Pair& pair, cplx lambda);

}  // namespace hbspace
