#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hbspace/hb.hpp"
#include "hbspace/operators.hpp"

namespace hbspace {

struct BoundaryPoint {
  cplx z;     // circle zero of a
  int order;  // its multiplicity
};

/// Circle zeros of a with multiplicities. Throws kAmbiguousBoundaryZero for a
/// root whose distance to the circle lies in (tol.cluster, 10 tol.cluster).
std::vector<BoundaryPoint> detect_boundary_structure(const Pair& pair);

struct LambdaChoice {
  cplx lambda;       // best point of the 64-point grid
  cplx alternative;  // best admissible grid point at distance >= 0.5 from lambda
  double margin;     // distance of lambda to b(z0) and to the unimodular values of b
};

/// Grid point maximizing the distance to b(z0) and to b's unimodular values;
/// ties go to the lowest index e^{2 pi i k / 64}.
LambdaChoice choose_lambda(const Pair& pair, cplx z0);
/// Best admissible grid point at distance >= 0.5 from a given lambda.
cplx alternative_lambda(const Pair& pair, cplx z0, cplx lambda);

struct PointReport {
  BoundaryPoint point;
  cplx lambda;
  cplx lambda_alt;
  int nullspace_dim = 0;       // dim ker(A_lambda - conj z)^order, numerically
  int nullspace_dim_next = 0;  // same at power order+1; equal when saturated
  double gap_ratio = 0.0;
  double candidate_residual = 0.0;
  double angle_to_operator_kernel = 0.0;
};

struct DefectReport {
  std::shared_ptr<const HbSpace> space;
  std::vector<PointReport> points;
  std::vector<HbElement> basis;    // per point, boundary kernels of order 0..order-1
  std::vector<std::string> labels;
  Eigen::MatrixXcd gram;
  double gram_condition = 1.0;
  double ortho_residual = 0.0;     // max |<v, a z^n>_b| / (||v||_b ||a z^n||_b), n <= N/2
  double ystar_residual = 0.0;     // distance of Y* v from span(basis), relative
  double angle_to_operator_kernel = 0.0;
  double lambda_independence_angle = 0.0;
  int dimension = 0;
  int nullspace_dimension = 0;
  std::vector<std::string> notes;
};

DefectReport defect_space(const Pair& pair, std::size_t n);

struct LimitTrace {
  int m = 0;
  double phi = 0.0;
  std::vector<int> steps;
  std::vector<double> distances;  // ||deriv_kernel(w_n, m) - boundary_kernel(z0, m)||_b
  std::vector<double> norms;      // ||deriv_kernel(w_n, m)||_b
  double limit_norm = 0.0;
  double threshold = 0.0;
  bool decreasing = false;
  bool passed = false;
};

struct VerifyRecord {
  cplx z0;
  int k = 0;
  int k_max = -1;
  cplx lambda;
  cplx lambda_alt;
  bool precondition_met = false;

  std::vector<LimitTrace> limits;  // (a)
  double span_angle = 0.0;         // (b)
  int span_nullspace_dim = 0;
  bool span_passed = false;

  int dichotomy_order = 0;         // (c)
  std::vector<int> dichotomy_steps;
  std::vector<double> dichotomy_norms;
  double dichotomy_growth = 0.0;
  bool dichotomy_passed = false;

  double isometry_deviation = 0.0;
  bool isometry_passed = false;
  double lambda_independence_angle = 0.0;
  bool lambda_independence_passed = false;

  bool passed = false;
  std::vector<std::string> failures;
};

/// Checks, for m <= k: nontangential convergence of the derivative kernels to
/// the boundary kernels, the span identity with W_lambda ker(A_lambda - conj z0)^{k+1},
/// blow-up of the order k_max+1 kernels, W_lambda isometry on seeded random
/// polynomials, and independence of the boundary kernels from lambda. When
/// k > k_max only the blow-up check runs. Without an explicit lambda the grid
/// choice is used.
VerifyRecord verify_boundary_kernels(const Pair& pair, cplx z0, int k, std::size_t n, std::uint64_t seed = 0,
                             std::optional<cplx> lambda = std::nullopt);

}  // namespace hbspace
