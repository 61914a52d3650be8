#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hbspace/poly.hpp"

namespace hbspace {

// Subspace utilities generic over the vector type V (HardyVec or HbElement) and
// an inner product `ip(V, V) -> cplx`, linear in the first argument.

template <class V, class Inner>
Eigen::MatrixXcd gram_matrix(const std::vector<V>& v, Inner ip) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      g(i, j) = ip(v[j], v[i]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

/// Modified Gram-Schmidt, two passes. Vectors whose residual falls below
/// `drop` times their original norm are discarded.
template <class V, class Inner>
std::vector<V> orthonormalize(const std::vector<V>& in, Inner ip, double drop = 1e-12) {
  std::vector<V> out;
  for (const V& x : in) {
    V y = x;
    const double n0 = std::sqrt(std::max(ip(y, y).real(), 0.0));
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const V& e : out) y -= ip(y, e) * e;
    }
    const double n1 = std::sqrt(std::max(ip(y, y).real(), 0.0));
    if (n1 <= drop * n0) continue;
    y *= cplx{1.0 / n1};
    out.push_back(std::move(y));
  }
  return out;
}

/// Sines of the principal angles between span(u) and span(w), largest first,
/// from the part of each orthonormalized u that w does not capture. Accurate
/// for small angles, where arccos of the cosines is not.
template <class V, class Inner>
std::vector<double> principal_sines(const std::vector<V>& u, const std::vector<V>& w, Inner ip) {
  const auto qu = orthonormalize(u, ip);
  const auto qw = orthonormalize(w, ip);
  std::vector<V> residual;
  residual.reserve(qu.size());
  for (const V& x : qu) {
    V r = x;
    for (const V& e : qw) r -= ip(x, e) * e;
    residual.push_back(std::move(r));
  }
  if (residual.empty()) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_matrix(residual, ip));
  std::vector<double> s;
  for (int i = static_cast<int>(es.eigenvalues().size()) - 1; i >= 0; --i) {
    s.push_back(std::sqrt(std::clamp(es.eigenvalues()(i), 0.0, 1.0)));
  }
  return s;
}

/// Largest principal angle in radians; pi/2 when the dimensions differ.
template <class V, class Inner>
double max_principal_angle(const std::vector<V>& u, const std::vector<V>& w, Inner ip) {
  if (orthonormalize(u, ip).size() != orthonormalize(w, ip).size()) return std::numbers::pi / 2;
  const auto s = principal_sines(u, w, ip);
  return s.empty() ? 0.0 : std::asin(s.front());
}

}  // namespace hbspace
