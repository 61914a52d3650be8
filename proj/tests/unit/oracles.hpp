#pragma once
// Independent reference computations used only by the tests. None of these go
// through the library's own algorithms beyond basic polynomial evaluation.

#include <Eigen/Eigenvalues>
#include <complex>
#include <vector>

#include "hbspace/poly.hpp"

namespace oracle {

using hbspace::ComplexPoly;
using hbspace::cplx;

inline std::vector<cplx> companion_eigenvalues(const ComplexPoly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
  // Frobenius form with the coefficients in the first row.
  for (int j = 0; j < n; ++j) m(0, j) = -p[n - 1 - j] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

}  // namespace oracle

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Outer polynomial h of degree `degree` with |h|^2 = w on the circle, built from
// the cepstrum: h = exp(c_0/2 + sum_{n>=1} c_n z^n), c_n the Fourier
// coefficients of log w. Requires w > 0 on the circle.
inline ComplexPoly cepstral_outer(const std::function<double(double)>& w, int degree, int m = 1 << 14) {
  Eigen::FFT<double> fft;
  std::vector<cplx> samples(m);
  for (int k = 0; k < m; ++k) samples[k] = std::log(w(2.0 * std::numbers::pi * k / m));
  std::vector<cplx> cep;
  fft.fwd(cep, samples);
  for (auto& c : cep) c /= static_cast<double>(m);
  // Analytic half of the cepstrum, evaluated back on the grid and exponentiated.
  std::vector<cplx> half(m);
  half[0] = 0.5 * cep[0];
  for (int n = 1; n < m / 2; ++n) half[n] = cep[n];
  std::vector<cplx> values;
  fft.inv(values, half);
  for (auto& v : values) v = std::exp(v * static_cast<double>(m));
  std::vector<cplx> coeffs;
  fft.fwd(coeffs, values);
  std::vector<cplx> out(degree + 1);
  for (int n = 0; n <= degree; ++n) out[n] = coeffs[n] / static_cast<double>(m);
  return ComplexPoly(out);
}

// d^j/dz^j d^m/d(conj w)^m of K(z, w) = (1 - conj(b(w)) b(z)) / (1 - conj(w) z) at
// z = w, by a double Cauchy integral on circles of radius rho about w and conj w.
inline cplx kernel_mixed_derivative(const std::function<cplx(cplx)>& b, cplx w, int j, int m,
                                    double rho, int points = 128) {
  auto bsharp = [&](cplx eta) { return std::conj(b(std::conj(eta))); };
  const cplx eta0 = std::conj(w);
  cplx acc{};
  for (int s = 0; s < points; ++s) {
    const cplx ds = std::polar(rho, 2.0 * std::numbers::pi * s / points);
    const cplx z = w + ds;
    for (int t = 0; t < points; ++t) {
      const cplx dt = std::polar(rho, 2.0 * std::numbers::pi * t / points);
      const cplx eta = eta0 + dt;
      const cplx k = (1.0 - bsharp(eta) * b(z)) / (1.0 - eta * z);
      acc += k / (std::pow(ds, j) * std::pow(dt, m));
    }
  }
  return acc * std::tgamma(j + 1.0) * std::tgamma(m + 1.0) / static_cast<double>(points * points);
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace oracle
