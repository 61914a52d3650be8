#include "hbspace/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hbspace/error.hpp"

namespace hbspace {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAberthIterations = 200;
// Single-linkage radius for candidate clusters of a multiple root. A root of
// multiplicity m is spread by roughly eps^(1/m), so this has to be generous;
// the reconstruction test below rejects merges of genuinely distinct roots.
constexpr double kClusterLink = 5e-3;
constexpr double kMergeAccept = 1e-11;
// Band around the unit circle used when splitting roots in the Fejer-Riesz factorization.
constexpr double kCircleBand = 1e-6;

struct HornerResult {
  cplx p;
  cplx dp;
  double bound;  // sum |c_k| |z|^k, the rounding scale of p(z)
};

HornerResult horner2(const std::vector<cplx>& c, cplx z) {
  const double az = std::abs(z);
  HornerResult h{c.back(), cplx{}, std::abs(c.back())};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    h.dp = h.dp * z + h.p;
    h.p = h.p * z + c[k];
    h.bound = h.bound * az + std::abs(c[k]);
  }
  return h;
}

std::vector<cplx> aberth(const ComplexPoly& p, bool& converged) {
  const auto& c = p.coeffs();
  const int n = p.degree();
  const cplx center = -c[n - 1] / (static_cast<double>(n) * c[n]);
  const ComplexPoly shifted = p.taylor_shift(center);
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ratio = std::abs(shifted[k] / shifted[n]);
    if (ratio > 0) radius = std::max(radius, std::pow(ratio, 1.0 / (n - k)));
  }
  if (radius == 0.0) radius = 1.0;

  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    z[i] = center + std::polar(radius, 2.0 * std::numbers::pi * i / n + 0.7);
  }
  std::vector<char> done(n, 0);
  converged = false;
  for (int it = 0; it < kMaxAberthIterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner2(c, z[i]);
      if (std::abs(h.p) <= 4.0 * n * kEps * h.bound) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      if (h.dp == cplx{}) {
        z[i] += std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.3 * (i + 1));
        continue;
      }
      const cplx ratio = h.p / h.dp;
      cplx repulsion{};
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      if (std::abs(step) <= kEps * std::abs(z[i])) done[i] = 1;
    }
    if (all_done) {
      converged = true;
      break;
    }
  }
  return z;
}

std::vector<cplx> companion_roots(const ComplexPoly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  // Newton polish, keeping a step only when it lowers the residual.
  for (auto& z : out) {
    for (int it = 0; it < 5; ++it) {
      const HornerResult h = horner2(p.coeffs(), z);
      if (h.dp == cplx{}) break;
      const cplx trial = z - h.p / h.dp;
      if (std::abs(p(trial)) < std::abs(h.p)) z = trial; else break;
    }
  }
  return out;
}

double reconstruction_error(const ComplexPoly& p, const std::vector<cplx>& r) {
  const ComplexPoly rebuilt = ComplexPoly::from_roots(r, p.leading());
  double err = 0.0;
  for (int k = 0; k <= std::max(p.degree(), rebuilt.degree()); ++k) {
    err = std::max(err, std::abs(rebuilt[k] - p[k]));
  }
  return err / p.norm_inf();
}

cplx polish_multiple(const ComplexPoly& p, cplx start, int m, double radius) {
  const ComplexPoly d = p.derivative(m - 1);
  const ComplexPoly dd = d.derivative();
  cplx z = start;
  for (int it = 0; it < 30; ++it) {
    const cplx den = dd(z);
    if (den == cplx{}) break;
    const cplx step = d(z) / den;
    const cplx next = z - step;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) ||
        std::abs(next - start) > 4.0 * radius + 1e-14 * (1.0 + std::abs(start))) {
      break;
    }
    z = next;
    if (std::abs(step) <= kEps * (1.0 + std::abs(z))) break;
  }
  return z;
}

std::vector<RootCluster> compute_clusters(const ComplexPoly& p_in, const Tolerances& tol) {
  if (p_in.degree() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "roots() needs a polynomial of degree >= 1");
  }
  // Exact zero roots are split off first.
  std::vector<cplx> coeffs = p_in.coeffs();
  int zero_mult = 0;
  while (coeffs.front() == cplx{}) {
    coeffs.erase(coeffs.begin());
    ++zero_mult;
  }
  const ComplexPoly p(coeffs);
  std::vector<RootCluster> clusters;
  if (zero_mult > 0) clusters.push_back({cplx{}, zero_mult});
  const int n = p.degree();
  if (n == 0) return clusters;
  if (n == 1) {
    clusters.push_back({-p[0] / p[1], 1});
    return clusters;
  }

  bool converged = false;
  std::vector<cplx> z = aberth(p, converged);
  if (!converged) z = companion_roots(p);

  // Union-find over candidate clusters.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) <= kClusterLink * std::max(1.0, std::abs(z[i]))) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  const double raw_error = reconstruction_error(p, z);
  std::vector<cplx> current = z;
  std::vector<char> merged(n, 0);
  std::vector<RootCluster> merged_clusters;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    cplx mean{};
    for (int i : g) mean += z[i];
    mean /= static_cast<double>(g.size());
    double radius = 0.0;
    for (int i : g) radius = std::max(radius, std::abs(z[i] - mean));
    const int m = static_cast<int>(g.size());
    const cplx center = polish_multiple(p, mean, m, radius);
    std::vector<cplx> trial = current;
    for (int i : g) trial[i] = center;
    if (reconstruction_error(p, trial) <= std::max(100.0 * raw_error, kMergeAccept)) {
      current = std::move(trial);
      for (int i : g) merged[i] = 1;
      merged_clusters.push_back({center, m});
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!merged[i]) clusters.push_back({current[i], 1});
  }
  clusters.insert(clusters.end(), merged_clusters.begin(), merged_clusters.end());

  const double scale = p_in.norm_inf();
  double worst = 0.0;
  for (const auto& cl : clusters) {
    const double bound = std::pow(1.0 + std::abs(cl.z), p_in.degree()) * scale;
    worst = std::max(worst, std::abs(p_in(cl.z)) / bound);
  }
  if (worst > tol.root) {
    throw Error(ErrorCode::kRootNonConvergence,
                "root residual exceeds tolerance after " + std::to_string(kMaxAberthIterations) +
                    " iterations and companion fallback",
                worst);
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (std::abs(a.z) != std::abs(b.z)) return std::abs(a.z) < std::abs(b.z);
    return std::arg(a.z) < std::arg(b.z);
  });
  return clusters;
}

}  // namespace

// ---------------------------------------------------------------- ComplexPoly

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { normalize(); }
ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : c_(coeffs) { normalize(); }

void ComplexPoly::normalize() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly(std::vector<cplx>{c}); }

ComplexPoly ComplexPoly::monomial(std::size_t n, cplx c) {
  std::vector<cplx> v(n + 1);
  v[n] = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const cplx r : roots) {
    c.push_back(cplx{});
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return ComplexPoly(std::move(c));
}

cplx ComplexPoly::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative(int order) const {
  std::vector<cplx> c = c_;
  for (int o = 0; o < order && !c.empty(); ++o) {
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
    c.pop_back();
  }
  return ComplexPoly(std::move(c));
}

double ComplexPoly::norm_inf() const noexcept {
  double m = 0.0;
  for (const auto& x : c_) m = std::max(m, std::abs(x));
  return m;
}

ComplexPoly ComplexPoly::trimmed(double rel_tol) const {
  const double threshold = rel_tol * norm_inf();
  std::vector<cplx> c = c_;
  while (!c.empty() && std::abs(c.back()) <= threshold) c.pop_back();
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::taylor_shift(cplx z0) const {
  std::vector<cplx> a = c_;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    for (int j = n - 2; j >= i; --j) a[j] += z0 * a[j + 1];
  }
  return ComplexPoly(std::move(a));
}

ComplexPoly ComplexPoly::deflate(cplx root, cplx* remainder) const {
  const int n = degree();
  if (n < 1) {
    if (remainder) *remainder = (*this)[0];
    return ComplexPoly{};
  }
  std::vector<cplx> q(n);
  cplx rem{};
  if (std::abs(root) <= 1.0) {
    q[n - 1] = c_[n];
    for (int k = n - 1; k >= 1; --k) q[k - 1] = c_[k] + root * q[k];
    rem = c_[0] + root * q[0];
  } else {
    q[0] = -c_[0] / root;
    for (int k = 1; k < n; ++k) q[k] = (q[k - 1] - c_[k]) / root;
    rem = c_[n] - q[n - 1];
  }
  if (remainder) *remainder = rem;
  return ComplexPoly(std::move(q));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
  const double scale = std::max(norm_inf(), o.norm_inf());
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  // Rounding-level cancellation of the top coefficients is treated as exact.
  while (!c_.empty() && std::abs(c_.back()) <= 8.0 * kEps * scale) c_.pop_back();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) { return *this += (o * cplx{-1.0}); }

ComplexPoly& ComplexPoly::operator*=(cplx s) {
  if (s == cplx{}) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return ComplexPoly{};
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return ComplexPoly(std::move(c));
}

// ---------------------------------------------------------------- roots

std::vector<RootCluster> root_clusters(const ComplexPoly& p, const Tolerances& tol) {
  return compute_clusters(p, tol);
}

std::vector<cplx> roots(const ComplexPoly& p, const Tolerances& tol) {
  std::vector<cplx> out;
  for (const auto& cl : compute_clusters(p, tol)) out.insert(out.end(), cl.multiplicity, cl.z);
  return out;
}

// ---------------------------------------------------------------- RationalFn

RationalFn::RationalFn(ComplexPoly num, ComplexPoly den, Unreduced)
    : num_(std::move(num)), den_(std::move(den)) {}

RationalFn::RationalFn(ComplexPoly num, ComplexPoly den, const Tolerances& tol) {
  if (den.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero denominator polynomial");
  if (num.is_zero()) {
    num_ = ComplexPoly{};
    den_ = ComplexPoly::constant(1.0);
    return;
  }
  if (num.degree() >= 1 && den.degree() >= 1) {
    auto num_roots = root_clusters(num, tol);
    const auto den_roots = root_clusters(den, tol);
    for (const auto& d : den_roots) {
      for (auto& nr : num_roots) {
        if (nr.multiplicity == 0) continue;
        if (std::abs(nr.z - d.z) > tol.gcd * std::max(1.0, std::abs(d.z))) continue;
        const int k = std::min(nr.multiplicity, d.multiplicity);
        const cplx mid = 0.5 * (nr.z + d.z);
        for (int i = 0; i < k; ++i) {
          num = num.deflate(mid);
          den = den.deflate(mid);
        }
        nr.multiplicity -= k;
        break;
      }
    }
  }
  const cplx lead = den.leading();
  num_ = num * (1.0 / lead);
  den_ = den * (1.0 / lead);
}

cplx RationalFn::operator()(cplx z) const { return num_(z) / den_(z); }

std::vector<cplx> RationalFn::taylor_at(cplx z0, int order) const {
  const ComplexPoly n = num_.taylor_shift(z0);
  const ComplexPoly d = den_.taylor_shift(z0);
  if (d[0] == cplx{}) throw Error(ErrorCode::kInvalidArgument, "Taylor expansion requested at a pole");
  std::vector<cplx> t(order + 1);
  for (int k = 0; k <= order; ++k) {
    cplx acc = n[k];
    for (int j = 1; j <= k; ++j) acc -= d[j] * t[k - j];
    t[k] = acc / d[0];
  }
  return t;
}

cplx RationalFn::derivative_at(cplx z0, int order) const {
  const auto t = taylor_at(z0, order);
  return t[order] * std::tgamma(order + 1.0);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_.coeffs() == b.den_.coeffs()) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by the zero function");
  return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn operator*(cplx s, const RationalFn& a) {
  if (s == cplx{}) return RationalFn{};
  return RationalFn(a.num_ * s, a.den_, RationalFn::Unreduced{});
}

// ---------------------------------------------------------------- LaurentSymbol

LaurentSymbol::LaurentSymbol(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.size() % 2 == 0) throw Error(ErrorCode::kInvalidArgument, "Laurent symbol needs 2m+1 coefficients");
}

cplx LaurentSymbol::coeff(int n) const noexcept {
  const int idx = n + m();
  if (idx < 0 || idx >= static_cast<int>(c_.size())) return cplx{};
  return c_[idx];
}

cplx LaurentSymbol::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc * std::pow(z, -m());
}

double LaurentSymbol::hermitian_defect() const noexcept {
  double d = 0.0;
  for (int n = 0; n <= m(); ++n) d = std::max(d, std::abs(coeff(-n) - std::conj(coeff(n))));
  return d;
}

double LaurentSymbol::norm_inf() const noexcept {
  double v = 0.0;
  for (const auto& x : c_) v = std::max(v, std::abs(x));
  return v;
}

LaurentSymbol LaurentSymbol::trimmed(double rel_tol) const {
  const double threshold = rel_tol * norm_inf();
  int keep = 0;
  for (int n = m(); n > 0; --n) {
    if (std::abs(coeff(n)) > threshold || std::abs(coeff(-n)) > threshold) {
      keep = n;
      break;
    }
  }
  std::vector<cplx> c(2 * keep + 1);
  for (int n = -keep; n <= keep; ++n) c[n + keep] = coeff(n);
  return LaurentSymbol(std::move(c));
}

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
  const int m = std::max(a.m(), b.m());
  std::vector<cplx> c(2 * m + 1);
  for (int n = -m; n <= m; ++n) c[n + m] = a.coeff(n) + b.coeff(n);
  return LaurentSymbol(std::move(c));
}

LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b) {
  const int m = std::max(a.m(), b.m());
  std::vector<cplx> c(2 * m + 1);
  for (int n = -m; n <= m; ++n) c[n + m] = a.coeff(n) - b.coeff(n);
  return LaurentSymbol(std::move(c));
}

LaurentSymbol abs_square_on_circle(const ComplexPoly& p) {
  const int d = p.degree();
  if (d < 0) return LaurentSymbol({cplx{}});
  std::vector<cplx> c(2 * d + 1);
  for (int n = 0; n <= d; ++n) {
    cplx acc{};
    for (int k = 0; k + n <= d; ++k) acc += p[k + n] * std::conj(p[k]);
    c[d + n] = acc;
    c[d - n] = std::conj(acc);
  }
  return LaurentSymbol(std::move(c));
}

std::vector<cplx> circle_grid(int n) {
  std::vector<cplx> g(n);
  for (int k = 0; k < n; ++k) g[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  return g;
}

ComplexPoly fejer_riesz(const LaurentSymbol& w_in, const Tolerances& tol) {
  const double scale = std::max(1.0, w_in.norm_inf());
  if (w_in.hermitian_defect() > 1e-12 * scale) {
    throw Error(ErrorCode::kNotSchurSymbol, "symbol is not real-valued on the circle",
                w_in.hermitian_defect());
  }
  std::vector<cplx> sym(w_in.coeffs().size());
  for (int n = -w_in.m(); n <= w_in.m(); ++n) {
    sym[n + w_in.m()] = 0.5 * (w_in.coeff(n) + std::conj(w_in.coeff(-n)));
  }
  const LaurentSymbol w = LaurentSymbol(std::move(sym)).trimmed(1e-13);

  double min_val = std::numeric_limits<double>::infinity();
  double max_val = 0.0;
  const auto grid = circle_grid(tol.grid);
  for (const auto& z : grid) {
    const double v = w(z).real();
    min_val = std::min(min_val, v);
    max_val = std::max(max_val, std::abs(v));
  }
  if (min_val < -tol.pos * scale) {
    throw Error(ErrorCode::kNotSchurSymbol, "symbol is negative on the circle", min_val);
  }

  const int m = w.m();
  if (m == 0) return ComplexPoly::constant(std::sqrt(std::max(w.coeff(0).real(), 0.0)));

  const ComplexPoly shifted(w.coeffs());  // z^m w(z)
  std::vector<cplx> outside;
  std::vector<RootCluster> band;
  int inside_count = 0;
  for (const auto& cl : root_clusters(shifted, tol)) {
    const double r = std::abs(cl.z);
    if (r > 1.0 + kCircleBand) {
      outside.insert(outside.end(), cl.multiplicity, cl.z);
    } else if (r < 1.0 - kCircleBand) {
      inside_count += cl.multiplicity;
    } else {
      band.push_back(cl);
    }
  }
  // Group near-circle roots that were not merged into exact repeats.
  std::vector<cplx> on_circle;
  std::vector<char> used(band.size(), 0);
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (used[i]) continue;
    int mult = 0;
    cplx acc{};
    for (std::size_t j = i; j < band.size(); ++j) {
      if (used[j] || std::abs(band[j].z - band[i].z) > 1e-3) continue;
      used[j] = 1;
      mult += band[j].multiplicity;
      acc += static_cast<double>(band[j].multiplicity) * band[j].z;
    }
    if (mult % 2 != 0) {
      throw Error(ErrorCode::kNotSchurSymbol, "odd-order zero of the symbol on the circle");
    }
    const cplx zeta = acc / std::abs(acc);
    on_circle.insert(on_circle.end(), mult / 2, zeta);
  }
  if (inside_count != static_cast<int>(outside.size())) {
    throw Error(ErrorCode::kNumerical, "symbol roots are not symmetric about the circle");
  }

  double log_gain = std::log(std::abs(shifted.leading()));
  for (const auto& rho : outside) log_gain -= std::log(std::abs(rho));
  std::vector<cplx> all = outside;
  all.insert(all.end(), on_circle.begin(), on_circle.end());
  ComplexPoly r = ComplexPoly::from_roots(all, std::exp(0.5 * log_gain));
  const cplx r0 = r[0];
  r *= std::conj(r0) / std::abs(r0);

  double worst = 0.0;
  for (const auto& z : grid) worst = std::max(worst, std::abs(std::norm(r(z)) - w(z).real()));
  if (worst > tol.fr * std::max(1.0, max_val)) {
    throw Error(ErrorCode::kNumerical, "Fejer-Riesz factor does not reproduce the symbol", worst);
  }
  return r;
}

int ord_at(const RationalFn& f, cplx z0, const Tolerances& tol) {
  const double radius = tol.cluster * std::max(1.0, std::abs(z0));
  if (f.den().degree() >= 1) {
    for (const auto& cl : root_clusters(f.den(), tol)) {
      if (std::abs(cl.z - z0) <= radius) {
        throw Error(ErrorCode::kPoleOnBoundary, "z0 is a pole of the rational function");
      }
    }
  }
  if (f.is_zero()) throw Error(ErrorCode::kInvalidArgument, "order of the zero function is undefined");
  if (f.num().degree() < 1) return 0;
  int count = 0;
  for (const auto& cl : root_clusters(f.num(), tol)) {
    if (std::abs(cl.z - z0) <= radius) count += cl.multiplicity;
  }
  return count;
}

}  // namespace hbspace
