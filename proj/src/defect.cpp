#include "hbspace/defect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hbspace/error.hpp"
#include "hbspace/subspace.hpp"

namespace hbspace {

namespace {

constexpr int kLambdaGrid = 64;
constexpr int kFrameSize = 32;
constexpr int kLimitFirst = 4;
constexpr int kLimitLast = 14;
constexpr int kDichotomyFirst = 4;
constexpr int kDichotomyLast = 12;
constexpr double kDichotomyGrowth = 10.0;
constexpr int kIsometrySamples = 20;
const double kApproachAngles[] = {0.0, std::numbers::pi / 4, -std::numbers::pi / 4};

auto hb_ip = [](const HbElement& x, const HbElement& y) { return hb_inner(x, y); };

double margin_of(const Pair& pair, cplx lambda, cplx bz0) {
  double m = std::abs(lambda - bz0);
  for (const auto& u : pair.unimodular_set()) m = std::min(m, std::abs(lambda - u.value));
  return m;
}

cplx lambda_grid(int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / kLambdaGrid); }

std::string point_label(cplx z, int m) {
  std::ostringstream os;
  os.precision(10);
  os << "z0=" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i,m=" << m;
  return os.str();
}

std::vector<HbElement> boundary_basis(const HbSpace& space, cplx lambda, const BoundaryPoint& pt) {
  std::vector<HbElement> out;
  for (int m = 0; m < pt.order; ++m) out.push_back(boundary_kernel(space, lambda, pt.z, m));
  return out;
}

std::vector<HbElement> mapped(const HbSpace& space, cplx lambda, const std::vector<HardyVec>& v) {
  std::vector<HbElement> out;
  for (const auto& x : v) out.push_back(w_lambda_apply(space, lambda, x.resized(space.N())));
  return out;
}

double condition_number(const Eigen::MatrixXcd& g) {
  if (g.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(g.rows() - 1);
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<BoundaryPoint> detect_boundary_structure(const Pair& pair) {
  const Tolerances& tol = pair.tolerances();
  std::vector<BoundaryPoint> out;
  if (pair.a().num().degree() < 1) return out;
  for (const auto& cl : root_clusters(pair.a().num(), tol)) {
    const double d = std::abs(std::abs(cl.z) - 1.0);
    if (d <= tol.cluster) {
      const cplx z = cl.z / std::abs(cl.z);
      auto same = std::find_if(out.begin(), out.end(), [&](const BoundaryPoint& p) {
        return std::abs(p.z - z) <= std::sqrt(tol.cluster);
      });
      if (same != out.end()) same->order += cl.multiplicity; else out.push_back({z, cl.multiplicity});
    } else if (d < 10.0 * tol.cluster) {
      throw Error(ErrorCode::kAmbiguousBoundaryZero, "a has a zero too close to the circle to classify", d);
    }
  }
  std::sort(out.begin(), out.end(), [](const BoundaryPoint& x, const BoundaryPoint& y) {
    return std::arg(x.z) < std::arg(y.z);
  });
  return out;
}

LambdaChoice choose_lambda(const Pair& pair, cplx z0) {
  const cplx bz0 = pair.b()(z0);
  const double floor = pair.tolerances().cluster;
  int best = -1;
  double best_margin = floor;
  for (int k = 0; k < kLambdaGrid; ++k) {
    const double m = margin_of(pair, lambda_grid(k), bz0);
    if (m > best_margin + 1e-12) {
      best = k;
      best_margin = m;
    }
  }
  if (best < 0) throw Error(ErrorCode::kNoAdmissibleLambda, "no admissible lambda on the grid");
  return {lambda_grid(best), alternative_lambda(pair, z0, lambda_grid(best)), best_margin};
}

cplx alternative_lambda(const Pair& pair, cplx z0, cplx lambda) {
  const cplx bz0 = pair.b()(z0);
  int alt = -1;
  double alt_margin = pair.tolerances().cluster;
  for (int k = 0; k < kLambdaGrid; ++k) {
    const cplx mu = lambda_grid(k);
    if (std::abs(mu - lambda) < 0.5) continue;
    const double m = margin_of(pair, mu, bz0);
    if (m > alt_margin + 1e-12) {
      alt = k;
      alt_margin = m;
    }
  }
  if (alt < 0) throw Error(ErrorCode::kNoAdmissibleLambda, "no second admissible lambda on the grid");
  return lambda_grid(alt);
}

DefectReport defect_space(const Pair& pair, std::size_t n) {
  const Tolerances& tol = pair.tolerances();
  DefectReport rep;
  auto space = std::make_shared<const HbSpace>(pair, n);
  rep.space = space;
  rep.notes.push_back("ker(Y* - conj z_j)^{n_j} is taken as the span of the n_j boundary kernels of orders 0..n_j-1");
  rep.notes.push_back("rigidity of f^2 is not checked");

  std::vector<HbElement> alt_basis;
  for (const BoundaryPoint& pt : detect_boundary_structure(pair)) {
    PointReport pr;
    pr.point = pt;
    const LambdaChoice lc = choose_lambda(pair, pt.z);
    pr.lambda = lc.lambda;
    pr.lambda_alt = lc.alternative;

    const auto basis = boundary_basis(*space, pr.lambda, pt);
    for (int m = 0; m < pt.order; ++m) rep.labels.push_back(point_label(pt.z, m));
    rep.basis.insert(rep.basis.end(), basis.begin(), basis.end());
    const auto alt = boundary_basis(*space, pr.lambda_alt, pt);
    alt_basis.insert(alt_basis.end(), alt.begin(), alt.end());

    const SubspaceBasis cand = a_kernel_candidates(pair, pr.lambda, pt.z, pt.order, n);
    pr.candidate_residual = *std::max_element(cand.residuals.begin(), cand.residuals.end());
    pr.angle_to_operator_kernel = max_principal_angle(basis, mapped(*space, pr.lambda, cand.vectors), hb_ip);

    const OpMatrix a = a_lambda_matrix(pair, pr.lambda, n);
    const NullspaceReport ns = numeric_nullspace(a, pt.z, pt.order, tol.null);
    const NullspaceReport ns_next = numeric_nullspace(a, pt.z, pt.order + 1, tol.null);
    pr.nullspace_dim = ns.dim;
    pr.nullspace_dim_next = ns_next.dim;
    pr.gap_ratio = std::min(ns.gap_ratio, ns_next.gap_ratio);
    if (ns.ambiguous || ns_next.ambiguous) rep.notes.push_back("ambiguous numerical rank at " + point_label(pt.z, pt.order));

    rep.dimension += pt.order;
    rep.nullspace_dimension += ns.dim;
    rep.angle_to_operator_kernel = std::max(rep.angle_to_operator_kernel, pr.angle_to_operator_kernel);
    rep.points.push_back(pr);
  }

  rep.gram = gram_matrix(rep.basis, hb_ip);
  rep.gram_condition = condition_number(rep.gram);
  if (rep.basis.empty()) return rep;

  rep.lambda_independence_angle = max_principal_angle(rep.basis, alt_basis, hb_ip);

  // Orthogonality to M(a), tested on a z^n.
  HardyVec az = expand(pair.a(), n, tol);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const HbElement e = space->element(az);
    const double en = hb_norm(e);
    for (const auto& v : rep.basis) {
      rep.ortho_residual = std::max(rep.ortho_residual, std::abs(hb_inner(v, e)) / (hb_norm(v) * en));
    }
    az = az.shift().resized(n);
  }

  // Y* v is in span(basis) iff <v, z phi>_b = 0 for phi orthogonal to the basis.
  std::vector<HbElement> frame = rep.basis;
  for (int j = 0; j < kFrameSize; ++j) {
    HardyVec mono(n);
    mono[j] = 1.0;
    frame.push_back(space->element(mono));
  }
  frame = orthonormalize(frame, hb_ip);
  const std::size_t dim = orthonormalize(rep.basis, hb_ip).size();
  std::vector<HbElement> shifted;
  for (std::size_t j = dim; j < frame.size(); ++j) shifted.push_back(shift_element(*space, frame[j]));
  for (const auto& v : rep.basis) {
    double acc = 0.0;
    for (const auto& zphi : shifted) acc += std::norm(hb_inner(v, zphi));
    rep.ystar_residual = std::max(rep.ystar_residual, std::sqrt(acc) / hb_norm(v));
  }
  return rep;
}

VerifyRecord verify_boundary_kernels(const Pair& pair, cplx z0, int k, std::size_t n, std::uint64_t seed,
                             std::optional<cplx> lambda) {
  z0 = require_unimodular(z0, "z0");
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  const Tolerances& tol = pair.tolerances();
  VerifyRecord rec;
  rec.z0 = z0;
  rec.k = k;
  if (lambda) {
    rec.lambda = require_unimodular(*lambda, "lambda");
    rec.lambda_alt = alternative_lambda(pair, z0, rec.lambda);
  } else {
    const LambdaChoice lc = choose_lambda(pair, z0);
    rec.lambda = lc.lambda;
    rec.lambda_alt = lc.alternative;
  }
  rec.k_max = membership(pair, rec.lambda, z0).k_max;
  rec.precondition_met = k <= rec.k_max;
  const HbSpace base(pair, n);

  // (c) blow-up of the first order without a boundary kernel.
  rec.dichotomy_order = rec.k_max + 1;
  for (int s = kDichotomyFirst; s <= kDichotomyLast; ++s) {
    const cplx w = approach_point(z0, s);
    const HbSpace space(pair, approach_truncation(n, w));
    rec.dichotomy_steps.push_back(s);
    rec.dichotomy_norms.push_back(hb_norm(deriv_kernel(space, w, rec.dichotomy_order)));
  }
  rec.dichotomy_growth = rec.dichotomy_norms.back() / rec.dichotomy_norms.front();
  rec.dichotomy_passed = rec.dichotomy_growth >= kDichotomyGrowth;
  if (!rec.dichotomy_passed) rec.failures.push_back("dichotomy: growth below 10x");

  if (!rec.precondition_met) {
    rec.failures.push_back("precondition: k exceeds k_max = " + std::to_string(rec.k_max));
    rec.passed = false;
    return rec;
  }

  // (a) limits along three nontangential sequences.
  for (int m = 0; m <= k; ++m) {
    for (double phi : kApproachAngles) {
      LimitTrace tr;
      tr.m = m;
      tr.phi = phi;
      for (int s = kLimitFirst; s <= kLimitLast; ++s) {
        const cplx w = approach_point(z0, s, phi);
        const HbSpace space(pair, approach_truncation(n, w));
        const HbElement vw = deriv_kernel(space, w, m);
        const HbElement v0 = boundary_kernel(space, rec.lambda, z0, m);
        tr.steps.push_back(s);
        tr.distances.push_back(hb_norm(vw - v0));
        tr.norms.push_back(hb_norm(vw));
        tr.limit_norm = hb_norm(v0);
      }
      tr.threshold = tol.limit * tr.limit_norm;
      tr.decreasing = true;
      for (std::size_t i = 1; i < tr.distances.size(); ++i) {
        if (tr.distances[i] > tr.distances[i - 1] * (1.0 + 1e-9)) tr.decreasing = false;
      }
      tr.passed = tr.decreasing && tr.distances.back() <= tr.threshold;
      if (!tr.passed) {
        std::ostringstream os;
        os << "limit: m=" << m << " phi=" << phi << " final distance " << tr.distances.back()
           << " exceeds " << tr.threshold;
        rec.failures.push_back(os.str());
      }
      rec.limits.push_back(std::move(tr));
    }
  }

  // (b) span{v^0..v^k} = W_lambda ker(A_lambda - conj z0)^{k+1}.
  std::vector<HbElement> kernels;
  for (int m = 0; m <= k; ++m) kernels.push_back(boundary_kernel(base, rec.lambda, z0, m));
  const NullspaceReport ns = numeric_nullspace(a_lambda_matrix(pair, rec.lambda, n), z0, k + 1, tol.null);
  rec.span_nullspace_dim = ns.dim;
  rec.span_angle = max_principal_angle(kernels, mapped(base, rec.lambda, ns.basis.vectors), hb_ip);
  rec.span_passed = ns.dim == k + 1 && rec.span_angle <= tol.angle;
  if (!rec.span_passed) rec.failures.push_back("span: angle or null-space dimension mismatch");

  std::vector<HbElement> alt;
  for (int m = 0; m <= k; ++m) alt.push_back(boundary_kernel(base, rec.lambda_alt, z0, m));
  rec.lambda_independence_angle = max_principal_angle(kernels, alt, hb_ip);
  rec.lambda_independence_passed = rec.lambda_independence_angle <= tol.angle;
  if (!rec.lambda_independence_passed) rec.failures.push_back("lambda independence: angle too large");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int t = 0; t < kIsometrySamples; ++t) {
    HardyVec f(n);
    for (std::size_t j = 0; j < std::min<std::size_t>(n / 4, 32); ++j) f[j] = {g(rng), g(rng)};
    const double dev = std::abs(hb_norm(w_lambda_apply(base, rec.lambda, f)) - norm(f)) / norm(f);
    rec.isometry_deviation = std::max(rec.isometry_deviation, dev);
  }
  rec.isometry_passed = rec.isometry_deviation <= tol.iso;
  if (!rec.isometry_passed) rec.failures.push_back("isometry: relative deviation too large");

  rec.passed = rec.dichotomy_passed && rec.span_passed && rec.lambda_independence_passed &&
               rec.isometry_passed &&
               std::all_of(rec.limits.begin(), rec.limits.end(), [](const LimitTrace& t) { return t.passed; });
  return rec;
}

}  // namespace hbspace
