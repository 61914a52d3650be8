#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hbspace/defect.hpp"
#include "hbspace/error.hpp"
#include "hbspace/subspace.hpp"

using namespace hbspace;

namespace {

constexpr std::size_t kN = 512;

auto hb_ip = [](const HbElement& x, const HbElement& y) { return hb_inner(x, y); };

}  // namespace

TEST_CASE("boundary structure") {
  const auto c = detect_boundary_structure(fixture::canonical());
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].z - 1.0) < 1e-12);
  CHECK(c[0].order == 1);

  CHECK(detect_boundary_structure(fixture::half_z()).empty());

  const auto d = detect_boundary_structure(fixture::degree2());
  REQUIRE(d.size() == 1);
  CHECK(std::abs(d[0].z - 1.0) < 1e-6);
  CHECK(d[0].order == 2);
}

TEST_CASE("a zero just inside the ambiguity band is rejected") {
  // a = c (1 - z / r) with r - 1 = 3 tol.cluster. The factorization snaps roots
  // within 1e-6 of the circle onto it, so the band is probed with a coarser tol.
  Tolerances tol;
  tol.cluster = 1e-5;
  const double r = 1.0 + 3e-5;
  const ComplexPoly a = 0.5 * ComplexPoly{1.0, -1.0 / r};
  const ComplexPoly b = oracle::cepstral_outer([&](double t) { return 1.0 - std::norm(a(std::polar(1.0, t))); }, 1);
  try {
    detect_boundary_structure(pair_from_b(RationalFn(b), tol));
    FAIL("expected an ambiguity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAmbiguousBoundaryZero);
  }
}

TEST_CASE("lambda selection is deterministic and admissible") {
  const LambdaChoice c = choose_lambda(fixture::canonical(), 1.0);
  CHECK(std::abs(c.lambda + 1.0) < 1e-15);
  CHECK(std::abs(c.alternative - c.lambda) >= 0.5);
  CHECK(std::abs(c.margin - 2.0) < 1e-12);
  const LambdaChoice again = choose_lambda(fixture::canonical(), 1.0);
  CHECK(again.lambda == c.lambda);
  CHECK(again.alternative == c.alternative);

  const Pair d = fixture::degree2();
  const LambdaChoice l = choose_lambda(d, 1.0);
  CHECK(std::abs(l.lambda - d.b()(1.0)) > d.tolerances().cluster);
  CHECK(mu_is_absolutely_continuous(d, l.lambda).absolutely_continuous);
}

TEST_CASE("defect space of the canonical pair is spanned by a constant") {
  const DefectReport r = defect_space(fixture::canonical(), kN);
  CHECK(r.dimension == 1);
  CHECK(r.nullspace_dimension == 1);
  REQUIRE(r.basis.size() == 1);
  // The order-0 boundary kernel at 1 is (1 - conj b(1) b)/(1 - z) = 1/2.
  const HbElement half = r.space->element(fixture::monomial(0, kN) * cplx{0.5});
  CHECK(hb_norm(r.basis[0] - half) < 1e-10);
  CHECK(r.ortho_residual < 1e-7);
  CHECK(r.ystar_residual < 1e-6);
  CHECK(r.angle_to_operator_kernel <= 1e-6);
  CHECK(r.lambda_independence_angle < 1e-8);
  CHECK(r.gram_condition == doctest::Approx(1.0));
  CHECK(r.points[0].nullspace_dim == r.points[0].nullspace_dim_next);
}

TEST_CASE("no boundary zeros gives a trivial defect space") {
  const DefectReport r = defect_space(fixture::half_z(), kN);
  CHECK(r.dimension == 0);
  CHECK(r.basis.empty());
  CHECK(r.points.empty());
}

TEST_CASE("defect space of a double boundary zero") {
  const DefectReport r = defect_space(fixture::degree2(), kN);
  CHECK(r.dimension == 2);
  CHECK(r.nullspace_dimension == 2);
  REQUIRE(r.basis.size() == 2);
  CHECK(r.angle_to_operator_kernel < 1e-5);
  CHECK(r.lambda_independence_angle < 1e-5);
  CHECK(r.ortho_residual < 1e-7);
  CHECK(r.ystar_residual < 1e-6);
  CHECK(r.gram_condition < 1e6);

  // Gram matrix is Hermitian positive definite.
  CHECK((r.gram - r.gram.adjoint()).norm() < 1e-12 * r.gram.norm());
  const auto sines = principal_sines(r.basis, r.basis, hb_ip);
  for (double s : sines) CHECK(s < 1e-10);
}

TEST_CASE("dichotomy at a point where a does not vanish") {
  // a(-1) = 1, so k_max = -1 and already the reproducing kernels blow up.
  const VerifyRecord v = verify_boundary_kernels(fixture::canonical(), -1.0, 0, kN);
  CHECK(v.k_max == -1);
  CHECK_FALSE(v.precondition_met);
  CHECK(v.dichotomy_order == 0);
  CHECK(v.dichotomy_growth >= 10.0);
  for (std::size_t i = 1; i < v.dichotomy_norms.size(); ++i) CHECK(v.dichotomy_norms[i] > v.dichotomy_norms[i - 1]);
}

TEST_CASE("precondition failure still reports the blow-up") {
  const VerifyRecord v = verify_boundary_kernels(fixture::canonical(), 1.0, 1, kN);
  CHECK(v.k_max == 0);
  CHECK_FALSE(v.precondition_met);
  CHECK_FALSE(v.passed);
  CHECK(v.dichotomy_order == 1);
  CHECK(v.dichotomy_growth >= 10.0);
  CHECK(v.dichotomy_passed);
  CHECK(v.limits.empty());
}

TEST_CASE("unimodularity is enforced") {
  CHECK_THROWS_AS(verify_boundary_kernels(fixture::canonical(), 0.5, 0, kN), Error);
}
