#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "hbspace/error.hpp"

using namespace hbspace;

namespace {

double grid_identity(const Pair& p) {
  double worst = 0.0;
  for (const auto& z : circle_grid(4096)) {
    worst = std::max(worst, std::abs(std::norm(p.a()(z)) + std::norm(p.b()(z)) - 1.0));
  }
  return worst;
}

void check_outer(const Pair& p) {
  CHECK(std::abs(p.a()(0.0).imag()) < 1e-12);
  CHECK(p.a()(0.0).real() > 0.0);
  if (p.a().num().degree() >= 1) {
    for (const auto& z : oracle::companion_eigenvalues(p.a().num())) CHECK(std::abs(z) > 1.0 - 1e-6);
  }
}

}  // namespace

TEST_CASE("pair_from_b examples") {
  const Pair c = fixture::canonical();
  CHECK(c.a().num().degree() == 1);
  CHECK(std::abs(c.a()(0.0) - 0.5) < 1e-12);
  CHECK(std::abs(c.a()(0.3) - 0.35) < 1e-12);
  CHECK(c.grid_residual() < 1e-9);
  REQUIRE(c.unimodular_set().size() == 1);
  CHECK(std::abs(c.unimodular_set()[0].z - 1.0) < 1e-12);
  CHECK(std::abs(c.unimodular_set()[0].value - 1.0) < 1e-12);

  const Pair h = fixture::half_z();
  CHECK(h.a().is_constant());
  CHECK(std::abs(h.a()(0.0) - std::sqrt(3.0) / 2.0) < 1e-12);
  CHECK(h.unimodular_set().empty());

  try {
    pair_from_b(RationalFn(ComplexPoly{0.0, 1.0}));
    FAIL("z is extreme");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExtremeSymbol);
  }
  try {
    pair_from_b(RationalFn(ComplexPoly{0.0, 1.5}));
    FAIL("3z/2 leaves the unit ball");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInUnitBall);
  }
  CHECK_THROWS_AS(pair_from_b(RationalFn(ComplexPoly{0.5})), Error);
}

TEST_CASE("degree-2 pair reproduces the constructed mate") {
  const Pair p = fixture::degree2();
  const ComplexPoly expected = fixture::degree2_mate();
  CHECK(p.grid_residual() < 1e-9);
  for (const auto& z : circle_grid(64)) CHECK(std::abs(p.a()(z) - expected(z)) < 1e-8);
  CHECK(ord_at(p.a(), 1.0) == 2);
  REQUIRE(p.unimodular_set().size() == 1);
  check_outer(p);
}

TEST_CASE("random rational pairs satisfy the pair identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    // b = c * p/q with poles outside the closed disk, scaled into the open ball.
    std::vector<cplx> zeros, poles;
    for (int i = 0; i < 1 + trial % 3; ++i) zeros.push_back(std::polar(2.0 * u(rng), 6.3 * u(rng)));
    for (int i = 0; i < trial % 3; ++i) poles.push_back(std::polar(1.3 + u(rng), 6.3 * u(rng)));
    const ComplexPoly num = ComplexPoly::from_roots(zeros);
    const ComplexPoly den = ComplexPoly::from_roots(poles);
    const RationalFn raw(num, den);
    double sup = 0.0;
    for (const auto& z : circle_grid(4096)) sup = std::max(sup, std::abs(raw(z)));
    const RationalFn b = (0.9 / sup) * raw;
    const Pair p = pair_from_b(b);
    CHECK(grid_identity(p) < 1e-9);
    check_outer(p);
    CHECK(p.unimodular_set().empty());

    // Same function with a common factor: identical verdicts.
    const cplx extra = std::polar(3.0, 6.3 * u(rng));
    const RationalFn b2(b.num() * ComplexPoly{-extra, 1.0}, b.den() * ComplexPoly{-extra, 1.0});
    const Pair p2 = pair_from_b(b2);
    const cplx lambda = std::polar(1.0, 6.3 * u(rng));
    CHECK(mu_is_absolutely_continuous(p, lambda).absolutely_continuous ==
          mu_is_absolutely_continuous(p2, lambda).absolutely_continuous);
  }
}

TEST_CASE("f_lambda examples") {
  const Pair c = fixture::canonical();
  FLambda f = f_lambda(c, -1.0);
  CHECK(!f.pole_on_circle);
  for (const cplx z : {cplx{0.0}, cplx{0.3, 0.4}, cplx{-0.7}}) {
    CHECK(std::abs(f.f(z) - (1.0 - z) / (3.0 + z)) < 1e-12);
  }
  f = f_lambda(c, 1.0);
  CHECK(f.pole_on_circle);
  CHECK(f.f.is_constant());
  CHECK(std::abs(f.f(0.2) - 1.0) < 1e-12);

  f = f_lambda(fixture::half_z(), 1.0);
  CHECK(std::abs(f.f(0.5) - std::sqrt(3.0) / 1.5) < 1e-12);
  CHECK(!f.pole_on_circle);
}

TEST_CASE("absolute continuity of mu_lambda") {
  const Pair c = fixture::canonical();
  CHECK(mu_is_absolutely_continuous(c, -1.0).absolutely_continuous);
  const AcVerdict v = mu_is_absolutely_continuous(c, 1.0);
  CHECK(!v.absolutely_continuous);
  REQUIRE(v.atoms.size() == 1);
  CHECK(std::abs(v.atoms[0] - 1.0) < 1e-12);
  for (int k = 0; k < 8; ++k) {
    CHECK(mu_is_absolutely_continuous(fixture::half_z(), std::polar(1.0, 0.8 * k)).absolutely_continuous);
  }
}

TEST_CASE("membership") {
  const Pair c = fixture::canonical();
  CHECK(membership(c, -1.0, 1.0).k_max == 0);
  CHECK(membership(c, -1.0, -1.0).k_max == -1);
  CHECK(membership(fixture::degree2(), -1.0, 1.0).k_max == 1);
  try {
    membership(c, 1.0, 1.0);
    FAIL("lambda = b(z0)");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHypothesisViolation);
  }
  // k_max + 1 agrees with counting roots of a near z0 independently.
  const Pair d = fixture::degree2();
  int count = 0;
  for (const auto& z : oracle::companion_eigenvalues(d.a().num())) count += std::abs(z - 1.0) < 1e-4;
  CHECK(membership(d, -1.0, 1.0).k_max + 1 == count);
}
