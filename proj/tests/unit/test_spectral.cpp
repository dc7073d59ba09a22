#include <gtest/gtest.h>

#include <random>

#include "dagger/spectral.hpp"
#include "helpers.hpp"

using namespace dagger;
using namespace testing_helpers;

namespace {

using P = Padic;
using M = Matrix<P>;

struct Fixture : ::testing::Test {
  RingPtr<P> r = Ring<P>::make(5, 40);
  AlgebraContext<P> m2 = AlgebraContext<P>::matrix(r, 2);

  M m(std::vector<std::vector<Scalar<P>>> rows) { return mat(r, rows); }
  Scalar<P> s(long long n) { return S(r, n); }
  Scalar<P> p(long long e) { return pi(r, e); }
  Lattice<P> single(const M& a) { return AlgebraContext<P>::matrix(r, a.rows()).span_of({a}); }
};

// nu(A^n) read straight off the matrix power.
std::int64_t direct_power_gauge(const M& a, unsigned n) {
  M out = a;
  for (unsigned i = 1; i < n; ++i) out = out * a;
  return out.min_valuation();
}

}  // namespace

using Spectral = Fixture;

TEST_F(Spectral, StarScaleAndGauge) {
  auto std2 = m2.standard();
  EXPECT_EQ(star_scale(Rational(2), std2), std2.scaled(2));
  EXPECT_EQ(star_scale(Rational(1, 2), std2), std2.scaled(1));
  EXPECT_EQ(star_scale(Rational(0), std2), std2);
  EXPECT_THROW(star_scale(Rational(-1), std2), InvalidInput);
  EXPECT_EQ(gauge_exponent(std2.scaled(3)), 3);
  EXPECT_EQ(gauge_exponent(m2.span_of({m({{p(-1), s(0)}, {s(0), s(0)}}), m({{s(0), s(0)}, {s(0), s(1)}})})), -1);
  EXPECT_EQ(gauge_exponent(Lattice<P>::zero(r, 4)), kInfinity);
}

TEST_F(Spectral, Rho1Nilpotent) {
  auto rep = rho1_estimate(single(m({{s(0), s(1)}, {s(0), s(0)}})), m2, 16);
  EXPECT_FALSE(rep.exponent.has_value());
  EXPECT_EQ(rep.gauges[0], 0);
  EXPECT_EQ(rep.gauges[1], kInfinity);
  EXPECT_EQ(rep.rho1_exponent, Rational(0));
  EXPECT_EQ(rep.verdict, RadiusVerdict::converged);
  EXPECT_TRUE(rep.superadditive);
}

TEST_F(Spectral, Rho1Companion) {
  auto rep = rho1_estimate(single(m({{s(0), s(1)}, {p(1), s(0)}})), m2, 16);
  ASSERT_TRUE(rep.exponent.has_value());
  EXPECT_EQ(*rep.exponent, Rational(1, 2));
  EXPECT_EQ(rep.rho1_exponent, Rational(0));
  EXPECT_EQ(rep.verdict, RadiusVerdict::converged);
}

TEST_F(Spectral, Rho1Expanding) {
  auto rep = rho1_estimate(single(m({{p(-1), s(0)}, {s(0), s(1)}})), m2, 16);
  EXPECT_EQ(*rep.exponent, Rational(-1));
  EXPECT_EQ(rep.rho1_exponent, Rational(-1));
  for (std::size_t n = 0; n < rep.gauges.size(); ++n) EXPECT_EQ(rep.gauges[n], -static_cast<std::int64_t>(n + 1));
}

TEST_F(Spectral, Rho1PrecisionExhausted) {
  auto small = Ring<P>::make(5, 6);
  auto ctx = AlgebraContext<P>::matrix(small, 2);
  auto a = mat(small, {{pi(small, -1), S(small, 0)}, {S(small, 0), S(small, 1)}});
  EXPECT_THROW(rho1_estimate(ctx.span_of({a}), ctx, 16), PrecisionExhausted);
  EXPECT_THROW(rho1_estimate(ctx.span_of({a}), ctx, 1), InvalidInput);
}

TEST_F(Spectral, NewtonExamples) {
  EXPECT_EQ(newton_polygon_rho(m({{p(2), s(0)}, {s(0), p(5)}})), Rational(2));
  EXPECT_EQ(newton_polygon_rho(m({{s(0), s(1)}, {p(1), s(0)}})), Rational(1, 2));
  EXPECT_EQ(newton_polygon_rho(m({{s(0), s(1)}, {s(0), s(0)}})), std::nullopt);
  EXPECT_EQ(newton_polygon_rho(m({{p(-1), s(0)}, {s(0), s(1)}})), Rational(-1));
  EXPECT_THROW(newton_polygon_rho(M(r, 2, 3)), DescriptorMismatch);
}

TEST_F(Spectral, GaugesMatchDirectPowers) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    auto a = random_matrix(r, rng, 3, 3, 2);
    auto rep = rho1_estimate(single(a), AlgebraContext<P>::matrix(r, 3), 8);
    for (unsigned n = 1; n <= rep.gauges.size(); ++n) EXPECT_EQ(rep.gauges[n - 1], direct_power_gauge(a, n));
    EXPECT_TRUE(rep.superadditive);
  }
}

TEST_F(Spectral, SuperadditiveOnRandomLattices) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    auto a = random_matrix(r, rng, 2, 2, 2), b = random_matrix(r, rng, 2, 2, 2);
    auto l = m2.span_of({a, b.scaled(p(-1))});
    auto rep = rho1_estimate(l, m2, 10);
    EXPECT_TRUE(rep.superadditive);
    EXPECT_LE(rep.rho1_exponent, Rational(0));
  }
}

TEST_F(Spectral, OracleAgreementDiagonalizable) {
  std::mt19937_64 rng(23);
  const unsigned n_max = 16;
  for (int i = 0; i < 25; ++i) {
    const std::size_t d = 2 + i % 3;
    M diag(r, d, d);
    for (std::size_t k = 0; k < d; ++k)
      diag(k, k) = Scalar<P>::random_unit(r, rng) * p(std::uniform_int_distribution<int>(-1, 2)(rng));
    auto u = random_unimodular(r, rng, d);
    auto smith = smith_normal_form(u);
    auto u_inv = smith.W * smith.U;  // U u W = I
    M a = u * diag * u_inv;
    auto rep = rho1_estimate(single(a), AlgebraContext<P>::matrix(r, d), n_max);
    auto slope = newton_polygon_rho(a);
    ASSERT_TRUE(slope.has_value());
    ASSERT_TRUE(rep.exponent.has_value());
    EXPECT_LE(abs(*rep.exponent - *slope), Rational(1, n_max));
    EXPECT_LE(abs(rep.rho1_exponent - std::min(Rational(0), *slope)), Rational(1, n_max));
  }
}

TEST_F(Spectral, OracleAgreementNilpotent) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = 3;
    M strict(r, d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) strict(a, b) = Scalar<P>::random(r, rng, 0, 3);
    auto u = random_unimodular(r, rng, d);
    auto smith = smith_normal_form(u);
    M a = u * strict * (smith.W * smith.U);
    EXPECT_EQ(newton_polygon_rho(a), std::nullopt);
    auto rep = rho1_estimate(single(a), AlgebraContext<P>::matrix(r, d), 16);
    EXPECT_FALSE(rep.exponent.has_value());
    EXPECT_EQ(rep.rho1_exponent, Rational(0));
  }
}

TEST_F(Spectral, LgbClosureExamples) {
  auto nil = lgb_closure(single(m({{s(0), s(1)}, {s(0), s(0)}})), m2, 8);
  EXPECT_EQ(nil.stabilized_at, 0);

  auto expanding = single(m({{p(-1), s(0)}, {s(0), s(1)}}));
  auto cl = lgb_closure(expanding, m2, 8);
  ASSERT_TRUE(cl.stabilized_at.has_value());
  EXPECT_EQ(*cl.stabilized_at, 1);
  EXPECT_EQ(cl.chain[1], m2.span_of({m({{p(-1), s(0)}, {s(0), s(0)}}), m({{s(0), s(0)}, {s(0), s(1)}})}));
  EXPECT_TRUE(closed_under_pi_product(cl.chain.back(), m2));
}

TEST_F(Spectral, LgbClosurePolynomialCap) {
  const std::int64_t D = 6;
  auto n1 = MonoidDescriptor::N(1);
  auto ctx = AlgebraContext<P>::series(r, n1, D);
  auto x = DaggerSeries<P>::monomial(r, n1, D, MonoidElem::exponents(n1, {1}));
  auto cl = lgb_closure(ctx.span_of({x}), ctx, 12);
  ASSERT_TRUE(cl.stabilized_at.has_value());
  EXPECT_EQ(*cl.stabilized_at, D - 1);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(cl.chain.size()); ++i) {
    std::vector<DaggerSeries<P>> gens;
    for (std::int64_t j = 0; j <= std::min(i, D - 1); ++j)
      gens.push_back(DaggerSeries<P>::monomial(r, n1, D, MonoidElem::exponents(n1, {j + 1}), p(j)));
    EXPECT_EQ(cl.chain[i], ctx.span_of(gens));
  }
  EXPECT_TRUE(closed_under_pi_product(cl.chain.back(), ctx));
}

TEST_F(Spectral, LgbClosureDivergesForLargeRadius) {
  auto a = single(m({{p(-1), s(0)}, {s(0), s(1)}}));
  auto cl = lgb_closure(m2.power(a, 2), m2, 8);
  EXPECT_FALSE(cl.stabilized_at.has_value());
  EXPECT_EQ(cl.chain.size(), 9u);
}

TEST_F(Spectral, ProbeWitness) {
  auto a = single(m({{p(-1), s(0)}, {s(0), s(1)}}));
  auto res = semi_dagger_probe(a, m2, ProbeParams{1, {1, 2, 3}, 16});
  ASSERT_EQ(res.size(), 3u);
  EXPECT_EQ(res[0].verdict, ProbeVerdict::bounded);
  EXPECT_EQ(res[1].verdict, ProbeVerdict::diverging);
  EXPECT_EQ(res[2].verdict, ProbeVerdict::diverging);
  for (std::size_t l = 0; l < res[1].gauges.size(); ++l) EXPECT_EQ(res[1].gauges[l], -static_cast<std::int64_t>(l + 1));
}

TEST_F(Spectral, ProbeNilpotentBounded) {
  auto res = semi_dagger_probe(single(m({{s(0), s(1)}, {s(0), s(0)}})), m2, ProbeParams{});
  for (const auto& x : res) EXPECT_EQ(x.verdict, ProbeVerdict::bounded);
  EXPECT_THROW(semi_dagger_probe_one(m2.standard(), m2, 0, 1, 8), InvalidInput);
}

TEST_F(Spectral, ProbeCompanionBounded) {
  auto res = semi_dagger_probe(single(m({{s(0), s(1)}, {p(1), s(0)}})), m2, ProbeParams{});
  for (const auto& x : res) EXPECT_EQ(x.verdict, ProbeVerdict::bounded);
}

TEST_F(Spectral, TriangleOnRandomSingletons) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 20; ++i) {
    auto a = random_matrix(r, rng, 2, 2, 2);
    if (i % 2) a = a.scaled(p(-1));
    auto l = single(a);
    bool radius_one = rho1_estimate(l, m2, 16).rho1_exponent == Rational(0);
    bool probe_bounded = true;
    for (const auto& x : semi_dagger_probe(l, m2, ProbeParams{}))
      probe_bounded = probe_bounded && x.verdict == ProbeVerdict::bounded;
    bool closure = true;
    for (unsigned j = 1; j <= 3; ++j) {
      auto cl = lgb_closure(m2.power(l, j), m2, 16);
      closure = closure && cl.stabilized_at && closed_under_pi_product(cl.chain.back(), m2);
    }
    EXPECT_EQ(radius_one, probe_bounded) << a;
    EXPECT_EQ(radius_one, closure) << a;
  }
}
