#include <gtest/gtest.h>

#include <random>

#include "dagger/dagger.hpp"
#include "helpers.hpp"

using namespace dagger;
using namespace testing_helpers;

TEST(Parse, ScalarLiterals) {
  auto r = Ring<Padic>::make(5, 10);
  EXPECT_EQ(parse_scalar(r, "3*pi^2 + 1"), S(r, 76));
  EXPECT_EQ(parse_scalar(r, "pi^-2"), pi(r, -2));
  EXPECT_EQ(parse_scalar(r, "-(2 - 7)"), S(r, 5));
  EXPECT_EQ(parse_scalar(r, "1/3") * S(r, 3), S(r, 1));
  // 123456789012345678901234567891 mod 5^10, computed offline
  EXPECT_EQ(parse_scalar(r, "123456789012345678901234567891"), S(r, 4099141));
  EXPECT_THROW(parse_scalar(r, "2 +"), InvalidInput);
  EXPECT_THROW(parse_scalar(r, "x"), InvalidInput);
  EXPECT_THROW(parse_scalar(r, "1/0"), DivisionByZero);
}

TEST(Parse, EqCharLiterals) {
  auto r = Ring<EqChar>::make(9, 10);
  EXPECT_EQ(parse_scalar(r, "t + 2*t^2"), pi(r, 1) + S(r, 2) * pi(r, 2));
  EXPECT_TRUE(parse_scalar(r, "3").is_zero());
}

TEST(Parse, Matrices) {
  auto r = Ring<Padic>::make(5, 10);
  auto a = parse_matrix(r, "[[0,1],[pi,0]]");
  EXPECT_EQ(a, mat(r, {{S(r, 0), S(r, 1)}, {pi(r, 1), S(r, 0)}}));
  EXPECT_THROW(parse_matrix(r, "[[1,2],[3]]"), InvalidInput);
  EXPECT_THROW(parse_matrix(r, "[]"), InvalidInput);
  EXPECT_EQ(parse_vector(r, "[1, pi]").size(), 2u);
}

TEST(Json, ScalarRoundTrip) {
  std::mt19937_64 rng(41);
  auto r = Ring<Padic>::make(7, 12);
  auto q = Ring<EqChar>::make(4, 12);
  for (int i = 0; i < 50; ++i) {
    auto x = Scalar<Padic>::random(r, rng, -3, 14, 0.1);
    EXPECT_TRUE(scalar_from_json(r, scalar_to_json(x)).identical(x));
    auto y = Scalar<EqChar>::random(q, rng, -3, 14, 0.1);
    EXPECT_TRUE(scalar_from_json(q, scalar_to_json(y)).identical(y));
  }
  EXPECT_EQ(scalar_to_json(Scalar<Padic>::zero(r)), Json::parse(R"({"v":"inf","u":"0"})"));
  EXPECT_EQ(scalar_to_json(pi(r, 2) * S(r, 3)), Json::parse(R"({"v":2,"u":"3"})"));
  EXPECT_THROW(scalar_from_json(r, Json::parse(R"({"v":"x","u":"1"})")), InvalidInput);
  EXPECT_THROW(scalar_from_json(r, Json::parse(R"({"u":"1"})")), InvalidInput);
}

TEST(Json, RingAndMonoid) {
  RingDescriptor d{BackendKind::eqchar, 9, 30};
  EXPECT_EQ(ring_from_json(ring_to_json(d)), d);
  EXPECT_EQ(ring_to_json({BackendKind::padic, 5, 20}), Json::parse(R"({"backend":"padic","p":5,"precision":20})"));
  EXPECT_EQ(monoid_from_json(Json("Z^2")), MonoidDescriptor::Z(2));
  EXPECT_EQ(monoid_from_json(Json("free(3)")), MonoidDescriptor::free(3));
  EXPECT_EQ(monoid_from_json(monoid_to_json(MonoidDescriptor::N(4))), MonoidDescriptor::N(4));
  EXPECT_THROW(monoid_from_json(Json("Q^2")), InvalidInput);
}

TEST(Json, SeriesRoundTrip) {
  std::mt19937_64 rng(42);
  auto r = Ring<Padic>::make(5, 15);
  for (auto m : {MonoidDescriptor::Z(2), MonoidDescriptor::free(2)}) {
    DaggerSeries<Padic> f(r, m, 5);
    for (int i = 0; i < 6; ++i) f.add_term(random_element(m, rng, 5), Scalar<Padic>::random(r, rng, 0, 4));
    f.set_certificate(GrowthCertificate{Rational(1, 2), certify(f, Rational(1, 2)).k});
    auto j = series_to_json(f);
    auto g = series_from_json(r, j);
    EXPECT_EQ(g, f);
    EXPECT_EQ(g.certificate(), f.certificate());
    EXPECT_EQ(series_to_json(g).dump(), j.dump());
  }
  auto bad = Json::parse(R"({"monoid":"N^1","D":3,"terms":[{"s":[1],"x":1}],"certificate":{"c":"3","k":0}})");
  EXPECT_THROW(series_from_json(r, bad), InvalidInput);
}

TEST(Json, CrossedRoundTrip) {
  auto r = Ring<Padic>::make(5, 15);
  auto n1 = MonoidDescriptor::N(1);
  CrossedElem<Padic> u(r, n1, 4, 3);
  u.add(-2, DaggerSeries<Padic>::monomial(r, n1, 4, MonoidElem::exponents(n1, {3}), pi(r, 2)));
  u.add(1, DaggerSeries<Padic>::monomial(r, n1, 4, MonoidElem::identity(n1)));
  auto v = crossed_from_json(r, crossed_to_json(u));
  EXPECT_EQ(v, u);
  auto alpha = action_from_json(r, Json::parse(R"({"a":[[1]],"b":["pi"]})"));
  EXPECT_EQ(alpha.b()[0], pi(r, 1));
  EXPECT_THROW(action_from_json(r, Json::parse(R"({"a":[["pi"]],"b":[0]})")), InvalidInput);
}

TEST(Gallery, NonSeparated) {
  auto r = Ring<Padic>::make(5, 12);
  auto rep = gallery_nonseparated(r, 8);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.checks.size(), 10u);
  EXPECT_THROW(gallery_nonseparated(r, 1), InvalidInput);
  EXPECT_THROW(gallery_nonseparated(Ring<Padic>::make(5, 8), 8), PrecisionExhausted);
  EXPECT_TRUE(gallery_nonseparated(Ring<EqChar>::make(3, 12), 8).pass());
}

TEST(Gallery, NonClosedImage) {
  auto r = Ring<Padic>::make(5, 12);
  auto rep = gallery_nonclosed_image(r, 8);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.checks.size(), 16u);
  EXPECT_THROW(gallery_nonclosed_image(r, 1), InvalidInput);
}
