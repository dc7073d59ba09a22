// Acceptance suite: one PASS/FAIL line per criterion at p = 5, N = 40.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../unit/helpers.hpp"
#include "dagger/dagger.hpp"

using namespace dagger;
using namespace testing_helpers;

namespace {

using P = Padic;
using Series = DaggerSeries<P>;
using M = Matrix<P>;

const RingPtr<P> R = Ring<P>::make(5, 40);
constexpr unsigned kNmax = 16;

struct Result {
  bool ok = true;
  std::string detail;
};

Series random_series(MonoidDescriptor m, std::int64_t cap, std::mt19937_64& rng, int terms, std::int64_t max_len,
                     std::int64_t max_val = 4) {
  Series f(R, m, cap);
  for (int i = 0; i < terms; ++i) f.add_term(random_element(m, rng, max_len), Scalar<P>::random(R, rng, 0, max_val));
  return f;
}

Series mono(MonoidDescriptor m, std::int64_t cap, std::vector<std::int64_t> e) {
  return Series::monomial(R, m, cap, MonoidElem::exponents(m, e));
}

Result torus() {
  std::mt19937_64 rng(101);
  const auto z2 = MonoidDescriptor::Z(2);
  const std::int64_t D = 6;
  int checks = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto lambda = Scalar<P>::random_unit(R, rng);
    auto c = Cocycle<P>::bicharacter(z2, lambda, {{0, 0}, {1, 0}});
    auto u1 = mono(z2, D, {1, 0}), u2 = mono(z2, D, {0, 1});
    if (!(mul(u2, u1, c) == add_scale(Series(R, z2, D), mul(u1, u2, c), lambda)))
      return {false, "U2 U1 != lambda U1 U2"};
    // U_i^n by repeated multiplication with U_i or U_i^-1.
    auto power = [&](int i, std::int64_t n) {
      std::vector<std::int64_t> e{0, 0};
      e[i] = n < 0 ? -1 : 1;
      auto g = mono(z2, D, e);
      auto out = mono(z2, D, {0, 0});
      for (std::int64_t k = 0; k < std::llabs(n); ++k) out = mul(out, g, c);
      return out;
    };
    for (const auto& s : ball(z2, D)) {
      auto prod = mul(power(0, s.data()[0]), power(1, s.data()[1]), c);
      if (prod.truncated() || !(prod == mono(z2, D, s.data())))
        return {false, "delta_s != U1^s1 U2^s2 at " + s.to_string()};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " monomials, 20 units"};
}

Result twisted_associativity() {
  std::mt19937_64 rng(102);
  const auto z2 = MonoidDescriptor::Z(2);
  int compared = 0, flagged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::int64_t>> q(2, std::vector<std::int64_t>(2));
    for (auto& row : q)
      for (auto& x : row) x = std::uniform_int_distribution<int>(-3, 3)(rng);
    auto c = Cocycle<P>::bicharacter(z2, Scalar<P>::random_unit(R, rng), q);
    auto a = random_series(z2, 8, rng, 4, 3), b = random_series(z2, 8, rng, 4, 3), d = random_series(z2, 8, rng, 4, 3);
    auto lhs = mul(mul(a, b, c), d, c), rhs = mul(a, mul(b, d, c), c);
    if (lhs.truncated() || rhs.truncated()) {
      ++flagged;
      continue;
    }
    ++compared;
    if (!(lhs == rhs)) return {false, "(ab)c != a(bc) on trial " + std::to_string(trial)};
  }
  if (compared < 100) return {false, "only " + std::to_string(compared) + " unflagged triples"};
  return {true, std::to_string(compared) + " triples equal, " + std::to_string(flagged) + " flagged"};
}

Result certificate_soundness() {
  std::mt19937_64 rng(103);
  const auto z2 = MonoidDescriptor::Z(2);
  auto c = Cocycle<P>::bicharacter(z2, Scalar<P>::from_int(R, 2), {{0, 1}, {-1, 0}});
  int nonzero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_series(z2, 8, rng, 5, 4), b = random_series(z2, 8, rng, 5, 4);
    auto rate = [&] { return Rational(std::uniform_int_distribution<int>(1, 6)(rng), std::uniform_int_distribution<int>(1, 3)(rng)); };
    Rational ca = rate(), cb = rate();
    a.set_certificate(GrowthCertificate{ca, certify(a, ca).k});
    b.set_certificate(GrowthCertificate{cb, certify(b, cb).k});
    auto p = mul(a, b, c);
    const auto cert = p.certificate();
    if (!cert || *cert != combine_product(*a.certificate(), *b.certificate()))
      return {false, "missing or wrong combined certificate"};
    if (p.is_zero()) continue;
    ++nonzero;
    if (best_certificate(p).min_offset(cert->c) > cert->k)
      return {false, "envelope rejects the product certificate on trial " + std::to_string(trial)};
  }
  return {true, std::to_string(nonzero) + " nonzero products, 0 failures"};
}

Result spectral_oracle() {
  std::mt19937_64 rng(104);
  std::vector<std::pair<std::string, M>> family;
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = 2 + i % 3;
    M a(R, d, d);
    for (std::size_t k = 0; k < d; ++k)
      a(k, k) = Scalar<P>::random_unit(R, rng) * pi(R, std::uniform_int_distribution<int>(-1, 3)(rng));
    family.emplace_back("diagonal", a);
  }
  for (int i = 0; i < 10; ++i) {
    // companion matrix of x^d + c_{d-1} x^{d-1} + ... + c_0
    const std::size_t d = 2 + i % 3;
    M a(R, d, d);
    for (std::size_t k = 1; k < d; ++k) a(k, k - 1) = S(R, 1);
    for (std::size_t k = 0; k < d; ++k)
      a(k, d - 1) = -Scalar<P>::random(R, rng, k == 0 ? 1 : 0, 4, k == 0 ? 0.0 : 0.3);
    family.emplace_back("companion", a);
  }
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = 2 + i % 3;
    M strict(R, d, d);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = x + 1; y < d; ++y) strict(x, y) = Scalar<P>::random(R, rng, 0, 3);
    auto u = random_unimodular(R, rng, d);
    auto f = smith_normal_form(u);
    family.emplace_back("nilpotent", u * strict * (f.W * f.U));
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + i % 3;
    family.emplace_back("random", random_matrix(R, rng, d, d, 3).scaled(pi(R, -1)));
  }
  Rational worst(0);
  for (const auto& [kind, a] : family) {
    auto ctx = AlgebraContext<P>::matrix(R, a.rows());
    auto rep = rho1_estimate(ctx.span_of({a}), ctx, kNmax);
    auto slope = newton_polygon_rho(a);
    Rational target = slope ? std::min(Rational(0), *slope) : Rational(0);
    Rational err = abs(rep.rho1_exponent - target);
    worst = std::max(worst, err);
    if (err > Rational(1, kNmax))
      return {false, kind + " matrix: estimate " + to_string(rep.rho1_exponent) + " vs " + to_string(target)};
  }
  return {true, "50 matrices, worst error " + to_string(worst)};
}

Result triangle() {
  auto ctx = AlgebraContext<P>::matrix(R, 2);
  auto z = S(R, 0), one = S(R, 1);
  auto m = [&](Scalar<P> a, Scalar<P> b, Scalar<P> c, Scalar<P> d) { return mat(R, {{a, b}, {c, d}}); };
  const std::vector<std::vector<M>> family{
      {m(z, one, z, z)},
      {m(pi(R, -1), z, z, one)},
      {m(z, one, pi(R, 1), z)},
      {m(one, z, z, one)},
      {m(one, z, z, z), m(z, one, z, z)},
      {m(z, pi(R, -1), z, z)},
      {m(z, pi(R, -1), pi(R, 1), z)},
      {m(z, pi(R, -1), one, z)},
      {m(one, one, z, one)},
      {m(z, one, z, z), m(z, z, one, z)},
  };
  int agree_true = 0, agree_false = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto s = ctx.span_of(family[i]);
    const bool radius = rho1_estimate(s, ctx, kNmax).rho1_exponent == Rational(0);
    bool probe = true;
    for (const auto& r : semi_dagger_probe(s, ctx, ProbeParams{1, {1, 2, 3}, kNmax}))
      probe = probe && r.verdict == ProbeVerdict::bounded;
    bool closure = true;
    for (unsigned j = 1; j <= 3; ++j) {
      auto cl = lgb_closure(ctx.power(s, j), ctx, kNmax);
      closure = closure && cl.stabilized_at && closed_under_pi_product(cl.chain.back(), ctx);
    }
    if (radius != probe || radius != closure)
      return {false, "lattice " + std::to_string(i + 1) + " disagrees"};
    (radius ? agree_true : agree_false)++;
  }
  auto witness = ctx.span_of(family[1]);
  auto j1 = semi_dagger_probe_one(witness, ctx, 1, 1, kNmax);
  auto j2 = semi_dagger_probe_one(witness, ctx, 1, 2, kNmax);
  if (j1.verdict != ProbeVerdict::bounded || j2.verdict != ProbeVerdict::diverging)
    return {false, "witness: j=1 " + std::string(to_string(j1.verdict)) + ", j=2 " + to_string(j2.verdict)};
  return {true, std::to_string(agree_true) + " with rho1 = 1, " + std::to_string(agree_false) +
                    " with rho1 > 1; witness bounded at j=1, diverging at j=2"};
}

Result snf_correctness() {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    auto a = random_matrix(R, rng, rows, cols, 4, 0.3);
    auto f = smith_normal_form(a);
    auto prod = f.U * a * f.W;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (prod(i, j) != f.D(i, j))
          return {false, "U A W != D on trial " + std::to_string(trial)};
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j && !f.D(i, j).is_zero()) return {false, "D not diagonal"};
    if (determinant(f.U).val() != 0 || determinant(f.W).val() != 0) return {false, "U or W not unimodular"};
    auto e = f.exponents();
    for (std::size_t i = 1; i < e.size(); ++i)
      if (e[i - 1] > e[i]) return {false, "divisibility chain broken"};
    for (std::size_t i = f.rank; i < std::min(rows, cols); ++i)
      if (!f.D(i, i).is_zero()) return {false, "nonzero entry past the rank"};
  }
  return {true, "200 matrices up to 4x4"};
}

Result tensor_torsion_free() {
  std::mt19937_64 rng(107);
  auto random_free = [&] {
    // U [I_r 0; 0 0] W has a free cokernel.
    const std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
    const std::size_t r = rng() % (std::min(m, n) + 1);
    M d(R, m, n);
    for (std::size_t i = 0; i < r; ++i) d(i, i) = S(R, 1);
    return ModulePresentation<P>(random_unimodular(R, rng, m) * d * random_unimodular(R, rng, n));
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_free(), q = random_free();
    if (!is_torsion_free(p) || !is_torsion_free(q)) return {false, "generator produced torsion"};
    auto t = tensor_presentation(p, q);
    if (!is_torsion_free(t)) return {false, "tensor product has torsion on trial " + std::to_string(trial)};
    if (cokernel_invariants(t).free_rank != cokernel_invariants(p).free_rank * cokernel_invariants(q).free_rank)
      return {false, "free rank is not multiplicative"};
  }
  return {true, "50 pairs, 0 failures"};
}

Result crossed_growth() {
  std::mt19937_64 rng(108);
  const auto n1 = MonoidDescriptor::N(1);
  const std::int64_t D = 8, Dz = 8;
  AffineAction<P> shift(M::identity(R, 1), Vector<P>{S(R, 1)});
  auto generator = [&] {
    CrossedElem<P> u(R, n1, D, Dz);
    for (int t = 0; t < 2; ++t) {
      std::int64_t n = std::uniform_int_distribution<int>(-2, 2)(rng);
      std::int64_t e = std::uniform_int_distribution<int>(0, 2)(rng);
      // nu + 1 >= |n| + e
      auto x = Scalar<P>::random(R, rng, std::max<std::int64_t>(0, std::llabs(n) + e - 1), std::llabs(n) + e + 1);
      u.add(n, Series::monomial(R, n1, D, MonoidElem::exponents(n1, {e}), x));
    }
    u.set_certificate(GrowthCertificate{Rational(1), 0});
    return u;
  };
  int products = 0;
  std::int64_t worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto prod = generator();
    for (int len = 2; len <= 4; ++len) {
      prod = crossed_mul(prod, generator(), shift);
      const auto& cert = *prod.certificate();
      if (cert.k != len - 1) return {false, "combination bound is not k = length - 1"};
      auto direct = crossed_certify(prod, Rational(1));
      if (!prod.holds(cert) || direct.k > cert.k)
        return {false, "product of length " + std::to_string(len) + " needs k = " + std::to_string(direct.k)};
      worst = std::max(worst, direct.k);
      ++products;
    }
  }
  return {true, std::to_string(products) + " products, largest exhaustive k = " + std::to_string(worst) + " <= 3"};
}

Result gallery() {
  auto r12 = Ring<P>::make(5, 12);
  auto a = gallery_nonseparated(r12, 8);
  auto b = gallery_nonclosed_image(R, 8);
  if (!a.pass()) return {false, "nonseparated"};
  if (!b.pass()) return {false, "nonclosed-image"};
  return {true, "nonseparated (" + std::to_string(a.checks.size()) + " checks), nonclosed-image (" +
                    std::to_string(b.checks.size()) + " checks)"};
}

Result affine_invariants() {
  std::mt19937_64 rng(110);
  const auto n2 = MonoidDescriptor::N(2);
  const std::int64_t D = 8;
  auto poly = [&](std::int64_t deg) {
    Series f(R, n2, D);
    for (int t = 0; t < 4; ++t) {
      std::int64_t i = std::uniform_int_distribution<std::int64_t>(0, deg)(rng);
      std::int64_t j = std::uniform_int_distribution<std::int64_t>(0, deg - i)(rng);
      f.add_term(MonoidElem::exponents(n2, {i, j}), Scalar<P>::random(R, rng, 0, 3));
    }
    return f;
  };
  for (int trial = 0; trial < 100; ++trial) {
    AffineAction<P> alpha(random_unimodular(R, rng, 2), Vector<P>{Scalar<P>::random(R, rng, 0, 2), Scalar<P>::random(R, rng, 0, 2)});
    auto f = poly(4), g = poly(4);
    if (!(alpha.act(0, f) == f)) return {false, "alpha_0 is not the identity"};
    if (!(alpha.act(1, alpha.act(-1, f)) == f) || !(alpha.act(-1, alpha.act(1, f)) == f))
      return {false, "alpha_1 and alpha_-1 are not inverse"};
    const std::int64_t m = std::uniform_int_distribution<int>(-3, 3)(rng), n = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (!(alpha.act(m, alpha.act(n, f)) == alpha.act(m + n, f))) return {false, "alpha_m alpha_n != alpha_m+n"};
    if (!(alpha.act(n, mul(f, g)) == mul(alpha.act(n, f), alpha.act(n, g)))) return {false, "not multiplicative"};
    if (alpha.act(n, f).max_length() > f.max_length()) return {false, "degree increased"};
  }
  return {true, "100 random (a, b, f) with a in GL_2(V)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"noncommutative torus relations", torus},
      {"twisted associativity", twisted_associativity},
      {"product certificate soundness", certificate_soundness},
      {"spectral oracle agreement", spectral_oracle},
      {"consistency triangle", triangle},
      {"Smith normal form", snf_correctness},
      {"tensor torsion-freeness", tensor_torsion_free},
      {"crossed-product growth", crossed_growth},
      {"gallery regressions", gallery},
      {"affine-action invariants", affine_invariants},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.ok) ++failures;
    std::printf("%s %2zu %s: %s [%.2fs]\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
