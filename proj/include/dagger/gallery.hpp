#pragma once

// Finite-precision regressions for two counterexamples about separated and
// complete modules.

#include <cstdint>
#include <string>
#include <vector>

#include "dagger/presentation.hpp"
#include "dagger/series.hpp"

namespace dagger {

struct GalleryCheck {
  std::string what;
  bool ok = false;
};

struct GalleryReport {
  std::string name;
  std::vector<GalleryCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }
};

/// M = V[x]_{<=D} / (1 - pi^n x^n : 1 <= n <= D).  In M the class of 1 is
/// divisible by every pi^m, m <= D, since 1 = (1 - pi^m x^m) + pi^m x^m,
/// yet [1] != 0.  Also M / V.1 = (+)_{n<=D} V/pi^n.
template <class B>
GalleryReport gallery_nonseparated(const RingPtr<B>& ring, std::int64_t D) {
  if (D < 2) throw InvalidInput("gallery needs D >= 2");
  if (ring->precision() <= D) throw PrecisionExhausted("gallery needs precision N > D");
  const auto dim = static_cast<std::size_t>(D + 1);
  Matrix<B> rel(ring, dim, static_cast<std::size_t>(D));
  for (std::int64_t n = 1; n <= D; ++n) {
    rel(0, n - 1) = Scalar<B>::one(ring);
    rel(n, n - 1) = -Scalar<B>::pi_power(ring, n);
  }
  ModulePresentation<B> m(rel);
  Vector<B> one(dim, Scalar<B>::zero(ring));
  one[0] = Scalar<B>::one(ring);

  GalleryReport rep{"nonseparated", {}};
  for (std::int64_t k = 1; k <= D; ++k)
    rep.checks.push_back({"[1] in pi^" + std::to_string(k) + " M", quotient_divisibility(m, one, k)});
  rep.checks.push_back({"[1] != 0", !quotient_is_zero(m, one)});

  Matrix<B> with_one = hconcat(rel, Matrix<B>::from_columns(ring, dim, {one}));
  auto inv = cokernel_invariants(ModulePresentation<B>(with_one));
  std::vector<std::int64_t> expect;
  for (std::int64_t n = 1; n <= D; ++n) expect.push_back(n);
  rep.checks.push_back({"M / V = (+) V/pi^n", inv.free_rank == 0 && inv.torsion == expect});
  return rep;
}

/// f(sum c_n x^n) = sum c_n pi^n x^n and p_n = sum_{j<=n} x^j: the images
/// f(p_n) form a Cauchy sequence (gap valuation n+1) while p_n does not
/// (gap valuation 0).
template <class B>
GalleryReport gallery_nonclosed_image(const RingPtr<B>& ring, std::int64_t D) {
  if (D < 2) throw InvalidInput("gallery needs D >= 2");
  const auto n1 = MonoidDescriptor::N(1);
  auto p = [&](std::int64_t n) {
    DaggerSeries<B> s(ring, n1, D);
    for (std::int64_t j = 0; j <= n; ++j) s.add_term(MonoidElem::exponents(n1, {j}), Scalar<B>::one(ring));
    return s;
  };
  auto f = [&](const DaggerSeries<B>& s) {
    DaggerSeries<B> out(ring, n1, D);
    for (const auto& [e, x] : s.terms()) out.add_term(e, x * Scalar<B>::pi_power(ring, e.length()));
    return out;
  };
  auto min_val = [](const DaggerSeries<B>& s) {
    std::int64_t v = kInfinity;
    for (const auto& [e, x] : s.terms()) v = std::min(v, x.val());
    return v;
  };
  GalleryReport rep{"nonclosed-image", {}};
  for (std::int64_t n = 0; n <= D - 1; ++n) {
    const std::int64_t image_gap = min_val(f(p(n + 1)) - f(p(n)));
    const std::int64_t source_gap = min_val(p(n + 1) - p(n));
    // pi^(n+1) vanishes once n+1 >= N; the gap is then beyond precision.
    const bool image_ok = n + 1 < ring->precision() ? image_gap == n + 1 : image_gap == kInfinity;
    rep.checks.push_back({"n=" + std::to_string(n) + ": nu(f(p_n+1) - f(p_n)) = n+1", image_ok});
    rep.checks.push_back({"n=" + std::to_string(n) + ": nu(p_n+1 - p_n) = 0", source_gap == 0});
  }
  return rep;
}

}  // namespace dagger
