#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagger/algebra.hpp"
#include "dagger/rational.hpp"

namespace dagger {

/// r * L = pi^ceil(t) L for r = eps^t, t >= 0.
template <class B>
Lattice<B> star_scale(const Rational& t, const Lattice<B>& l) {
  if (t < 0) throw InvalidInput("star scaling needs r <= 1, i.e. t >= 0");
  return l.scaled(ceil(t));
}

/// Largest e with L inside pi^e times the unit ball (kInfinity for 0).
template <class B>
std::int64_t gauge_exponent(const Lattice<B>& l) {
  return l.scale();
}

enum class RadiusVerdict { converged, upper_bound_only };

inline const char* to_string(RadiusVerdict v) {
  return v == RadiusVerdict::converged ? "converged" : "upper_bound_only";
}

struct RadiusEstimate {
  std::int64_t n = 0;
  std::optional<Rational> nu_over_n;  // nullopt: S^n = 0
};

/// Truncated spectral radius data.  All values are exponents of eps:
/// rho = eps^exponent, rho_1 = max(rho, 1) = eps^rho1_exponent.
struct RadiusReport {
  std::vector<RadiusEstimate> estimates;
  std::vector<std::int64_t> gauges;  // nu_n, kInfinity once S^n = 0
  std::optional<Rational> exponent;  // sup nu_n / n, nullopt when nilpotent
  Rational rho1_exponent{0};
  RadiusVerdict verdict = RadiusVerdict::upper_bound_only;
  bool superadditive = true;
};

/// nu_n = gauge(S^n) for n <= n_max.  nu is superadditive, so by Fekete the
/// limit of nu_n / n equals its supremum; the running supremum is the
/// estimate.  Converged when the supremum has not moved during the last
/// ceil(n_max / 4) steps.
template <class B>
RadiusReport rho1_estimate(const Lattice<B>& s, const AlgebraContext<B>& ctx, unsigned n_max) {
  if (n_max < 2) throw InvalidInput("n_max must be at least 2");
  const std::int64_t N = ctx.ring()->precision();
  RadiusReport rep;
  std::vector<std::optional<Rational>> running;
  Lattice<B> power = s;
  std::optional<Rational> best;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n > 1) power = ctx.product(power, s);
    const std::int64_t nu = gauge_exponent(power);
    if (nu != kInfinity && nu < -N)
      throw PrecisionExhausted("gauge exponent of S^" + std::to_string(n) + " fell below -N");
    rep.gauges.push_back(nu);
    RadiusEstimate est{static_cast<std::int64_t>(n), std::nullopt};
    if (nu != kInfinity) est.nu_over_n = Rational(nu, static_cast<std::int64_t>(n));
    rep.estimates.push_back(est);
    if (nu == kInfinity) {
      best.reset();
    } else if (n == 1 || best) {
      if (!best || *est.nu_over_n > *best) best = est.nu_over_n;
    }
    running.push_back(best);
    if (nu == kInfinity) {
      // Nilpotent: every later power vanishes too.
      for (unsigned m = n + 1; m <= n_max; ++m) {
        rep.gauges.push_back(kInfinity);
        rep.estimates.push_back({static_cast<std::int64_t>(m), std::nullopt});
        running.push_back(std::nullopt);
      }
      break;
    }
  }
  for (std::size_t i = 0; i < rep.gauges.size(); ++i)
    for (std::size_t j = i; i + j + 1 < rep.gauges.size(); ++j) {
      std::int64_t a = rep.gauges[i], b = rep.gauges[j], c = rep.gauges[i + j + 1];
      if (a == kInfinity || b == kInfinity) continue;
      if (c != kInfinity && c < a + b) rep.superadditive = false;
    }
  rep.exponent = best;
  rep.rho1_exponent = best ? std::min(Rational(0), *best) : Rational(0);
  const std::size_t window = (n_max + 3) / 4;
  rep.verdict = running.back() == running[running.size() - 1 - window]
                    ? RadiusVerdict::converged
                    : RadiusVerdict::upper_bound_only;
  return rep;
}

/// Minimal root valuation of the characteristic polynomial, read from its
/// Newton polygon: min_j nu(c_j) / j.  nullopt means +infinity (nilpotent
/// at precision N).
template <class B>
std::optional<Rational> newton_polygon_rho(const Matrix<B>& a) {
  if (!a.is_square()) throw DescriptorMismatch("Newton polygon of a non-square matrix");
  const std::int64_t e = a.min_valuation();
  if (e == kInfinity) return std::nullopt;
  Matrix<B> integral(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) integral(i, j) = a(i, j).shift(-e);
  const auto poly = characteristic_polynomial(integral);
  const std::int64_t N = a.ring()->precision();
  std::optional<Rational> best;
  std::optional<Rational> unknown;  // lower bound N/j from coefficients lost to precision
  for (std::size_t j = 1; j < poly.size(); ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    if (poly[j].is_negligible()) {
      Rational bound(N - poly[j].loss(), jj);
      if (!unknown || bound < *unknown) unknown = bound;
      continue;
    }
    Rational slope(poly[j].val(), jj);
    if (!best || slope < *best) best = slope;
  }
  if (!best) return std::nullopt;
  if (unknown && *unknown <= *best)
    throw PrecisionExhausted("characteristic polynomial lost the coefficients deciding the slope");
  return *best + e;
}

template <class B>
struct LgbClosure {
  std::vector<Lattice<B>> chain;           // L_0, L_1, ...
  std::optional<std::int64_t> stabilized_at;  // first i with L_i = L_{i+1}
};

/// L_i = sum_{j <= i} pi^j S^(j+1).  Once L_i = L_{i+1} the chain is
/// constant: pi^(i+2) S^(i+3) = pi S pi^(i+1) S^(i+2) lies in pi S L_i,
/// which is inside L_{i+1}.
template <class B>
LgbClosure<B> lgb_closure(const Lattice<B>& s, const AlgebraContext<B>& ctx, unsigned i_max) {
  const std::int64_t N = ctx.ring()->precision();
  LgbClosure<B> out;
  Lattice<B> power = s;  // S^(i+1)
  Lattice<B> current = s;
  out.chain.push_back(current);
  for (unsigned i = 1; i <= i_max + 1; ++i) {
    power = ctx.product(power, s);
    Lattice<B> next = current + power.scaled(static_cast<std::int64_t>(i));
    if (!next.is_zero() && next.scale() < -N)
      throw PrecisionExhausted("closure gauge exponent fell below -N");
    if (next == current) {
      out.stabilized_at = static_cast<std::int64_t>(i - 1);
      break;
    }
    if (i <= i_max) out.chain.push_back(next);
    current = std::move(next);
  }
  return out;
}

/// pi U U inside U.
template <class B>
bool closed_under_pi_product(const Lattice<B>& u, const AlgebraContext<B>& ctx) {
  return ctx.product(u, u).scaled(1).subset_of(u);
}

enum class ProbeVerdict { bounded, diverging, inconclusive };

inline const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::bounded: return "bounded";
    case ProbeVerdict::diverging: return "diverging";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ProbeParams {
  std::int64_t m = 1;
  std::vector<unsigned> j_list{1, 2, 3};
  unsigned l_max = 16;
};

struct ProbeResult {
  unsigned j = 0;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
  std::vector<std::int64_t> gauges;  // gauge of the l-th partial sum
  std::optional<unsigned> stabilized_at;
};

/// Partial sums of (pi^m S^j)^l for l = 1..l_max.  Bounded when the chain of
/// partial sums stabilises (then it is constant from there on), diverging
/// when the gauge strictly decreases for ceil(l_max/2) consecutive steps.
template <class B>
ProbeResult semi_dagger_probe_one(const Lattice<B>& s, const AlgebraContext<B>& ctx,
                                  std::int64_t m, unsigned j, unsigned l_max) {
  if (m < 1) throw InvalidInput("probe needs m >= 1");
  if (j < 1) throw InvalidInput("probe needs j >= 1");
  const std::int64_t N = ctx.ring()->precision();
  ProbeResult res;
  res.j = j;
  const Lattice<B> t = ctx.power(s, j).scaled(m);
  Lattice<B> power = t, sum = t;
  res.gauges.push_back(gauge_exponent(sum));
  const unsigned window = (l_max + 1) / 2;
  unsigned decreasing = 0;
  for (unsigned l = 2; l <= l_max; ++l) {
    power = ctx.product(power, t);
    Lattice<B> next = sum + power;
    const std::int64_t g = gauge_exponent(next);
    if (g != kInfinity && g < -N) throw PrecisionExhausted("probe gauge exponent fell below -N");
    if (next == sum) {
      res.verdict = ProbeVerdict::bounded;
      res.stabilized_at = l - 1;
      return res;
    }
    decreasing = g < res.gauges.back() ? decreasing + 1 : 0;
    res.gauges.push_back(g);
    sum = std::move(next);
    if (decreasing >= window) {
      res.verdict = ProbeVerdict::diverging;
      return res;
    }
  }
  return res;
}

template <class B>
std::vector<ProbeResult> semi_dagger_probe(const Lattice<B>& s, const AlgebraContext<B>& ctx,
                                           const ProbeParams& params) {
  std::vector<ProbeResult> out;
  for (unsigned j : params.j_list)
    out.push_back(semi_dagger_probe_one(s, ctx, params.m, j, params.l_max));
  return out;
}

}  // namespace dagger
