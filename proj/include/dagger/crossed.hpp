#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "dagger/algebra.hpp"
#include "dagger/series.hpp"
#include "dagger/spectral.hpp"

namespace dagger {

/// Inverse of a matrix in GL_k(V), via its Smith form U A W = I.
template <class B>
Matrix<B> inverse_over_v(const Matrix<B>& a) {
  if (!a.is_square()) throw InvalidInput("only square matrices are invertible");
  auto f = smith_normal_form(a);
  if (f.rank != a.rows()) throw InvalidInput("matrix is not invertible over V");
  for (auto e : f.exponents())
    if (e != 0) throw InvalidInput("matrix is not invertible over V");
  return f.W * f.U;
}

/// (alpha_1 f)(x) = f(a x + b) on polynomials over N^k, a in GL_k(V).
///
/// alpha_n is f(A_n x + B_n).  Composition of pairs is
/// (A, B) o (A', B') = (A A', A B' + B) and the pairs for +-1 commute, so
/// the pair for n is built by repeated squaring and memoised.
template <class B>
class AffineAction {
 public:
  struct Pair {
    Matrix<B> a;
    Vector<B> b;
  };

  AffineAction(Matrix<B> a, Vector<B> b) : ring_(a.ring()), k_(a.rows()) {
    if (!a.is_square()) throw InvalidInput("action matrix must be square");
    if (b.size() != k_) throw DescriptorMismatch("translation length differs from matrix size");
    if (!a.is_integral()) throw InvalidInput("action matrix must have entries in V");
    for (const auto& x : b)
      if (x.val() < 0) throw InvalidInput("translation must have entries in V");
    Matrix<B> inv = inverse_over_v(a);
    Vector<B> inv_b = inv * b;
    for (auto& x : inv_b) x = -x;
    memo_ = std::make_shared<Memo>();
    memo_->table.emplace(0, Pair{Matrix<B>::identity(ring_, k_), Vector<B>(k_, Scalar<B>::zero(ring_))});
    memo_->table.emplace(1, Pair{a, b});
    memo_->table.emplace(-1, Pair{inv, inv_b});
  }

  const RingPtr<B>& ring() const { return ring_; }
  std::size_t rank() const { return k_; }
  Matrix<B> a() const { return pair(1).a; }
  Vector<B> b() const { return pair(1).b; }
  Matrix<B> a_inverse() const { return pair(-1).a; }

  /// (A_n, B_n); thread-safe, entries are never modified once written.
  Pair pair(std::int64_t n) const {
    {
      std::shared_lock lock(memo_->mutex);
      auto it = memo_->table.find(n);
      if (it != memo_->table.end()) return it->second;
    }
    const Pair base = pair(n > 0 ? 1 : -1);
    Pair result = pair(0), square = base;
    for (std::uint64_t e = static_cast<std::uint64_t>(std::llabs(n)); e > 0; e >>= 1) {
      if (e & 1) result = compose(result, square);
      if (e > 1) square = compose(square, square);
    }
    std::unique_lock lock(memo_->mutex);
    return memo_->table.emplace(n, std::move(result)).first->second;
  }

  std::size_t memo_size() const {
    std::shared_lock lock(memo_->mutex);
    return memo_->table.size();
  }

  /// alpha_n(f) = f(A_n x + B_n).
  DaggerSeries<B> act(std::int64_t n, const DaggerSeries<B>& f) const {
    if (f.monoid().kind != MonoidKind::Nk || f.monoid().rank != k_)
      throw DescriptorMismatch("action needs series over N^k with matching k");
    if (n == 0) return f;
    const Pair p = pair(n);
    const auto m = f.monoid();
    // Images of the variables: sum_j A_ij x_j + B_i.
    std::vector<DaggerSeries<B>> images;
    for (std::size_t i = 0; i < k_; ++i) {
      DaggerSeries<B> li(ring_, m, f.cap());
      li.add_term(MonoidElem::identity(m), p.b[i]);
      for (std::size_t j = 0; j < k_; ++j) li.add_term(MonoidElem::generator(m, j), p.a(i, j));
      images.push_back(std::move(li));
    }
    std::vector<std::vector<DaggerSeries<B>>> powers(k_);
    DaggerSeries<B> out(ring_, m, f.cap());
    const auto one = DaggerSeries<B>::monomial(ring_, m, f.cap(), MonoidElem::identity(m));
    for (const auto& [s, x] : f.terms()) {
      DaggerSeries<B> term = DaggerSeries<B>::monomial(ring_, m, f.cap(), MonoidElem::identity(m), x);
      for (std::size_t i = 0; i < k_; ++i) {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(one);
        while (static_cast<std::int64_t>(pw.size()) <= s.data()[i]) pw.push_back(mul(pw.back(), images[i]));
        term = mul(term, pw[static_cast<std::size_t>(s.data()[i])]);
      }
      out = out + term;
    }
    out.mark_truncated(f.truncated());
    return out;
  }

  /// Matrix of alpha_n on the coordinates of an algebra of series over N^k.
  Matrix<B> operator_matrix(std::int64_t n, const AlgebraContext<B>& ctx) const {
    const auto& mons = ctx.monomials();
    std::vector<Vector<B>> cols;
    for (const auto& s : mons)
      cols.push_back(ctx.coordinates(act(n, DaggerSeries<B>::monomial(ring_, ctx.monoid(), ctx.cap(), s))));
    return Matrix<B>::from_columns(ring_, mons.size(), cols);
  }

 private:
  Pair compose(const Pair& x, const Pair& y) const {
    Vector<B> b = x.a * y.b;
    for (std::size_t i = 0; i < k_; ++i) b[i] += x.b[i];
    return {x.a * y.a, std::move(b)};
  }

  struct Memo {
    mutable std::shared_mutex mutex;
    std::map<std::int64_t, Pair> table;
  };

  RingPtr<B> ring_;
  std::size_t k_ = 0;
  std::shared_ptr<Memo> memo_;
};

template <class B>
DaggerSeries<B> act(const AffineAction<B>& alpha, std::int64_t n, const DaggerSeries<B>& f) {
  return alpha.act(n, f);
}

inline std::int64_t total_degree(const MonoidElem& s) { return s.length(); }

/// sum_n a_n delta_n with a_n a series over N^k, supported on |n| <= Dz.
template <class B>
class CrossedElem {
 public:
  CrossedElem() = default;
  CrossedElem(RingPtr<B> ring, MonoidDescriptor monoid, std::int64_t cap, std::int64_t dz)
      : ring_(std::move(ring)), monoid_(monoid), cap_(cap), dz_(dz) {
    if (dz < 0) throw InvalidInput("Dz must be non-negative");
  }

  static CrossedElem single(const DaggerSeries<B>& f, std::int64_t n, std::int64_t dz) {
    CrossedElem u(f.ring(), f.monoid(), f.cap(), dz);
    u.add(n, f);
    return u;
  }

  const RingPtr<B>& ring() const { return ring_; }
  const MonoidDescriptor& monoid() const { return monoid_; }
  std::int64_t cap() const { return cap_; }
  std::int64_t dz() const { return dz_; }
  const std::map<std::int64_t, DaggerSeries<B>>& terms() const { return terms_; }
  bool truncated() const { return truncated_; }
  void mark_truncated(bool flag = true) { truncated_ = truncated_ || flag; }
  const std::optional<GrowthCertificate>& certificate() const { return cert_; }
  void attach_certificate(std::optional<GrowthCertificate> c) { cert_ = c; }

  void set_certificate(std::optional<GrowthCertificate> c) {
    if (c && !holds(*c)) throw InvalidInput("certificate does not hold for the stored terms");
    cert_ = c;
  }

  bool holds(const GrowthCertificate& c) const {
    for (const auto& [n, f] : terms_)
      for (const auto& [s, x] : f.terms())
        if (Rational(x.val() + 1 + c.k) < c.c * (std::llabs(n) + s.length())) return false;
    return true;
  }

  /// Adds f delta_n, dropping (and flagging) |n| > Dz.
  void add(std::int64_t n, const DaggerSeries<B>& f) {
    if (!(f.monoid() == monoid_) || f.cap() != cap_) throw DescriptorMismatch("coefficient series shape");
    truncated_ = truncated_ || f.truncated();
    if (f.is_zero()) return;
    if (std::llabs(n) > dz_) {
      truncated_ = true;
      return;
    }
    auto [it, inserted] = terms_.try_emplace(n, f);
    if (!inserted) {
      it->second = it->second + f;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      it->second.attach_certificate(std::nullopt);
    }
  }

  bool operator==(const CrossedElem& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
      if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
  }

  void check_compatible(const CrossedElem& o) const {
    if (!(monoid_ == o.monoid_) || cap_ != o.cap_ || dz_ != o.dz_)
      throw DescriptorMismatch("crossed elements with different caps");
    if (ring_ != o.ring_ && ring_->descriptor() != o.ring_->descriptor())
      throw DescriptorMismatch("crossed elements over different rings");
  }

 private:
  RingPtr<B> ring_;
  MonoidDescriptor monoid_;
  std::int64_t cap_ = 0;
  std::int64_t dz_ = 0;
  std::map<std::int64_t, DaggerSeries<B>> terms_;
  std::optional<GrowthCertificate> cert_;
  bool truncated_ = false;
};

/// (sum a_p delta_p)(sum b_q delta_q) = sum a_p alpha_p(b_q) delta_(p+q).
template <class B>
CrossedElem<B> crossed_mul(const CrossedElem<B>& u, const CrossedElem<B>& v,
                           const AffineAction<B>& alpha) {
  u.check_compatible(v);
  CrossedElem<B> out(u.ring(), u.monoid(), u.cap(), u.dz());
  out.mark_truncated(u.truncated() || v.truncated());
  for (const auto& [p, a] : u.terms())
    for (const auto& [q, b] : v.terms()) {
      if (std::llabs(p + q) > u.dz()) {
        out.mark_truncated();
        continue;
      }
      out.add(p + q, mul(a, alpha.act(p, b)));
    }
  if (u.certificate() && v.certificate())
    out.attach_certificate(combine_product(*u.certificate(), *v.certificate()));
  return out;
}

/// Minimal k with nu(a_{n,m}) + 1 + k >= c (|n| + |m|) over stored terms.
template <class B>
CertifyResult crossed_certify(const CrossedElem<B>& u, const Rational& c) {
  if (c <= 0) throw InvalidInput("growth rate must be positive");
  std::int64_t k = 0;
  for (const auto& [n, f] : u.terms())
    for (const auto& [s, x] : f.terms())
      k = std::max(k, required_offset(c, std::llabs(n) + s.length(), x.val()));
  return {k == 0, k};
}

enum class BoundednessVerdict { stabilized, diverging, inconclusive };

inline const char* to_string(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::stabilized: return "stabilized";
    case BoundednessVerdict::diverging: return "diverging";
    case BoundednessVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <class B>
struct BoundednessReport {
  BoundednessVerdict verdict = BoundednessVerdict::inconclusive;
  Lattice<B> lattice;                // the last T computed
  std::vector<std::int64_t> gauges;  // gauge of T after each step
  std::optional<unsigned> stabilized_at;
  // Which invariance was verified on stabilisation: with both directions
  // alpha_1 T inside T and alpha_-1 T inside T, hence alpha_1 T = T.
  bool forward_invariant = false;
  bool backward_invariant = false;
};

/// T <- T + F T + G T for an operator pair (F, G) = (alpha_1, alpha_-1),
/// starting from U.  Pass an empty G to probe a monoid action (forward
/// invariance only).
template <class B>
BoundednessReport<B> uniform_boundedness_probe(const Matrix<B>& forward,
                                               const std::optional<Matrix<B>>& backward,
                                               const Lattice<B>& u, unsigned depth) {
  const std::int64_t N = forward.ring()->precision();
  BoundednessReport<B> rep;
  Lattice<B> t = u;
  rep.gauges.push_back(gauge_exponent(t));
  const unsigned window = (depth + 1) / 2;
  unsigned decreasing = 0;
  for (unsigned step = 1; step <= depth; ++step) {
    Lattice<B> next = t + apply(forward, t);
    if (backward) next = next + apply(*backward, t);
    const std::int64_t g = gauge_exponent(next);
    if (g != kInfinity && g < -N) throw PrecisionExhausted("probe gauge exponent fell below -N");
    if (next == t) {
      rep.verdict = BoundednessVerdict::stabilized;
      rep.stabilized_at = step - 1;
      rep.lattice = t;
      rep.forward_invariant = true;
      rep.backward_invariant = backward.has_value();
      return rep;
    }
    decreasing = g < rep.gauges.back() ? decreasing + 1 : 0;
    rep.gauges.push_back(g);
    t = std::move(next);
    if (decreasing >= window) {
      rep.verdict = BoundednessVerdict::diverging;
      break;
    }
  }
  rep.lattice = t;
  return rep;
}

template <class B>
BoundednessReport<B> uniform_boundedness_probe(const AffineAction<B>& alpha,
                                               const AlgebraContext<B>& ctx, const Lattice<B>& u,
                                               unsigned depth) {
  return uniform_boundedness_probe(alpha.operator_matrix(1, ctx),
                                   std::optional<Matrix<B>>(alpha.operator_matrix(-1, ctx)), u,
                                   depth);
}

}  // namespace dagger
