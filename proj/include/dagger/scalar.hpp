#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <type_traits>
#include <utility>

#include "dagger/ring.hpp"

namespace dagger {

/// An element x = pi^v * u of V or of its fraction field K, known modulo
/// pi^(N - loss) where N is the ring precision.
///
/// The unit u is stored with N - v digits, so every scalar is a fixed
/// absolute-precision representative; arithmetic on elements of V is exact
/// arithmetic in V / pi^N V.  Zero is canonical (valuation kInfinity); a
/// result whose residue vanishes at precision N becomes zero.  Division by
/// an element of positive valuation cannot recover the lost digits and
/// records the shortfall in loss().
template <class B>
class Scalar {
 public:
  using RingType = Ring<B>;
  using Residue = typename RingType::Residue;

  Scalar() = default;

  static Scalar zero(RingPtr<B> ring) {
    Scalar s;
    s.ring_ = std::move(ring);
    s.unit_ = s.ring_->zero();
    return s;
  }

  static Scalar from_int(RingPtr<B> ring, std::int64_t n) {
    int N = ring->precision();
    auto r = ring->from_int(n, N);
    return from_shifted(std::move(ring), 0, std::move(r), 0);
  }

  static Scalar one(RingPtr<B> ring) { return from_int(std::move(ring), 1); }

  static Scalar pi_power(RingPtr<B> ring, std::int64_t e) {
    if (e >= ring->precision()) return zero(std::move(ring));
    Scalar s;
    s.val_ = e;
    s.unit_ = ring->one();
    s.ring_ = std::move(ring);
    return s;
  }

  /// pi^e * a where a is an arbitrary residue (not necessarily a unit).
  static Scalar from_shifted(RingPtr<B> ring, std::int64_t e, Residue a, int loss) {
    const int N = ring->precision();
    if (e >= N) return zero(std::move(ring));
    a = ring->reduce(std::move(a), digits_for(N, e));
    if (ring->is_zero(a)) return zero(std::move(ring));
    int w = ring->valuation(a);
    Scalar s;
    s.val_ = e + w;
    if (s.val_ >= N) return zero(std::move(ring));
    s.unit_ = ring->shift_down(a, w);
    s.loss_ = loss;
    s.ring_ = std::move(ring);
    return s;
  }

  template <class Rng>
  static Scalar random_unit(RingPtr<B> ring, Rng& rng) {
    auto u = ring->random(rng, ring->precision(), true);
    return from_shifted(std::move(ring), 0, std::move(u), 0);
  }

  /// Random element with valuation in [min_val, max_val], or zero with the
  /// given probability.
  template <class Rng>
  static Scalar random(RingPtr<B> ring, Rng& rng, std::int64_t min_val,
                       std::int64_t max_val, double zero_probability = 0.0) {
    std::bernoulli_distribution pick_zero(zero_probability);
    if (zero_probability > 0 && pick_zero(rng)) return Scalar::zero(std::move(ring));
    std::uniform_int_distribution<std::int64_t> v(min_val, max_val);
    std::int64_t val = v(rng);
    if (val >= ring->precision()) return Scalar::zero(std::move(ring));
    auto u = ring->random(rng, digits_for(ring->precision(), val), true);
    return from_shifted(std::move(ring), val, std::move(u), 0);
  }

  const RingPtr<B>& ring() const { return ring_; }
  int precision() const { return ring_->precision(); }
  std::int64_t val() const { return val_; }
  bool is_zero() const { return val_ == kInfinity; }
  const Residue& unit() const { return unit_; }
  int loss() const { return loss_; }
  bool is_integral() const { return val_ >= 0; }
  bool is_unit() const { return val_ == 0; }

  /// Zero, or nonzero only in digits that are no longer significant.
  bool is_negligible() const {
    return is_zero() || val_ >= static_cast<std::int64_t>(precision()) - loss_;
  }

  Scalar operator-() const {
    if (is_zero()) return *this;
    Scalar s = *this;
    s.unit_ = ring_->neg(unit_, digits());
    return s;
  }

  Scalar operator+(const Scalar& other) const {
    check_same_ring(other);
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    std::int64_t e = std::min(val_, other.val_);
    int d = digits_for(precision(), e);
    auto a = ring_->shift_up(unit_, static_cast<int>(val_ - e), d);
    auto b = ring_->shift_up(other.unit_, static_cast<int>(other.val_ - e), d);
    return from_shifted(ring_, e, ring_->add(a, b, d), std::max(loss_, other.loss_));
  }

  Scalar operator-(const Scalar& other) const { return *this + (-other); }

  Scalar operator*(const Scalar& other) const {
    check_same_ring(other);
    if (is_zero() || other.is_zero()) return zero(ring_);
    std::int64_t v = val_ + other.val_;
    if (v >= precision()) return zero(ring_);
    int d = digits_for(precision(), v);
    Scalar s;
    s.ring_ = ring_;
    s.val_ = v;
    s.unit_ = ring_->mul(unit_, other.unit_, d);
    s.loss_ = loss_after(v, other);
    return s;
  }

  Scalar operator/(const Scalar& other) const {
    check_same_ring(other);
    if (other.is_zero()) throw DivisionByZero();
    if (is_zero()) return *this;
    const std::int64_t N = precision();
    std::int64_t v = val_ - other.val_;
    if (v >= N) return zero(ring_);
    int d = digits_for(N, v);
    Scalar s;
    s.ring_ = ring_;
    s.val_ = v;
    s.unit_ = ring_->mul(unit_, ring_->inverse(other.unit_, d), d);
    s.loss_ = loss_after(v, other);
    return s;
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar pow(std::int64_t n) const {
    if (n < 0) return one(ring_) / pow(-n);
    Scalar result = one(ring_), base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return result;
  }

  Scalar inverse() const { return one(ring_) / *this; }

  /// Multiplication by pi^d (d of either sign).
  Scalar shift(std::int64_t d) const {
    if (is_zero() || d == 0) return *this;
    const std::int64_t N = precision();
    Scalar s = *this;
    s.val_ = val_ + d;
    if (s.val_ >= N) return zero(ring_);
    s.unit_ = ring_->reduce(unit_, digits_for(N, s.val_));
    // Known modulo pi^(N - loss) before, pi^(N - loss + d) after.
    s.loss_ = static_cast<int>(std::max<std::int64_t>(0, loss_ - d));
    return s;
  }

  /// The canonical representative modulo pi^k (absolute).
  Scalar truncate(std::int64_t k) const {
    if (is_zero() || val_ >= k) return zero(ring_);
    if (k >= precision()) return *this;
    Scalar s = *this;
    s.unit_ = ring_->reduce(unit_, static_cast<int>(k - val_));
    return s;
  }

  /// Equality at the common significant precision.
  bool operator==(const Scalar& other) const { return (*this - other).is_negligible(); }
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  /// Representation equality: same valuation, unit residue and loss.
  bool identical(const Scalar& other) const {
    return val_ == other.val_ && loss_ == other.loss_ && unit_ == other.unit_;
  }

  std::string unit_digits() const { return ring_->to_decimal(unit_); }

  std::string to_string() const;

 private:
  static int digits_for(std::int64_t N, std::int64_t v) {
    std::int64_t d = N - v;
    if (d > 64 * N + 4096) throw PrecisionExhausted("valuation " + std::to_string(v) + " is too negative");
    return static_cast<int>(d);
  }

  // A product or quotient is only as precise (relatively) as its least
  // precise operand; the shortfall against the N - v digits stored for a
  // result of valuation v is the loss.
  int loss_after(std::int64_t v, const Scalar& other) const {
    const std::int64_t N = precision();
    std::int64_t relative = std::min(N - val_ - loss_, N - other.val_ - other.loss_);
    return static_cast<int>(std::max<std::int64_t>(0, (N - v) - relative));
  }

  int digits() const { return digits_for(precision(), val_); }

  void check_same_ring(const Scalar& other) const {
    if (ring_ != other.ring_ && ring_->descriptor() != other.ring_->descriptor())
      throw DescriptorMismatch("scalars over different rings");
  }

  RingPtr<B> ring_;
  std::int64_t val_ = kInfinity;
  Residue unit_{};
  int loss_ = 0;
};

template <class B>
std::ostream& operator<<(std::ostream& os, const Scalar<B>& x) {
  return os << x.to_string();
}

template <class B>
std::int64_t val(const Scalar<B>& x) {
  return x.val();
}

namespace detail {

inline std::string padic_string(const Scalar<Padic>& x) {
  const auto& ring = *x.ring();
  if (x.val() >= 0) {
    mpz_class value = x.unit() * ring.power(static_cast<int>(x.val()));
    return value.get_str(10);
  }
  return x.unit().get_str(10) + "/" + std::to_string(ring.prime()) + "^" +
         std::to_string(-x.val());
}

inline std::string eqchar_string(const Scalar<EqChar>& x) {
  std::string out;
  const auto& u = x.unit();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    std::int64_t e = x.val() + static_cast<std::int64_t>(i);
    if (!out.empty()) out += " + ";
    std::string coeff = std::to_string(u[i]);
    if (e == 0) {
      out += coeff;
    } else {
      if (u[i] != 1) out += coeff + "*";
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace detail

template <class B>
std::string Scalar<B>::to_string() const {
  if (is_zero()) return "0";
  std::string body;
  if constexpr (std::is_same_v<B, Padic>) {
    body = detail::padic_string(*this);
  } else {
    body = detail::eqchar_string(*this);
  }
  if (loss_ > 0) body += " + O(pi^" + std::to_string(precision() - loss_) + ")";
  return body;
}

}  // namespace dagger
