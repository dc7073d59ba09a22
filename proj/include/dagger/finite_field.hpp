#pragma once

#include <cstdint>
#include <vector>

#include "dagger/error.hpp"

namespace dagger {

/// The finite field F_q, q = p^e <= 2^16.  Elements are encoded as integers
/// 0 <= a < q whose base-p digits are the coefficients of a polynomial in a
/// fixed generator y modulo an irreducible polynomial of degree e.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  explicit FiniteField(std::uint32_t q) : q_(q) {
    if (q < 2 || q > kMaxOrder) throw InvalidInput("field order out of range");
    p_ = smallest_prime_factor(q);
    std::uint32_t rest = q;
    while (rest % p_ == 0) {
      rest /= p_;
      ++e_;
    }
    if (rest != 1) throw InvalidInput("field order is not a prime power");
    if (e_ > 1) build_tables();
  }

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }

  std::uint32_t from_int(std::int64_t n) const {
    auto r = n % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
      auto s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      out += ((p_ - a % p_) % p_) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) {
      return static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t l = log_[a] + log_[b];
    if (l >= q_ - 1) l -= q_ - 1;
    return exp_[l];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    if (e_ == 1) return pow(a, p_ - 2);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const {
    std::uint32_t result = 1;
    while (n > 0) {
      if (n & 1) result = mul(result, a);
      a = mul(a, a);
      n >>= 1;
    }
    return result;
  }

 private:
  using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, low first

  static std::uint32_t smallest_prime_factor(std::uint32_t n) {
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return d;
    return n;
  }

  Poly decode(std::uint32_t a, std::uint32_t len) const {
    Poly out(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  std::uint32_t encode(const Poly& f) const {
    std::uint32_t out = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) out = out * p_ + *it;
    return out;
  }

  // Remainder of f modulo the monic polynomial g.
  Poly poly_mod(Poly f, const Poly& g) const {
    std::size_t dg = g.size() - 1;
    for (std::size_t i = f.size(); i-- > dg;) {
      std::uint32_t c = f[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dg; ++j)
        f[i - dg + j] = (f[i - dg + j] + (p_ - c) * g[j] % p_) % p_;
    }
    f.resize(dg);
    return f;
  }

  bool is_irreducible(const Poly& f) const {
    std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= n; ++d) {
      std::uint32_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p_;
      for (std::uint32_t low = 0; low < count; ++low) {
        Poly g = decode(low, d);
        g.push_back(1);
        Poly r = poly_mod(f, g);
        bool zero = true;
        for (auto c : r) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    Poly fa = decode(a, e_), fb = decode(b, e_), prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j)
        prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p_;
    return encode(poly_mod(prod, modulus_));
  }

  void build_tables() {
    for (std::uint32_t low = 0; low < q_; ++low) {
      Poly f = decode(low, e_);
      f.push_back(1);
      if (is_irreducible(f)) {
        modulus_ = f;
        break;
      }
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 2; g < q_; ++g) {
      std::uint32_t x = 1, k = 0;
      do {
        exp_[k] = x;
        log_[x] = k;
        x = slow_mul(x, g);
        ++k;
      } while (x != 1 && k < q_ - 1);
      if (x == 1 && k == q_ - 1) return;
    }
    throw InvalidInput("no primitive element found");
  }

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  Poly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace dagger
