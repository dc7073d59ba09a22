#pragma once

// Complete discrete valuation rings at finite precision.
//
// Two backends share one residue interface:
//   Ring<Padic>   V = Z_p,      residues are integers modulo p^k (GMP);
//   Ring<EqChar>  V = F_q[[t]], residues are polynomials in t modulo t^k.
// A residue "with k digits" is an element of V / pi^k V in canonical form.
// All norms are handled as valuation exponents of pi; the absolute value
// |pi| is never materialised.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dagger/error.hpp"
#include "dagger/finite_field.hpp"

namespace dagger {

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

enum class BackendKind { padic, eqchar };

/// Tag types selecting the residue representation.
struct Padic {};
struct EqChar {};

/// Plain-data description of a ring, as exchanged over JSON.
struct RingDescriptor {
  BackendKind backend = BackendKind::padic;
  std::uint64_t modulus = 5;  // p for padic, q for eqchar
  int precision = 20;

  bool operator==(const RingDescriptor&) const = default;
};

template <class B>
class Ring;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

template <>
class Ring<Padic> {
 public:
  using Residue = mpz_class;
  static constexpr BackendKind kind = BackendKind::padic;

  static std::shared_ptr<const Ring> make(std::uint64_t p, int precision) {
    return std::shared_ptr<const Ring>(new Ring(p, precision));
  }

  RingDescriptor descriptor() const { return {kind, p_, precision_}; }
  int precision() const { return precision_; }
  std::uint64_t prime() const { return p_; }
  std::uint64_t residue_field_order() const { return p_; }

  mpz_class power(int k) const {
    if (k < static_cast<int>(powers_.size())) return powers_[k];
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), p_, static_cast<unsigned long>(k));
    return out;
  }

  Residue zero() const { return 0; }
  Residue one() const { return 1; }
  bool is_zero(const Residue& a) const { return a == 0; }

  Residue reduce(const Residue& a, int digits) const {
    if (digits <= 0) return 0;
    mpz_class m = power(digits), r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
  }

  Residue from_int(std::int64_t n, int digits) const {
    return reduce(mpz_class(static_cast<long>(n)), digits);
  }

  Residue add(const Residue& a, const Residue& b, int digits) const {
    return reduce(a + b, digits);
  }
  Residue sub(const Residue& a, const Residue& b, int digits) const {
    return reduce(a - b, digits);
  }
  Residue neg(const Residue& a, int digits) const { return reduce(-a, digits); }
  Residue mul(const Residue& a, const Residue& b, int digits) const {
    return reduce(a * b, digits);
  }

  /// a * pi^d modulo pi^digits, d >= 0.
  Residue shift_up(const Residue& a, int d, int digits) const {
    if (d >= digits) return 0;
    return reduce(a * power(d), digits);
  }

  /// Exact division by pi^d; a must be divisible.
  Residue shift_down(const Residue& a, int d) const {
    mpz_class out;
    mpz_class m = power(d);
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return out;
  }

  /// Number of factors pi in a nonzero residue.
  int valuation(const Residue& a) const {
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class tmp;
    return static_cast<int>(
        mpz_remove(tmp.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
  }

  Residue inverse(const Residue& u, int digits) const {
    mpz_class out, m = power(digits);
    if (mpz_invert(out.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t()) == 0)
      throw DivisionByZero();
    return out;
  }

  std::string to_decimal(const Residue& a) const { return a.get_str(10); }

  Residue from_decimal(const std::string& s, int digits) const {
    mpz_class out;
    if (s.empty() || out.set_str(s, 10) != 0)
      throw InvalidInput("residue digits '" + s + "'");
    return reduce(out, digits);
  }

  template <class Rng>
  Residue random(Rng& rng, int digits, bool unit) const {
    std::uniform_int_distribution<std::uint64_t> digit(unit ? 1 : 0, p_ - 1);
    mpz_class out = digit(rng);
    std::uniform_int_distribution<std::uint64_t> any(0, p_ - 1);
    mpz_class place = p_;
    for (int i = 1; i < digits; ++i) {
      out += place * mpz_class(static_cast<unsigned long>(any(rng)));
      place *= static_cast<unsigned long>(p_);
    }
    return out;
  }

 private:
  Ring(std::uint64_t p, int precision) : p_(p), precision_(precision) {
    if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
    if (p > (1ull << 31)) throw InvalidInput("p must be below 2^31");
    if (precision < 1) throw InvalidInput("precision must be positive");
    int cached = 4 * precision + 8;
    powers_.reserve(cached);
    mpz_class x = 1;
    for (int i = 0; i < cached; ++i) {
      powers_.push_back(x);
      x *= static_cast<unsigned long>(p);
    }
  }

  std::uint64_t p_;
  int precision_;
  std::vector<mpz_class> powers_;
};

template <>
class Ring<EqChar> {
 public:
  /// Coefficients of t^0, t^1, ... over F_q; no trailing zeros.
  using Residue = std::vector<std::uint32_t>;
  static constexpr BackendKind kind = BackendKind::eqchar;

  static std::shared_ptr<const Ring> make(std::uint64_t q, int precision) {
    return std::shared_ptr<const Ring>(new Ring(q, precision));
  }

  RingDescriptor descriptor() const { return {kind, field_.order(), precision_}; }
  int precision() const { return precision_; }
  std::uint64_t prime() const { return field_.characteristic(); }
  std::uint64_t residue_field_order() const { return field_.order(); }
  const FiniteField& field() const { return field_; }

  Residue zero() const { return {}; }
  Residue one() const { return {1}; }
  bool is_zero(const Residue& a) const { return a.empty(); }

  Residue reduce(Residue a, int digits) const {
    if (digits <= 0) return {};
    if (static_cast<int>(a.size()) > digits) a.resize(digits);
    trim(a);
    return a;
  }

  Residue from_int(std::int64_t n, int digits) const {
    if (digits <= 0) return {};
    auto c = field_.from_int(n);
    return c == 0 ? Residue{} : Residue{c};
  }

  Residue add(const Residue& a, const Residue& b, int digits) const {
    std::size_t len = std::min<std::size_t>(std::max(a.size(), b.size()),
                                            static_cast<std::size_t>(std::max(digits, 0)));
    Residue out(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      std::uint32_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
      out[i] = field_.add(x, y);
    }
    trim(out);
    return out;
  }

  Residue neg(const Residue& a, int digits) const {
    Residue out = reduce(a, digits);
    for (auto& c : out) c = field_.neg(c);
    return out;
  }

  Residue sub(const Residue& a, const Residue& b, int digits) const {
    return add(a, neg(b, digits), digits);
  }

  Residue mul(const Residue& a, const Residue& b, int digits) const {
    if (a.empty() || b.empty() || digits <= 0) return {};
    std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1,
                                            static_cast<std::size_t>(digits));
    Residue out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
        out[i + j] = field_.add(out[i + j], field_.mul(a[i], b[j]));
    }
    trim(out);
    return out;
  }

  Residue shift_up(const Residue& a, int d, int digits) const {
    if (a.empty() || d >= digits) return {};
    Residue out(d, 0);
    out.insert(out.end(), a.begin(), a.end());
    return reduce(std::move(out), digits);
  }

  Residue shift_down(const Residue& a, int d) const {
    if (d >= static_cast<int>(a.size())) return {};
    return Residue(a.begin() + d, a.end());
  }

  int valuation(const Residue& a) const {
    int v = 0;
    while (a[v] == 0) ++v;
    return v;
  }

  Residue inverse(const Residue& u, int digits) const {
    if (u.empty() || u[0] == 0) throw DivisionByZero();
    // Power-series inversion term by term.
    Residue out(digits, 0);
    std::uint32_t c0 = field_.inv(u[0]);
    out[0] = c0;
    for (int n = 1; n < digits; ++n) {
      std::uint32_t acc = 0;
      for (int i = 1; i <= n && i < static_cast<int>(u.size()); ++i)
        acc = field_.add(acc, field_.mul(u[i], out[n - i]));
      out[n] = field_.neg(field_.mul(acc, c0));
    }
    trim(out);
    return out;
  }

  /// Encodes sum c_i t^i as the integer sum c_i q^i.
  std::string to_decimal(const Residue& a) const {
    mpz_class out = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
      out = out * static_cast<unsigned long>(field_.order()) + *it;
    return out.get_str(10);
  }

  Residue from_decimal(const std::string& s, int digits) const {
    mpz_class n;
    if (s.empty() || n.set_str(s, 10) != 0 || n < 0)
      throw InvalidInput("residue digits '" + s + "'");
    Residue out;
    mpz_class q = static_cast<unsigned long>(field_.order()), r;
    while (n != 0) {
      mpz_fdiv_qr(n.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
      out.push_back(static_cast<std::uint32_t>(r.get_ui()));
    }
    return reduce(std::move(out), digits);
  }

  template <class Rng>
  Residue random(Rng& rng, int digits, bool unit) const {
    std::uniform_int_distribution<std::uint32_t> any(0, field_.order() - 1);
    std::uniform_int_distribution<std::uint32_t> nonzero(1, field_.order() - 1);
    Residue out(std::max(digits, 0));
    for (int i = 0; i < digits; ++i) out[i] = (i == 0 && unit) ? nonzero(rng) : any(rng);
    trim(out);
    return out;
  }

 private:
  Ring(std::uint64_t q, int precision)
      : field_(static_cast<std::uint32_t>(q <= FiniteField::kMaxOrder ? q : 0)),
        precision_(precision) {
    if (precision < 1) throw InvalidInput("precision must be positive");
  }

  static void trim(Residue& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  FiniteField field_;
  int precision_;
};

template <class B>
using RingPtr = std::shared_ptr<const Ring<B>>;

}  // namespace dagger
