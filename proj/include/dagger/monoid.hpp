#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dagger/scalar.hpp"

namespace dagger {

enum class MonoidKind { Nk, Zk, Free };

/// N^k, Z^k or the free monoid on n letters, each with its canonical
/// generating set (e_i, +-e_i, letters).
struct MonoidDescriptor {
  MonoidKind kind = MonoidKind::Nk;
  std::size_t rank = 1;  // k, or the alphabet size

  static MonoidDescriptor N(std::size_t k) { return {MonoidKind::Nk, k}; }
  static MonoidDescriptor Z(std::size_t k) { return {MonoidKind::Zk, k}; }
  static MonoidDescriptor free(std::size_t n) {
    if (n == 0 || n > 26) throw InvalidInput("free monoid alphabet must have 1..26 letters");
    return {MonoidKind::Free, n};
  }

  bool is_abelian() const { return kind != MonoidKind::Free || rank == 1; }
  bool operator==(const MonoidDescriptor&) const = default;

  std::string name() const {
    switch (kind) {
      case MonoidKind::Nk: return "N^" + std::to_string(rank);
      case MonoidKind::Zk: return "Z^" + std::to_string(rank);
      case MonoidKind::Free: return "Free(" + std::to_string(rank) + ")";
    }
    return "?";
  }
};

/// Exponent vector (N^k, Z^k) or word over letters 0..n-1 (Free), with the
/// word length for the canonical generators cached.
class MonoidElem {
 public:
  MonoidElem() = default;

  static MonoidElem identity(const MonoidDescriptor& m) {
    MonoidElem e;
    e.desc_ = m;
    if (m.kind != MonoidKind::Free) e.data_.assign(m.rank, 0);
    return e;
  }

  static MonoidElem exponents(const MonoidDescriptor& m, std::vector<std::int64_t> v) {
    if (m.kind == MonoidKind::Free) throw InvalidInput("free monoid elements are words");
    if (v.size() != m.rank) throw DescriptorMismatch("exponent vector of wrong rank");
    for (auto x : v)
      if (m.kind == MonoidKind::Nk && x < 0) throw InvalidInput("negative exponent in N^k");
    MonoidElem e;
    e.desc_ = m;
    e.data_ = std::move(v);
    e.recompute_length();
    return e;
  }

  static MonoidElem word(const MonoidDescriptor& m, const std::string& letters) {
    if (m.kind != MonoidKind::Free) throw InvalidInput("words only exist in free monoids");
    MonoidElem e;
    e.desc_ = m;
    for (char c : letters) {
      if (c < 'a' || static_cast<std::size_t>(c - 'a') >= m.rank)
        throw InvalidInput(std::string("letter '") + c + "' outside the alphabet");
      e.data_.push_back(c - 'a');
    }
    e.length_ = static_cast<std::int64_t>(e.data_.size());
    return e;
  }

  /// The i-th canonical generator (sign -1 only in Z^k).
  static MonoidElem generator(const MonoidDescriptor& m, std::size_t i, int sign = 1) {
    if (i >= m.rank) throw InvalidInput("generator index out of range");
    if (m.kind == MonoidKind::Free) return word(m, std::string(1, static_cast<char>('a' + i)));
    if (sign < 0 && m.kind != MonoidKind::Zk) throw InvalidInput("inverse generator outside Z^k");
    std::vector<std::int64_t> v(m.rank, 0);
    v[i] = sign;
    return exponents(m, std::move(v));
  }

  const MonoidDescriptor& descriptor() const { return desc_; }
  const std::vector<std::int64_t>& data() const { return data_; }
  std::int64_t length() const { return length_; }
  bool is_identity() const { return length_ == 0; }

  MonoidElem compose(const MonoidElem& t) const {
    if (!(desc_ == t.desc_)) throw DescriptorMismatch("elements of different monoids");
    MonoidElem out;
    out.desc_ = desc_;
    if (desc_.kind == MonoidKind::Free) {
      out.data_ = data_;
      out.data_.insert(out.data_.end(), t.data_.begin(), t.data_.end());
      out.length_ = static_cast<std::int64_t>(out.data_.size());
    } else {
      out.data_.resize(data_.size());
      for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + t.data_[i];
      out.recompute_length();
    }
    return out;
  }

  MonoidElem operator*(const MonoidElem& t) const { return compose(t); }

  MonoidElem inverse() const {
    if (desc_.kind != MonoidKind::Zk) {
      if (is_identity()) return *this;
      throw InvalidInput("only Z^k elements are invertible");
    }
    MonoidElem out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  bool operator==(const MonoidElem& o) const { return desc_ == o.desc_ && data_ == o.data_; }
  bool operator<(const MonoidElem& o) const {
    if (length_ != o.length_) return length_ < o.length_;
    return data_ < o.data_;
  }

  std::string to_string() const {
    if (desc_.kind == MonoidKind::Free) {
      std::string w;
      for (auto c : data_) w += static_cast<char>('a' + c);
      return w.empty() ? "1" : w;
    }
    std::string s = "(";
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(data_[i]);
    }
    return s + ")";
  }

 private:
  void recompute_length() {
    length_ = 0;
    for (auto x : data_) length_ += std::llabs(x);
  }

  MonoidDescriptor desc_;
  std::vector<std::int64_t> data_;
  std::int64_t length_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const MonoidElem& s) { return os << s.to_string(); }

/// l_{>=1}: the word length, except that the identity gets 1.
inline std::int64_t length_ge1(const MonoidElem& s) { return std::max<std::int64_t>(s.length(), 1); }

/// Word length on Z^1 for the generating set {+-1, +-2}.
inline std::int64_t alternate_length_z1(const MonoidElem& s) {
  if (s.descriptor().kind != MonoidKind::Zk || s.descriptor().rank != 1)
    throw InvalidInput("alternate length is defined on Z^1");
  return (std::llabs(s.data()[0]) + 1) / 2;
}

/// Every element of length at most d, ordered by (length, data).
inline std::vector<MonoidElem> ball(const MonoidDescriptor& m, std::int64_t d) {
  std::vector<MonoidElem> out;
  if (d < 0) return out;
  if (m.kind == MonoidKind::Free) {
    std::vector<std::string> layer{""};
    out.push_back(MonoidElem::identity(m));
    for (std::int64_t len = 1; len <= d; ++len) {
      std::vector<std::string> next;
      for (const auto& w : layer)
        for (std::size_t c = 0; c < m.rank; ++c) next.push_back(w + static_cast<char>('a' + c));
      for (const auto& w : next) out.push_back(MonoidElem::word(m, w));
      layer = std::move(next);
    }
    return out;
  }
  std::vector<std::int64_t> v(m.rank, 0);
  const std::int64_t lo = m.kind == MonoidKind::Zk ? -d : 0;
  auto rec = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
    if (i == m.rank) {
      out.push_back(MonoidElem::exponents(m, v));
      return;
    }
    for (std::int64_t x = std::max(lo, -budget); x <= budget; ++x) {
      v[i] = x;
      self(self, i + 1, budget - std::llabs(x));
    }
    v[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

template <class Rng>
MonoidElem random_element(const MonoidDescriptor& m, Rng& rng, std::int64_t max_length) {
  std::uniform_int_distribution<std::int64_t> len(0, max_length);
  std::uniform_int_distribution<std::size_t> gen(0, m.rank - 1);
  std::bernoulli_distribution negative(0.5);
  MonoidElem s = MonoidElem::identity(m);
  for (std::int64_t n = len(rng); n > 0; --n) {
    int sign = (m.kind == MonoidKind::Zk && negative(rng)) ? -1 : 1;
    s = s * MonoidElem::generator(m, gen(rng), sign);
  }
  return s;
}

enum class CocycleKind { trivial, bicharacter, table };

/// A V^x-valued function on S x S: trivial, c(s,t) = lambda^(s^T Q t) on
/// N^k or Z^k, or an explicit table (pairs not listed evaluate to 1).
template <class B>
class Cocycle {
 public:
  static Cocycle trivial(RingPtr<B> ring, MonoidDescriptor m) {
    Cocycle c;
    c.ring_ = std::move(ring);
    c.monoid_ = m;
    return c;
  }

  static Cocycle bicharacter(MonoidDescriptor m, Scalar<B> lambda,
                             std::vector<std::vector<std::int64_t>> q) {
    if (m.kind == MonoidKind::Free) throw InvalidInput("bicharacter cocycles need N^k or Z^k");
    if (lambda.val() != 0) throw InvalidInput("cocycle parameter lambda must be a unit");
    if (q.size() != m.rank) throw DescriptorMismatch("Q must be k x k");
    for (const auto& row : q)
      if (row.size() != m.rank) throw DescriptorMismatch("Q must be k x k");
    Cocycle c;
    c.kind_ = CocycleKind::bicharacter;
    c.ring_ = lambda.ring();
    c.monoid_ = m;
    c.lambda_ = std::move(lambda);
    c.q_ = std::move(q);
    return c;
  }

  static Cocycle table(RingPtr<B> ring, MonoidDescriptor m,
                       std::map<std::pair<MonoidElem, MonoidElem>, Scalar<B>> values) {
    for (const auto& [key, v] : values)
      if (v.val() != 0) throw InvalidInput("cocycle values must be units");
    Cocycle c;
    c.kind_ = CocycleKind::table;
    c.ring_ = std::move(ring);
    c.monoid_ = m;
    c.table_ = std::move(values);
    return c;
  }

  CocycleKind kind() const { return kind_; }
  const MonoidDescriptor& monoid() const { return monoid_; }
  const RingPtr<B>& ring() const { return ring_; }
  const Scalar<B>& lambda() const { return lambda_; }
  const std::vector<std::vector<std::int64_t>>& q() const { return q_; }
  const std::map<std::pair<MonoidElem, MonoidElem>, Scalar<B>>& entries() const { return table_; }

  /// s^T Q t.
  std::int64_t exponent(const MonoidElem& s, const MonoidElem& t) const {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < q_.size(); ++i)
      for (std::size_t j = 0; j < q_.size(); ++j) e += s.data()[i] * q_[i][j] * t.data()[j];
    return e;
  }

  Scalar<B> operator()(const MonoidElem& s, const MonoidElem& t) const {
    if (!(s.descriptor() == monoid_) || !(t.descriptor() == monoid_))
      throw DescriptorMismatch("cocycle evaluated outside its monoid");
    switch (kind_) {
      case CocycleKind::trivial: return Scalar<B>::one(ring_);
      case CocycleKind::bicharacter: return lambda_.pow(exponent(s, t));
      case CocycleKind::table: {
        auto it = table_.find({s, t});
        return it == table_.end() ? Scalar<B>::one(ring_) : it->second;
      }
    }
    return Scalar<B>::one(ring_);
  }

 private:
  CocycleKind kind_ = CocycleKind::trivial;
  RingPtr<B> ring_;
  MonoidDescriptor monoid_;
  Scalar<B> lambda_;
  std::vector<std::vector<std::int64_t>> q_;
  std::map<std::pair<MonoidElem, MonoidElem>, Scalar<B>> table_;
};

template <class B>
Scalar<B> cocycle_eval(const Cocycle<B>& c, const MonoidElem& s, const MonoidElem& t) {
  return c(s, t);
}

/// Checks normalisation c(s,1) = c(1,s) = 1 and the identity
/// c(r,st) c(s,t) = c(rs,t) c(r,s) on sampled triples (fixed seed).
/// Bicharacter and trivial cocycles are sampled from elements of length
/// <= 3.  A table is only a partial function, so its triples are drawn from
/// the listed elements and a triple counts only when all four pairs it
/// needs are listed.
template <class B>
bool cocycle_check(const Cocycle<B>& c, std::size_t sample_count, std::uint64_t seed = 1) {
  const auto& m = c.monoid();
  std::mt19937_64 rng(seed);
  const auto one = MonoidElem::identity(m);
  const auto unit = Scalar<B>::one(c.ring());
  if (c.kind() == CocycleKind::table) {
    std::vector<MonoidElem> pool;
    for (const auto& [key, v] : c.entries()) {
      pool.push_back(key.first);
      pool.push_back(key.second);
    }
    for (const auto& s : pool)
      if (c(s, one) != unit || c(one, s) != unit) return false;
    if (pool.empty()) return true;
    const auto& t = c.entries();
    auto listed = [&](const MonoidElem& x, const MonoidElem& y) { return t.count({x, y}) > 0; };
    std::uniform_int_distribution<std::size_t> idx(0, pool.size() - 1);
    for (std::size_t i = 0; i < sample_count; ++i) {
      const auto &r = pool[idx(rng)], &s = pool[idx(rng)], &u = pool[idx(rng)];
      if (!listed(r, s * u) || !listed(s, u) || !listed(r * s, u) || !listed(r, s)) continue;
      if (c(r, s * u) * c(s, u) != c(r * s, u) * c(r, s)) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < sample_count; ++i) {
    auto r = random_element(m, rng, 3), s = random_element(m, rng, 3), t = random_element(m, rng, 3);
    if (c(s, one) != unit || c(one, s) != unit) return false;
    if (c(r, s * t) * c(s, t) != c(r * s, t) * c(r, s)) return false;
  }
  return true;
}

}  // namespace dagger
