#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dagger/monoid.hpp"
#include "dagger/rational.hpp"

namespace dagger {

/// Asserts nu(x_s) + 1 + k >= c * l(s) for every stored term.
struct GrowthCertificate {
  Rational c{1};
  std::int64_t k = 0;
  bool operator==(const GrowthCertificate&) const = default;
};

/// Combination rule for products: (min c, k1 + k2 + 1).
inline GrowthCertificate combine_product(const GrowthCertificate& a, const GrowthCertificate& b) {
  return {std::min(a.c, b.c), a.k + b.k + 1};
}

/// Smallest k >= 0 with nu + 1 + k >= c * len, i.e. ceil(c*len - 1 - nu).
inline std::int64_t required_offset(const Rational& c, std::int64_t len, std::int64_t nu) {
  return std::max<std::int64_t>(0, ceil(c * len - 1 - nu));
}

/// A finitely supported sum of x_s delta_s with l(s) <= D.
template <class B>
class DaggerSeries {
 public:
  using Terms = std::map<MonoidElem, Scalar<B>>;

  DaggerSeries() = default;
  DaggerSeries(RingPtr<B> ring, MonoidDescriptor monoid, std::int64_t cap)
      : ring_(std::move(ring)), monoid_(monoid), cap_(cap) {
    if (cap < 0) throw InvalidInput("degree cap must be non-negative");
  }

  static DaggerSeries monomial(RingPtr<B> ring, MonoidDescriptor monoid, std::int64_t cap,
                               const MonoidElem& s, std::optional<Scalar<B>> x = std::nullopt) {
    DaggerSeries out(ring, monoid, cap);
    out.add_term(s, x ? *x : Scalar<B>::one(ring));
    return out;
  }

  const RingPtr<B>& ring() const { return ring_; }
  const MonoidDescriptor& monoid() const { return monoid_; }
  std::int64_t cap() const { return cap_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  void mark_truncated(bool flag = true) { truncated_ = truncated_ || flag; }
  const std::optional<GrowthCertificate>& certificate() const { return cert_; }

  Scalar<B> coefficient(const MonoidElem& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Scalar<B>::zero(ring_) : it->second;
  }

  /// Adds x delta_s; terms beyond the cap are dropped and flagged.
  void add_term(const MonoidElem& s, const Scalar<B>& x) {
    if (!(s.descriptor() == monoid_)) throw DescriptorMismatch("term from another monoid");
    if (x.is_zero()) return;
    if (s.length() > cap_) {
      truncated_ = true;
      return;
    }
    auto [it, inserted] = terms_.try_emplace(s, x);
    if (!inserted) {
      it->second += x;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Attaches a certificate after checking it against every stored term.
  void set_certificate(std::optional<GrowthCertificate> cert) {
    if (cert && !holds(*cert)) throw InvalidInput("certificate does not hold for the stored terms");
    cert_ = cert;
  }

  /// Attaches a certificate derived by a combination rule, without checking.
  void attach_certificate(std::optional<GrowthCertificate> cert) { cert_ = cert; }

  bool holds(const GrowthCertificate& cert) const {
    if (cert.c <= 0 || cert.k < 0) return false;
    for (const auto& [s, x] : terms_)
      if (Rational(x.val() + 1 + cert.k) < cert.c * s.length()) return false;
    return true;
  }

  std::int64_t max_length() const {
    std::int64_t d = 0;
    for (const auto& [s, x] : terms_) d = std::max(d, s.length());
    return d;
  }

  /// Coefficientwise equality; certificates and flags are ignored.
  bool operator==(const DaggerSeries& o) const {
    if (!(monoid_ == o.monoid_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
      if (!(a->first == b->first) || a->second != b->second) return false;
    return true;
  }

  void check_compatible(const DaggerSeries& o) const {
    if (!(monoid_ == o.monoid_)) throw DescriptorMismatch("series over different monoids");
    if (ring_ != o.ring_ && ring_->descriptor() != o.ring_->descriptor())
      throw DescriptorMismatch("series over different rings");
    if (cap_ != o.cap_) throw DescriptorMismatch("series with different degree caps");
  }

 private:
  RingPtr<B> ring_;
  MonoidDescriptor monoid_;
  std::int64_t cap_ = 0;
  Terms terms_;
  std::optional<GrowthCertificate> cert_;
  bool truncated_ = false;
};

/// Twisted convolution sum x_s y_t c(s,t) delta_st, dropping terms past the cap.
template <class B>
DaggerSeries<B> mul(const DaggerSeries<B>& a, const DaggerSeries<B>& b, const Cocycle<B>& c) {
  a.check_compatible(b);
  if (!(c.monoid() == a.monoid())) throw DescriptorMismatch("cocycle over another monoid");
  DaggerSeries<B> out(a.ring(), a.monoid(), a.cap());
  out.mark_truncated(a.truncated() || b.truncated());
  const bool trivial = c.kind() == CocycleKind::trivial;
  for (const auto& [s, x] : a.terms())
    for (const auto& [t, y] : b.terms()) {
      auto st = s * t;
      if (st.length() > a.cap()) {
        out.mark_truncated();
        continue;
      }
      out.add_term(st, trivial ? x * y : x * y * c(s, t));
    }
  if (a.certificate() && b.certificate())
    out.attach_certificate(combine_product(*a.certificate(), *b.certificate()));
  return out;
}

template <class B>
DaggerSeries<B> mul(const DaggerSeries<B>& a, const DaggerSeries<B>& b) {
  return mul(a, b, Cocycle<B>::trivial(a.ring(), a.monoid()));
}

struct CertifyResult {
  bool ok = true;
  std::int64_t k = 0;
};

/// Minimal offset k with nu(x_s) + 1 + k >= c l(s), valid at the stored
/// truncation only.
template <class B>
CertifyResult certify(const DaggerSeries<B>& a, const Rational& c) {
  if (c <= 0) throw InvalidInput("growth rate must be positive");
  std::int64_t k = 0;
  for (const auto& [s, x] : a.terms()) k = std::max(k, required_offset(c, s.length(), x.val()));
  return {k == 0, k};
}

/// Lower convex envelope of the points (l(s), nu(x_s) + 1).
///
/// For a slope c the binding constraint sits at a hull vertex, so the
/// minimal offset is max(0, ceil(max_vertex(c*l - y))).
class GrowthEnvelope {
 public:
  using Point = std::pair<std::int64_t, std::int64_t>;

  explicit GrowthEnvelope(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    // Keep the lowest y per x, then the lower hull (monotone chain).
    std::vector<Point> lowest;
    for (const auto& p : pts)
      if (lowest.empty() || lowest.back().first != p.first) lowest.push_back(p);
    for (const auto& p : lowest) {
      while (hull_.size() >= 2) {
        const auto& o = hull_[hull_.size() - 2];
        const auto& a = hull_.back();
        __int128 cross = static_cast<__int128>(a.first - o.first) * (p.second - o.second) -
                         static_cast<__int128>(a.second - o.second) * (p.first - o.first);
        if (cross <= 0)
          hull_.pop_back();
        else
          break;
      }
      hull_.push_back(p);
    }
  }

  const std::vector<Point>& vertices() const { return hull_; }

  std::int64_t min_offset(const Rational& c) const {
    std::int64_t k = 0;
    for (const auto& [l, y] : hull_) k = std::max(k, required_offset(c, l, y - 1));
    return k;
  }

  /// Slopes of the hull segments, left to right.
  std::vector<Rational> slopes() const {
    std::vector<Rational> out;
    for (std::size_t i = 1; i < hull_.size(); ++i)
      out.emplace_back(hull_[i].second - hull_[i - 1].second, hull_[i].first - hull_[i - 1].first);
    return out;
  }

 private:
  std::vector<Point> hull_;
};

template <class B>
GrowthEnvelope best_certificate(const DaggerSeries<B>& a) {
  if (a.is_zero()) throw InvalidInput("zero series has no growth envelope");
  std::vector<GrowthEnvelope::Point> pts;
  for (const auto& [s, x] : a.terms()) pts.emplace_back(s.length(), x.val() + 1);
  return GrowthEnvelope(std::move(pts));
}

/// nu(x_s) + 1 >= l(s) / n for all stored terms.
template <class B>
bool membership_Mn(const DaggerSeries<B>& a, std::int64_t n) {
  if (n < 1) throw InvalidInput("filtration index must be positive");
  for (const auto& [s, x] : a.terms())
    if (n * (x.val() + 1) < s.length()) return false;
  return true;
}

/// a + s b.  The certificate of s b is (c_b, max(0, k_b - nu(s))); the sum
/// keeps (min c, max k).
template <class B>
DaggerSeries<B> add_scale(const DaggerSeries<B>& a, const DaggerSeries<B>& b, const Scalar<B>& s) {
  a.check_compatible(b);
  DaggerSeries<B> out = a;
  out.attach_certificate(std::nullopt);
  out.mark_truncated(b.truncated());
  if (!s.is_zero())
    for (const auto& [t, y] : b.terms()) out.add_term(t, s * y);
  std::optional<GrowthCertificate> cb;
  if (s.is_zero() || b.is_zero()) {
    cb = GrowthCertificate{a.certificate() ? a.certificate()->c : Rational(1), 0};
  } else if (b.certificate()) {
    cb = GrowthCertificate{b.certificate()->c,
                           std::max<std::int64_t>(0, b.certificate()->k - s.val())};
  }
  if (a.certificate() && cb)
    out.attach_certificate(GrowthCertificate{std::min(a.certificate()->c, cb->c),
                                          std::max(a.certificate()->k, cb->k)});
  return out;
}

template <class B>
DaggerSeries<B> operator+(const DaggerSeries<B>& a, const DaggerSeries<B>& b) {
  return add_scale(a, b, Scalar<B>::one(a.ring()));
}

template <class B>
DaggerSeries<B> operator-(const DaggerSeries<B>& a, const DaggerSeries<B>& b) {
  return add_scale(a, b, -Scalar<B>::one(a.ring()));
}

}  // namespace dagger
