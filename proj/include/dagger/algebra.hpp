#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dagger/lattice.hpp"
#include "dagger/series.hpp"

namespace dagger {

namespace detail {

inline std::int64_t add_sat(std::int64_t a, std::int64_t b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

}  // namespace detail

/// pi^e M' applied to a lattice, with M' = pi^-e M integral: the image is
/// computed on the relative basis so no digits are lost.
template <class B>
Lattice<B> apply(const Matrix<B>& m, const Lattice<B>& l) {
  if (m.cols() != l.rank()) throw DescriptorMismatch("operator and lattice ranks differ");
  const std::int64_t e = m.min_valuation();
  if (l.is_zero() || e == kInfinity)
    return Lattice<B>::zero(m.ring(), m.rows(), detail::add_sat(l.floor(), e == kInfinity ? 0 : e));
  Matrix<B> integral(m.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) integral(i, j) = m(i, j).shift(-e);
  std::vector<Vector<B>> gens;
  for (const auto& b : l.basis()) gens.push_back(integral * b);
  return Lattice<B>::from_relative(m.ring(), m.rows(), l.scale() + e,
                                   l.scale() + e + l.precision(), std::move(gens));
}

enum class AlgebraKind { matrix, series };

/// A finite-dimensional (truncated) algebra with coordinates in K^dim:
/// M_d(K) flattened row-major, or series of length <= D indexed by the
/// ball of radius D in the monoid.
template <class B>
class AlgebraContext {
 public:
  static AlgebraContext matrix(RingPtr<B> ring, std::size_t d) {
    AlgebraContext ctx;
    ctx.kind_ = AlgebraKind::matrix;
    ctx.ring_ = std::move(ring);
    ctx.d_ = d;
    return ctx;
  }

  static AlgebraContext series(RingPtr<B> ring, MonoidDescriptor monoid, std::int64_t cap,
                               std::optional<Cocycle<B>> cocycle = std::nullopt) {
    AlgebraContext ctx;
    ctx.kind_ = AlgebraKind::series;
    ctx.ring_ = ring;
    ctx.monoid_ = monoid;
    ctx.cap_ = cap;
    ctx.cocycle_ = cocycle ? *cocycle : Cocycle<B>::trivial(ring, monoid);
    ctx.basis_ = ball(monoid, cap);
    for (std::size_t i = 0; i < ctx.basis_.size(); ++i) ctx.index_[ctx.basis_[i]] = i;
    return ctx;
  }

  AlgebraKind kind() const { return kind_; }
  const RingPtr<B>& ring() const { return ring_; }
  std::size_t dimension() const { return kind_ == AlgebraKind::matrix ? d_ * d_ : basis_.size(); }
  std::size_t matrix_size() const { return d_; }
  std::int64_t cap() const { return cap_; }
  const MonoidDescriptor& monoid() const { return monoid_; }
  const std::vector<MonoidElem>& monomials() const { return basis_; }

  Vector<B> coordinates(const Matrix<B>& a) const {
    if (kind_ != AlgebraKind::matrix || a.rows() != d_ || a.cols() != d_)
      throw DescriptorMismatch("matrix outside the algebra");
    return a.entries();
  }

  Vector<B> coordinates(const DaggerSeries<B>& f) const {
    if (kind_ != AlgebraKind::series || !(f.monoid() == monoid_))
      throw DescriptorMismatch("series outside the algebra");
    Vector<B> v(basis_.size(), Scalar<B>::zero(ring_));
    for (const auto& [s, x] : f.terms()) {
      auto it = index_.find(s);
      if (it == index_.end()) throw DescriptorMismatch("series term beyond the algebra cap");
      v[it->second] = x;
    }
    return v;
  }

  Matrix<B> to_matrix(const Vector<B>& v) const { return Matrix<B>::from_entries(ring_, d_, d_, v); }

  DaggerSeries<B> to_series(const Vector<B>& v) const {
    DaggerSeries<B> f(ring_, monoid_, cap_);
    for (std::size_t i = 0; i < v.size(); ++i) f.add_term(basis_[i], v[i]);
    return f;
  }

  /// Product of two algebra elements (terms past the cap are dropped).
  Vector<B> multiply(const Vector<B>& x, const Vector<B>& y) const {
    if (kind_ == AlgebraKind::matrix) return (to_matrix(x) * to_matrix(y)).entries();
    return coordinates(mul(to_series(x), to_series(y), cocycle_));
  }

  Lattice<B> span(const std::vector<Vector<B>>& elements) const {
    return Lattice<B>::span(ring_, dimension(), elements);
  }

  Lattice<B> span_of(const std::vector<Matrix<B>>& elements) const {
    std::vector<Vector<B>> v;
    for (const auto& a : elements) v.push_back(coordinates(a));
    return span(v);
  }

  Lattice<B> span_of(const std::vector<DaggerSeries<B>>& elements) const {
    std::vector<Vector<B>> v;
    for (const auto& f : elements) v.push_back(coordinates(f));
    return span(v);
  }

  /// The unit ball: M_d(V), resp. V[S]_{<=D}.
  Lattice<B> standard() const { return Lattice<B>::standard(ring_, dimension()); }

  /// L1 L2: pairwise products of the reduced generators, then reduced.
  Lattice<B> product(const Lattice<B>& a, const Lattice<B>& b) const {
    if (a.is_zero() || b.is_zero()) {
      std::int64_t floor = std::min(detail::add_sat(a.floor(), b.is_zero() ? b.floor() : b.scale()),
                                    detail::add_sat(b.floor(), a.is_zero() ? a.floor() : a.scale()));
      return Lattice<B>::zero(ring_, dimension(), floor);
    }
    std::vector<Vector<B>> gens;
    for (const auto& x : a.basis())
      for (const auto& y : b.basis()) gens.push_back(multiply(x, y));
    const std::int64_t s = a.scale() + b.scale();
    return Lattice<B>::from_relative(ring_, dimension(), s,
                                     s + std::min(a.precision(), b.precision()), std::move(gens));
  }

  Lattice<B> power(const Lattice<B>& l, unsigned n) const {
    if (n == 0) throw InvalidInput("lattice power must be positive");
    Lattice<B> out = l;
    for (unsigned i = 1; i < n; ++i) out = product(out, l);
    return out;
  }

 private:
  AlgebraKind kind_ = AlgebraKind::matrix;
  RingPtr<B> ring_;
  std::size_t d_ = 0;
  MonoidDescriptor monoid_;
  std::int64_t cap_ = 0;
  Cocycle<B> cocycle_;
  std::vector<MonoidElem> basis_;
  std::map<MonoidElem, std::size_t> index_;
};

}  // namespace dagger
