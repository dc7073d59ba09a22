#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dagger/matrix.hpp"
#include "dagger/snf.hpp"

namespace dagger {

/// A finitely generated V-submodule of K^r at finite precision.
///
/// Stored as pi^scale * span_V(basis) where the basis vectors lie in V^r,
/// at least one entry is a unit, and the basis is in column Howell form
/// over V / pi^prec.  The lattice is known modulo pi^floor * V^r with
/// floor = scale + prec; everything below the floor is invisible.  The zero
/// lattice has no scale; it is exact when its floor is kInfinity.
///
/// The Howell form is canonical, so equality is a comparison of reduced
/// forms at the common floor.
template <class B>
class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(RingPtr<B> ring, std::size_t rank,
                      std::int64_t floor = kInfinity) {
    Lattice l;
    l.ring_ = std::move(ring);
    l.rank_ = rank;
    l.floor_ = floor;
    return l;
  }

  /// V^r.
  static Lattice standard(RingPtr<B> ring, std::size_t rank) {
    std::vector<Vector<B>> gens;
    for (std::size_t i = 0; i < rank; ++i) {
      Vector<B> e(rank, Scalar<B>::zero(ring));
      e[i] = Scalar<B>::one(ring);
      gens.push_back(std::move(e));
    }
    return span(ring, rank, gens);
  }

  /// The V-span of vectors in K^r whose entries are known to the ring's
  /// absolute precision (less any recorded loss).
  static Lattice span(RingPtr<B> ring, std::size_t rank, const std::vector<Vector<B>>& gens) {
    const std::int64_t N = ring->precision();
    std::int64_t e = kInfinity, floor = N;
    for (const auto& g : gens) {
      if (g.size() != rank) throw DescriptorMismatch("generator length differs from ambient rank");
      for (const auto& x : g) {
        e = std::min(e, x.val());
        floor = std::min<std::int64_t>(floor, N - x.loss());
      }
    }
    if (e == kInfinity) return zero(std::move(ring), rank);
    floor = std::min(floor, e + N);
    std::vector<Vector<B>> rel;
    rel.reserve(gens.size());
    for (const auto& g : gens) {
      Vector<B> r;
      r.reserve(rank);
      for (const auto& x : g) r.push_back(x.shift(-e));
      rel.push_back(std::move(r));
    }
    return from_relative(std::move(ring), rank, e, floor, std::move(rel));
  }

  static Lattice span(const Matrix<B>& generators_as_columns) {
    return span(generators_as_columns.ring(), generators_as_columns.rows(),
                generators_as_columns.columns());
  }

  /// pi^scale * span(gens) for gens in V^r, known modulo pi^floor absolutely.
  static Lattice from_relative(RingPtr<B> ring, std::size_t rank, std::int64_t scale,
                               std::int64_t floor, std::vector<Vector<B>> gens) {
    const std::int64_t N = ring->precision();
    std::int64_t prec = std::min<std::int64_t>(floor - scale, N);
    if (prec <= 0) return zero(std::move(ring), rank, floor);
    std::int64_t w = kInfinity;
    for (auto& g : gens) {
      if (g.size() != rank) throw DescriptorMismatch("generator length differs from ambient rank");
      for (auto& x : g) {
        if (x.val() < 0) throw InvalidInput("relative generators must lie in V");
        x = x.truncate(prec);
        w = std::min(w, x.val());
      }
    }
    if (w == kInfinity) return zero(std::move(ring), rank, scale + prec);
    Lattice l;
    l.ring_ = ring;
    l.rank_ = rank;
    l.scale_ = scale + w;
    l.prec_ = prec - w;
    l.floor_ = l.scale_ + l.prec_;
    for (auto& g : gens)
      for (auto& x : g) x = clean(x.shift(-w).truncate(l.prec_));
    l.howell(std::move(gens));
    return l;
  }

  const RingPtr<B>& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_exact_zero() const { return is_zero() && floor_ == kInfinity; }

  /// Gauge exponent: the largest e with L inside pi^e V^r (kInfinity for 0).
  std::int64_t scale() const { return is_zero() ? kInfinity : scale_; }
  /// Number of significant pi-adic digits relative to the scale.
  std::int64_t precision() const { return is_zero() ? 0 : prec_; }
  std::int64_t floor() const { return floor_; }

  /// Reduced basis relative to the scale (entries in V).
  const std::vector<Vector<B>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

  /// Basis vectors multiplied out by pi^scale.
  std::vector<Vector<B>> generators() const {
    std::vector<Vector<B>> out;
    for (const auto& b : basis_) {
      Vector<B> g;
      for (const auto& x : b) g.push_back(x.shift(scale_));
      out.push_back(std::move(g));
    }
    return out;
  }

  /// Is pi^shift * y in L (modulo the floor)?
  bool contains_shifted(std::int64_t shift, const Vector<B>& y) const {
    if (y.size() != rank_) throw DescriptorMismatch("vector length differs from ambient rank");
    if (is_zero()) {
      for (const auto& x : y)
        if (!x.is_zero() && (floor_ == kInfinity || x.val() + shift < floor_)) return false;
      return true;
    }
    Vector<B> r;
    r.reserve(rank_);
    for (const auto& x : y) {
      if (x.is_zero()) {
        r.push_back(x);
        continue;
      }
      std::int64_t v = x.val() + shift - scale_;
      if (v >= prec_) {
        r.push_back(Scalar<B>::zero(ring_));
        continue;
      }
      if (v < 0) return false;
      r.push_back(clean(x.shift(shift - scale_).truncate(prec_)));
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (r[i].is_zero()) {
        if (next < pivot_rows_.size() && pivot_rows_[next] == i) ++next;
        continue;
      }
      if (next >= pivot_rows_.size() || pivot_rows_[next] != i) return false;
      const auto& col = basis_[next];
      std::int64_t alpha = col[i].val();
      if (r[i].val() < alpha) return false;
      Scalar<B> q = r[i].shift(-alpha);
      for (std::size_t k = i; k < rank_; ++k)
        if (!col[k].is_zero()) r[k] = (r[k] - q * col[k]).truncate(prec_);
      ++next;
    }
    return true;
  }

  bool contains(const Vector<B>& x) const { return contains_shifted(0, x); }

  bool subset_of(const Lattice& other) const {
    check_compatible(other);
    if (is_zero()) return true;
    for (const auto& b : basis_)
      if (!other.contains_shifted(scale_, b)) return false;
    return true;
  }

  Lattice operator+(const Lattice& other) const {
    check_compatible(other);
    std::int64_t floor = std::min(floor_, other.floor_);
    if (is_zero() && other.is_zero()) return zero(ring_, rank_, floor);
    std::int64_t s = std::min(scale(), other.scale());
    std::vector<Vector<B>> gens;
    for (const Lattice* l : {this, &other}) {
      if (l->is_zero()) continue;
      for (const auto& b : l->basis_) {
        Vector<B> g;
        for (const auto& x : b) g.push_back(x.shift(l->scale_ - s));
        gens.push_back(std::move(g));
      }
    }
    return from_relative(ring_, rank_, s, floor, std::move(gens));
  }

  /// pi^e * L.
  Lattice scaled(std::int64_t e) const {
    Lattice out = *this;
    if (!is_zero()) out.scale_ += e;
    if (floor_ != kInfinity) out.floor_ += e;
    return out;
  }

  /// L intersected with the standard lattice V^r.
  Lattice intersect_standard() const {
    if (is_zero()) return zero(ring_, rank_, floor_);
    if (scale_ >= 0) return *this;
    if (floor_ < 0) throw PrecisionExhausted("lattice floor lies below the standard lattice");
    const std::int64_t k = -scale_;
    Matrix<B> b = Matrix<B>::from_columns(ring_, rank_, basis_);
    auto smith = smith_normal_form(b);
    std::vector<Vector<B>> gens;
    for (std::size_t i = 0; i < smith.rank; ++i) {
      std::int64_t shift = std::max(smith.D(i, i).val(), k);
      if (shift >= prec_) continue;
      Vector<B> g = smith.U_inv.column(i);
      for (auto& x : g) x = x.shift(shift);
      gens.push_back(std::move(g));
    }
    return from_relative(ring_, rank_, scale_, floor_, std::move(gens));
  }

  /// Equality of the lattices modulo the coarser of the two floors.
  bool operator==(const Lattice& other) const {
    check_compatible(other);
    const std::int64_t floor = std::min(floor_, other.floor_);
    if (is_zero() || other.is_zero()) {
      if (is_zero() && other.is_zero()) return true;
      const Lattice& nz = is_zero() ? other : *this;
      return nz.scale_ >= floor;
    }
    if (scale_ != other.scale_) return std::min(scale_, other.scale_) >= floor;
    if (floor_ == other.floor_) return same_basis(basis_, other.basis_);
    Lattice a = truncated_to(floor), b = other.truncated_to(floor);
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return a.scale_ == b.scale_ && same_basis(a.basis_, b.basis_);
  }

  bool operator!=(const Lattice& other) const { return !(*this == other); }

  /// The same lattice seen modulo pi^floor (floor no finer than the current).
  Lattice truncated_to(std::int64_t floor) const {
    if (floor >= floor_) return *this;
    if (is_zero()) return zero(ring_, rank_, floor);
    return from_relative(ring_, rank_, scale_, floor, basis_);
  }

 private:
  static Scalar<B> clean(const Scalar<B>& x) {
    if (x.loss() == 0 || x.is_zero()) return x;
    return Scalar<B>::from_shifted(x.ring(), x.val(), x.unit(), 0);
  }

  static bool same_basis(const std::vector<Vector<B>>& a, const std::vector<Vector<B>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (a[i][j].val() != b[i][j].val() || a[i][j].unit() != b[i][j].unit()) return false;
    return true;
  }

  void check_compatible(const Lattice& other) const {
    if (rank_ != other.rank_) throw DescriptorMismatch("lattices of different ambient rank");
    if (ring_ != other.ring_ && ring_->descriptor() != other.ring_->descriptor())
      throw DescriptorMismatch("lattices over different rings");
  }

  static bool is_zero_vector(const Vector<B>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar<B>& x) { return x.is_zero(); });
  }

  // col <- col - q * pivot, truncated at the working precision.
  void axpy(Vector<B>& col, const Scalar<B>& q, const Vector<B>& pivot, std::size_t from) const {
    if (q.is_zero()) return;
    for (std::size_t k = from; k < rank_; ++k)
      if (!pivot[k].is_zero()) col[k] = clean((col[k] - q * pivot[k]).truncate(prec_));
  }

  // Column Howell form over V / pi^prec.
  void howell(std::vector<Vector<B>> work) {
    basis_.clear();
    pivot_rows_.clear();
    auto prune = [&] {
      work.erase(std::remove_if(work.begin(), work.end(), is_zero_vector), work.end());
    };
    prune();
    for (std::size_t i = 0; i < rank_ && !work.empty(); ++i) {
      std::size_t best = work.size();
      std::int64_t best_val = kInfinity;
      for (std::size_t idx = 0; idx < work.size(); ++idx)
        if (work[idx][i].val() < best_val) {
          best_val = work[idx][i].val();
          best = idx;
        }
      if (best == work.size()) continue;
      Vector<B> col = std::move(work[best]);
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

      const Scalar<B> unit_inv =
          Scalar<B>::from_shifted(ring_, 0, col[i].unit(), 0).inverse();
      for (std::size_t k = i; k < rank_; ++k) col[k] = clean((unit_inv * col[k]).truncate(prec_));
      const std::int64_t alpha = col[i].val();

      for (auto& w : work)
        if (!w[i].is_zero()) axpy(w, w[i].shift(-alpha), col, i);
      if (alpha > 0) {
        Vector<B> aug(rank_, Scalar<B>::zero(ring_));
        for (std::size_t k = i + 1; k < rank_; ++k) aug[k] = clean(col[k].shift(prec_ - alpha).truncate(prec_));
        if (!is_zero_vector(aug)) work.push_back(std::move(aug));
      }
      for (auto& b : basis_) {
        if (b[i].is_zero()) continue;
        Scalar<B> rem = b[i].truncate(alpha);
        axpy(b, (b[i] - rem).shift(-alpha), col, i);
      }
      basis_.push_back(std::move(col));
      pivot_rows_.push_back(i);
      prune();
    }
  }

  RingPtr<B> ring_;
  std::size_t rank_ = 0;
  std::int64_t scale_ = kInfinity;
  std::int64_t prec_ = 0;
  std::int64_t floor_ = kInfinity;
  std::vector<Vector<B>> basis_;
  std::vector<std::size_t> pivot_rows_;
};

/// {x in ambient : pi^j x in L}.  With the standard ambient V^r this is
/// pi^-j L intersected with V^r; with the full ambient K^r it is pi^-j L.
enum class Ambient { standard, full };

template <class B>
Lattice<B> preimage_pi(const Lattice<B>& l, std::int64_t j, Ambient ambient = Ambient::standard) {
  if (j < 1) throw InvalidInput("preimage exponent must be positive");
  Lattice<B> scaled = l.scaled(-j);
  return ambient == Ambient::full ? scaled : scaled.intersect_standard();
}

}  // namespace dagger
