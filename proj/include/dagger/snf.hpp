#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dagger/matrix.hpp"

namespace dagger {

template <class B>
struct SmithForm {
  Matrix<B> U;      // rows x rows, unimodular
  Matrix<B> U_inv;  // inverse of U
  Matrix<B> D;      // rows x cols, diagonal pi^a_1 | pi^a_2 | ... then zeros
  Matrix<B> W;      // cols x cols, unimodular
  std::size_t rank = 0;

  /// Exponents a_i of the nonzero diagonal entries (weakly increasing).
  std::vector<std::int64_t> exponents() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i).val());
    return out;
  }
};

/// Smith normal form U * A * W = D over V at precision N.
///
/// Pivot: the entry of least valuation in the remaining block, ties broken by
/// the lowest (row, col).  Every elimination step is exact in V / pi^N V, so
/// the identity holds exactly; zero entries in the trailing block are zero
/// at precision N.  Throws PrecisionExhausted when a pivot candidate carries
/// no significant digits.
template <class B>
SmithForm<B> smith_normal_form(const Matrix<B>& a) {
  if (!a.is_integral()) throw InvalidInput("Smith form needs entries in V");
  const auto& ring = a.ring();
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm<B> out{Matrix<B>::identity(ring, m), Matrix<B>::identity(ring, m), a,
                   Matrix<B>::identity(ring, n), 0};
  auto& D = out.D;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    std::size_t pr = k, pc = k;
    std::int64_t best = kInfinity;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (D(i, j).val() < best) {
          best = D(i, j).val();
          pr = i;
          pc = j;
        }
    if (best == kInfinity) break;
    if (D(pr, pc).is_negligible())
      throw PrecisionExhausted("Smith pivot has no significant digits");

    D.swap_rows(k, pr);
    out.U.swap_rows(k, pr);
    out.U_inv.swap_cols(k, pr);
    D.swap_cols(k, pc);
    out.W.swap_cols(k, pc);

    // Normalise the pivot to exactly pi^alpha.
    const Scalar<B> pivot = D(k, k);
    const Scalar<B> unit = Scalar<B>::from_shifted(ring, 0, pivot.unit(), 0);
    const Scalar<B> unit_inv = unit.inverse();
    D.scale_row(k, unit_inv);
    out.U.scale_row(k, unit_inv);
    out.U_inv.scale_col(k, unit);
    const std::int64_t alpha = pivot.val();

    for (std::size_t i = k + 1; i < m; ++i) {
      if (D(i, k).is_zero()) continue;
      Scalar<B> q = D(i, k).shift(-alpha);
      D.add_row_multiple(i, k, -q);
      out.U.add_row_multiple(i, k, -q);
      out.U_inv.add_col_multiple(k, i, q);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (D(k, j).is_zero()) continue;
      Scalar<B> q = D(k, j).shift(-alpha);
      D.add_col_multiple(j, k, -q);
      out.W.add_col_multiple(j, k, -q);
    }
    out.rank = k + 1;
  }
  return out;
}

}  // namespace dagger
