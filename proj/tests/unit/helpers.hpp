#pragma once

#include <random>
#include <vector>

#include "dagger/matrix.hpp"

namespace testing_helpers {

using namespace dagger;

template <class B>
Scalar<B> S(const RingPtr<B>& r, long long n) {
  return Scalar<B>::from_int(r, n);
}

template <class B>
Scalar<B> pi(const RingPtr<B>& r, long long e = 1) {
  return Scalar<B>::pi_power(r, e);
}

template <class B>
Matrix<B> mat(const RingPtr<B>& r, const std::vector<std::vector<Scalar<B>>>& rows) {
  return Matrix<B>::from_rows(r, rows);
}

template <class B, class Rng>
Matrix<B> random_matrix(const RingPtr<B>& r, Rng& rng, std::size_t m, std::size_t n,
                        std::int64_t max_val = 3, double zero_prob = 0.3) {
  Matrix<B> a(r, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Scalar<B>::random(r, rng, 0, max_val, zero_prob);
  return a;
}

/// Product of random elementary matrices; unimodular by construction.
template <class B, class Rng>
Matrix<B> random_unimodular(const RingPtr<B>& r, Rng& rng, std::size_t n) {
  auto u = Matrix<B>::identity(r, n);
  if (n < 2) return u.scaled(Scalar<B>::random_unit(r, rng));
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int step = 0; step < 4 * static_cast<int>(n); ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      u.scale_row(i, Scalar<B>::random_unit(r, rng));
    } else {
      u.add_row_multiple(i, j, Scalar<B>::random(r, rng, 0, 2, 0.2));
    }
  }
  return u;
}

}  // namespace testing_helpers
