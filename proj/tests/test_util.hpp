#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "ncb/exact/linalg.hpp"

namespace ncb::testing {

inline GaussianRational random_scalar(std::mt19937_64& rng, int range = 3, bool complex = true) {
  std::uniform_int_distribution<int> d(-range, range);
  if (!complex) return d(rng);
  return {Rational(d(rng)), Rational(d(rng))};
}

inline ExactMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int range = 3) {
  ExactMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = random_scalar(rng, range);
  return m;
}

/// Random matrix of rank at most r as a sum of r outer products.
inline ExactMatrix random_rank(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
  return matmul(random_matrix(rng, rows, r), random_matrix(rng, r, cols));
}

/// Unit upper triangular times unit lower triangular: always invertible.
inline ExactMatrix random_invertible(std::mt19937_64& rng, Eigen::Index n) {
  ExactMatrix u = exact_identity(n), l = exact_identity(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      u(i, j) = random_scalar(rng);
      l(j, i) = random_scalar(rng);
    }
  return matmul(u, l);
}

/// Determinant by cofactor expansion; oracle for tiny matrices only.
inline GaussianRational det_cofactor(const ExactMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  GaussianRational out = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    ExactMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    GaussianRational term = a(0, j) * det_cofactor(minor);
    if (j % 2) out -= term;
    else out += term;
  }
  return out;
}

/// Rank as the largest size of a nonvanishing minor; brute force oracle.
inline std::size_t rank_by_minors(const ExactMatrix& a) {
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  for (int k = std::min(rows, cols); k > 0; --k) {
    std::vector<int> rsel(rows, 0), csel(cols, 0);
    std::fill(rsel.begin(), rsel.begin() + k, 1);
    do {
      std::fill(csel.begin(), csel.end(), 0);
      std::fill(csel.begin(), csel.begin() + k, 1);
      do {
        ExactMatrix sub(k, k);
        for (int i = 0, si = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          for (int j = 0, sj = 0; j < cols; ++j)
            if (csel[j]) sub(si, sj++) = a(i, j);
          ++si;
        }
        if (!det_cofactor(sub).is_zero()) return static_cast<std::size_t>(k);
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace ncb::testing
