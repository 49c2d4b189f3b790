#pragma once

#include <random>
#include <vector>

#include "ncb/nc/ncgraph.hpp"
#include "test_util.hpp"

namespace ncb::testing {

/// Permutation matrix P with P e_i = e_perm[i].
inline ExactMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  ExactMatrix p = exact_zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]), i) = 1;
  return p;
}

/// Exact unitary from a random permutation, random phases in {1, i, -1, -i}
/// and, when n >= 2, a rational rotation by the (3,4,5) triangle.
inline ExactMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  ExactMatrix u = permutation_matrix(perm);
  const GaussianRational phases[4] = {1, GaussianRational::i(), -1, -GaussianRational::i()};
  std::uniform_int_distribution<int> ph(0, 3);
  ExactMatrix d = exact_zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) d(i, i) = phases[ph(rng)];
  u = matmul(u, d);
  if (n >= 2) {
    ExactMatrix r = exact_identity(static_cast<Eigen::Index>(n));
    r(0, 0) = Rational(3, 5);
    r(0, 1) = Rational(-4, 5);
    r(1, 0) = Rational(4, 5);
    r(1, 1) = Rational(3, 5);
    u = matmul(u, r);
  }
  return u;
}

/// Dimension of span by direct rank of the stacked generators.
inline std::size_t span_dimension(const std::vector<ExactMatrix>& gens) {
  if (gens.empty()) return 0;
  ExactMatrix stacked(static_cast<Eigen::Index>(gens.size()), gens[0].size());
  for (std::size_t k = 0; k < gens.size(); ++k) stacked.row(static_cast<Eigen::Index>(k)) = flatten(gens[k]).transpose();
  return rank(stacked);
}

}  // namespace ncb::testing
