#include <random>

#include "doctest.h"
#include "graph_oracles.hpp"
#include "nc_oracles.hpp"
#include "ncb/nc/independence.hpp"

using namespace ncb;

namespace {

ExactVector basis_vector(std::size_t n, std::size_t i) {
  ExactVector v = ExactVector::Constant(static_cast<Eigen::Index>(n), GaussianRational(0));
  v(static_cast<Eigen::Index>(i)) = 1;
  return v;
}

IndependentSystem standard_system(std::size_t n, const std::vector<std::size_t>& idx) {
  IndependentSystem sys{n, {}};
  for (std::size_t i : idx) sys.vectors.push_back(basis_vector(n, i));
  return sys;
}

}  // namespace

TEST_CASE("verify_independent examples") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    CHECK(verify_independent(diagonal_system(n), standard_system(n, all)));
  }
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    IndependentSystem sys{3, {testing::random_matrix(rng, 3, 1), testing::random_matrix(rng, 3, 1)}};
    bool zero = false;
    for (const auto& v : sys.vectors) zero |= is_zero(v);
    if (zero) continue;
    CHECK_FALSE(verify_independent(full_system(3), sys));
  }
  const NcGraph c5 = from_graph(cycle_graph(5));
  CHECK(verify_independent(c5, standard_system(5, {0, 2})));
  const auto bad = find_independence_violation(c5, standard_system(5, {0, 1}));
  REQUIRE(bad.has_value());
  CHECK(bad->i == 0);
  CHECK(bad->j == 1);

  IndependentSystem zero{3, {basis_vector(3, 0), ExactVector::Constant(3, GaussianRational(0))}};
  CHECK_THROWS_AS(verify_independent(diagonal_system(3), zero), std::invalid_argument);
  CHECK_THROWS_AS(verify_independent(diagonal_system(2), standard_system(3, {0})), std::invalid_argument);
  // Scaling is immaterial.
  IndependentSystem scaled = standard_system(5, {0, 2});
  scaled.vectors[1] *= GaussianRational(Rational(3), Rational(-7, 2));
  CHECK(verify_independent(c5, scaled));
}

TEST_CASE("alpha of graph systems") {
  CHECK(alpha_of_graph_system(from_graph(cycle_graph(5))) == 2);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(alpha_of_graph_system(diagonal_system(n)) == n);
    CHECK(alpha_of_graph_system(full_system(n)) == 1);
  }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const Graph g = testing::random_graph(rng, 1 + static_cast<std::size_t>(t % 10), 0.4);
    CHECK(alpha_of_graph_system(from_graph(g)) == testing::alpha_bruteforce(g));
    CHECK(alpha_of_graph_system(g) == independence_number(g));
  }
  CHECK_THROWS_AS(alpha_of_graph_system(s_gamma_system(Rational(1, 2))), NotGraphSystem);
  CHECK_THROWS_AS(alpha_of_graph_system(scalar_system(2)), NotGraphSystem);
}

TEST_CASE("alpha lower search on graph systems") {
  const auto d3 = alpha_lower_search(diagonal_system(3), 3);
  REQUIRE(d3.has_value());
  CHECK(d3->size() == 3);
  CHECK(verify_independent(diagonal_system(3), *d3));

  const NcGraph c5 = from_graph(cycle_graph(5));
  const NcGraph c5c5 = tensor(c5, c5);
  const auto pent = alpha_lower_search(c5c5, 5);
  REQUIRE(pent.has_value());
  CHECK(pent->size() == 5);
  CHECK(verify_independent(c5c5, *pent));
  CHECK_FALSE(alpha_lower_search(c5c5, 6).has_value());

  for (std::size_t n = 2; n <= 4; ++n) CHECK_FALSE(alpha_lower_search(full_system(n), 2).has_value());
  CHECK_THROWS_AS(alpha_lower_search(c5, 0), std::invalid_argument);
}

TEST_CASE("alpha lower search beyond matrix units") {
  // S_gamma: |1>, |2> are independent; a third vector would have to be
  // orthogonal to both (I is in S) and so proportional to |3>, which meets |1><3|.
  for (const Rational& c : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    const NcGraph sg = s_gamma_system(c);
    CHECK(verify_independent(sg, standard_system(3, {0, 1})));
    const auto two = alpha_lower_search(sg, 2);
    REQUIRE(two.has_value());
    CHECK(verify_independent(sg, *two));
    CHECK_FALSE(alpha_lower_search(sg, 3).has_value());
  }

  // S_2: e1 forces psi_2 = 0, so no pair exists.
  CHECK_FALSE(alpha_lower_search(s_n_system(2), 2).has_value());

  // Conjugated graph systems hide the matrix-unit structure but keep alpha.
  std::mt19937_64 rng(8);
  int found = 0, trials = 0;
  for (int t = 0; t < 8; ++t) {
    const Graph g = testing::random_graph(rng, 3 + static_cast<std::size_t>(t % 2), 0.4);
    const ExactMatrix u = testing::random_unitary(rng, g.order());
    const NcGraph s = conjugate_by_unitary(from_graph(g), u);
    REQUIRE_FALSE(graph_of_system(s).has_value());
    const std::size_t alpha = independence_number(g);
    const auto sys = alpha_lower_search(s, alpha);
    ++trials;
    if (sys) {
      ++found;
      CHECK(verify_independent(s, *sys));
    }
    CHECK_FALSE(alpha_lower_search(s, alpha + 1).has_value());
  }
  MESSAGE("conjugated systems solved: " << found << "/" << trials);
  CHECK(found == trials);
}

TEST_CASE("alpha estimate tags") {
  const AlphaValue c5 = alpha_estimate(from_graph(cycle_graph(5)));
  CHECK(c5.value == 2);
  CHECK(c5.tag == "exact");
  const AlphaValue sg = alpha_estimate(s_gamma_system(Rational(1, 2)));
  CHECK(sg.value == 2);
  CHECK(sg.tag == "lower-bound");
  REQUIRE(sg.witness.has_value());
  CHECK(verify_independent(s_gamma_system(Rational(1, 2)), *sg.witness));
}
