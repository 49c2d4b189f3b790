#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "graph_oracles.hpp"
#include "ncb/haemers/classical.hpp"

using namespace ncb;

namespace {

ExactMatrix all_ones(Eigen::Index n) { return ExactMatrix::Constant(n, n, GaussianRational(1)); }

ExactVector vec(std::initializer_list<int> xs) {
  ExactVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v(i++) = x;
  return v;
}

// psi = e1, e2, e2+e3, e3, e1 is orthogonal on the non-edges of C5.
std::vector<ExactVector> c5_representation() {
  return {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 1, 1}), vec({0, 0, 1}), vec({1, 0, 0})};
}

// Numerical rank of the symmetric circulant with first row (1, x, 0, 0, x).
int c5_circulant_rank(double x) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(5, 5);
  for (int i = 0; i < 5; ++i) b(i, (i + 1) % 5) = b(i, (i + 4) % 5) = x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  int r = 0;
  for (int i = 0; i < 5; ++i) r += std::abs(es.eigenvalues()(i)) > 1e-9;
  return r;
}

}  // namespace

TEST_CASE("verify_fitting examples and violations") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto en = static_cast<Eigen::Index>(n);
    CHECK(verify_fitting({complete_graph(n), all_ones(en), FittingVariant::UnitDiagonal}) == 1);
    CHECK(verify_fitting({empty_graph(n), exact_identity(en), FittingVariant::UnitDiagonal}) == n);
  }
  const Graph c5 = cycle_graph(5);
  ExactMatrix b = exact_identity(5);
  b(0, 2) = 1;
  try {
    verify_fitting({c5, b, FittingVariant::UnitDiagonal});
    FAIL("expected a violation");
  } catch (const FittingViolation& e) {
    CHECK(e.row == 0);
    CHECK(e.col == 2);
  }
  ExactMatrix d = exact_identity(3);
  d(1, 1) = 2;
  CHECK_THROWS_AS(verify_fitting({empty_graph(3), d, FittingVariant::UnitDiagonal}), FittingViolation);
  CHECK(verify_fitting({empty_graph(3), d, FittingVariant::NonzeroDiagonal}) == 3);
  d(2, 2) = 0;
  CHECK_THROWS_AS(verify_fitting({empty_graph(3), d, FittingVariant::NonzeroDiagonal}), FittingViolation);
  CHECK_THROWS_AS(verify_fitting({empty_graph(3), exact_identity(2), FittingVariant::UnitDiagonal}),
                  FittingViolation);
  CHECK(parse_fitting_variant(to_string(FittingVariant::NonzeroDiagonal)) == FittingVariant::NonzeroDiagonal);
  CHECK_THROWS_AS(parse_fitting_variant("diagonal"), std::invalid_argument);
}

TEST_CASE("orthogonal representations") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(orthogonal_rank_verify(complete_graph(n), std::vector<ExactVector>(n, vec({1}))) == 1);
    std::vector<ExactVector> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(exact_identity(static_cast<Eigen::Index>(n)).col(static_cast<Eigen::Index>(i)));
    CHECK(orthogonal_rank_verify(empty_graph(n), basis) == n);
  }
  const Graph c5 = cycle_graph(5);
  CHECK(orthogonal_rank_verify(c5, c5_representation()) == 3);
  const FittingMatrix fm = fitting_from_representation(c5, c5_representation());
  CHECK(verify_fitting(fm) == 3);
  CHECK(is_psd(gram_matrix(c5_representation())));

  auto bad = c5_representation();
  bad[2] = vec({1, 1, 1});
  try {
    orthogonal_rank_verify(c5, bad);
    FAIL("expected a violation");
  } catch (const OrthogonalityViolation& e) {
    CHECK(e.i == 0);
    CHECK(e.j == 2);
  }
  bad = c5_representation();
  bad[1] = vec({0, 0, 0});
  CHECK_THROWS_AS(orthogonal_rank_verify(c5, bad), OrthogonalityViolation);
  bad = c5_representation();
  bad[1] = vec({0, 1});
  CHECK_THROWS_AS(orthogonal_rank_verify(c5, bad), OrthogonalityViolation);

  const auto found = find_orthogonal_representation(c5, 3);
  REQUIRE(found.has_value());
  CHECK(orthogonal_rank_verify(c5, *found) == 3);
  // None exists in C^2 since xi >= H >= 3.
  CHECK_FALSE(find_orthogonal_representation(c5, 2).has_value());
}

TEST_CASE("C5 circulant sweep") {
  const Graph c5 = cycle_graph(5);
  CHECK(is_circulant(c5));
  CHECK_FALSE(is_circulant(path_graph(4)));
  const CirculantSweepResult sweep = circulant_sweep(c5);
  REQUIRE(sweep.best.has_value());
  CHECK(sweep.best_rank == 4);
  CHECK(sweep.best->b(0, 1) == GaussianRational(Rational(-1, 2)));
  const CirculantSweepResult gaussian = circulant_sweep(c5, 4, true);
  CHECK(gaussian.best_rank == 4);
  CHECK(gaussian.candidates > sweep.candidates / 2);

  // Floating oracle: rank 3 occurs only at the irrational roots of x^2 + x - 1.
  const double phi = (std::sqrt(5.0) - 1) / 2;
  CHECK(c5_circulant_rank(phi) == 3);
  CHECK(c5_circulant_rank(-1 - phi) == 3);
  for (int q = 1; q <= 40; ++q)
    for (int p = -2 * q; p <= 2 * q; ++p) CHECK(c5_circulant_rank(static_cast<double>(p) / q) >= 4);
}

TEST_CASE("haemers_exact_tiny") {
  auto exact = [](const Graph& g, FittingVariant v) {
    const TinyHaemersResult r = haemers_exact_tiny(g, g.order(), v);
    REQUIRE(r.status == "exact");
    return *r.value;
  };
  CHECK(exact(complete_graph(3), FittingVariant::NonzeroDiagonal) == 1);
  CHECK(exact(empty_graph(3), FittingVariant::NonzeroDiagonal) == 3);
  CHECK(exact(path_graph(3), FittingVariant::NonzeroDiagonal) == 2);
  CHECK_THROWS_AS(haemers_exact_tiny(cycle_graph(7), 3), std::invalid_argument);

  const TinyHaemersResult capped = haemers_exact_tiny(empty_graph(3), 2);
  CHECK(capped.status == "above-cap");
  CHECK_FALSE(capped.value.has_value());

  // Both diagonal conventions agree; the value is sandwiched by alpha and the
  // best explicit construction.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 2);
    const Graph g = testing::random_graph(rng, n, 0.5);
    const std::size_t unit = exact(g, FittingVariant::UnitDiagonal);
    const std::size_t nonzero = exact(g, FittingVariant::NonzeroDiagonal);
    CHECK(unit == nonzero);
    CHECK(unit >= independence_number(g));
    CHECK(unit <= verify_fitting(clique_cover_fitting(g)));
  }
}

TEST_CASE("sandwich on random graphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + static_cast<std::size_t>(t % 4);
    const Graph g = testing::random_graph(rng, n, 0.5);
    const std::size_t alpha = independence_number(g);
    const FittingMatrix cover = clique_cover_fitting(g);
    CHECK(verify_fitting(cover) >= alpha);
    if (auto rep = find_orthogonal_representation(g, n, 2000)) {
      const std::size_t xi = orthogonal_rank_verify(g, *rep);
      CHECK(verify_fitting(fitting_from_representation(g, *rep)) <= xi);
      CHECK(verify_fitting(fitting_from_representation(g, *rep)) >= alpha);
    }
    const GraphBounds report = bounds_report(g);
    CHECK(report.consistent);
    CHECK(report.haemers_upper >= alpha);
    CHECK(report.xi_upper >= report.haemers_upper);
  }
}

TEST_CASE("bounds_report examples") {
  const GraphBounds c5 = bounds_report(cycle_graph(5));
  CHECK(c5.alpha == 2);
  CHECK(c5.theta.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  CHECK(c5.haemers_lower == 3);
  CHECK(c5.haemers_upper == 3);
  CHECK(c5.xi_upper <= 3);
  CHECK(verify_fitting(c5.upper_witness) == 3);
  CHECK(c5.consistent);

  for (std::size_t n = 1; n <= 5; ++n) {
    const GraphBounds k = bounds_report(complete_graph(n));
    CHECK(k.alpha == 1);
    CHECK(k.theta.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(k.haemers_lower == 1);
    CHECK(k.haemers_upper == 1);
    CHECK(k.xi_upper == 1);
    const GraphBounds e = bounds_report(empty_graph(n));
    CHECK(e.alpha == n);
    CHECK(e.theta.value == doctest::Approx(static_cast<double>(n)).epsilon(1e-5));
    CHECK(e.haemers_lower == n);
    CHECK(e.haemers_upper == n);
    CHECK(e.xi_upper == n);
  }

  GraphBoundsOptions opts;
  opts.use_exact_engine = true;
  const GraphBounds p4 = bounds_report(path_graph(4), opts);
  CHECK(p4.haemers_lower == p4.haemers_upper);
  CHECK(p4.haemers_upper == 2);
  CHECK(ceil_sqrt(0) == 0);
  CHECK(ceil_sqrt(5) == 3);
  CHECK(ceil_sqrt(9) == 3);
}
