#include <cmath>
#include <random>

#include "doctest.h"
#include "graph_oracles.hpp"
#include "ncb/theta/theta.hpp"

using namespace ncb;

namespace {

// Feasibility tolerance for the returned witness and the value it certifies.
constexpr double kWitnessTol = 1e-6;

void check_solution(const Graph& g, const SdpSolution& s) {
  CHECK(s.converged);
  CHECK(s.duality_gap >= -1e-9);
  CHECK(theta_witness_violation(g, s.witness) <= kWitnessTol);
  // The witness realizes at least the primal value in ||I + T||.
  CHECK(theta_witness_value(s.witness) >= s.primal_value - kWitnessTol);
}

}  // namespace

TEST_CASE("theta of the pentagon is sqrt 5") {
  const Graph c5 = cycle_graph(5);
  const SdpSolution s = lovasz_theta(c5);
  CHECK(std::abs(s.value - std::sqrt(5.0)) <= 1e-6);
  check_solution(c5, s);
}

TEST_CASE("theta of complete and empty graphs") {
  for (std::size_t n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const SdpSolution k = lovasz_theta(complete_graph(n));
    CHECK(std::abs(k.value - 1.0) <= 1e-6);
    check_solution(complete_graph(n), k);
    const SdpSolution e = lovasz_theta(empty_graph(n));
    CHECK(std::abs(e.value - static_cast<double>(n)) <= 1e-5);
    check_solution(empty_graph(n), e);
  }
}

TEST_CASE("theta of odd cycles matches the closed form") {
  // theta(C_n) = n cos(pi/n) / (1 + cos(pi/n)) for odd n.
  for (std::size_t n : {7u, 9u, 11u}) {
    const double c = std::cos(M_PI / static_cast<double>(n));
    const double expected = static_cast<double>(n) * c / (1.0 + c);
    CHECK(std::abs(lovasz_theta(cycle_graph(n)).value - expected) <= 1e-6);
  }
}

TEST_CASE("alpha <= theta on random graphs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(3 + t % 10);
    const Graph g = testing::random_graph(rng, n, 0.4);
    const SdpSolution s = lovasz_theta(g);
    CHECK(static_cast<double>(independence_number(g)) <= s.value + 1e-6);
    check_solution(g, s);
  }
}

TEST_CASE("theta is submultiplicative on strong products") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const Graph g = testing::random_graph(rng, 3 + static_cast<std::size_t>(t % 3), 0.5);
    const Graph h = testing::random_graph(rng, 3 + static_cast<std::size_t>((t + 1) % 3), 0.5);
    const double lhs = lovasz_theta(strong_product(g, h)).value;
    CHECK(lhs <= lovasz_theta(g).value * lovasz_theta(h).value + 1e-5);
  }
}

TEST_CASE("theta argument validation and iteration cap") {
  CHECK_THROWS_AS(lovasz_theta(Graph(0)), std::invalid_argument);
  CHECK_THROWS_AS(lovasz_theta(cycle_graph(5), {.tol = 0.0}), std::invalid_argument);
  const SdpSolution s = lovasz_theta(cycle_graph(7), {.tol = 1e-7, .max_iterations = 2});
  CHECK_FALSE(s.converged);
  CHECK(s.iterations == 2);
  CHECK(s.dual_value >= s.primal_value);
}
