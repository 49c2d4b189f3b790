#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncb/exact/linalg.hpp"
#include "ncb/graph/graph.hpp"
#include "ncb/groebner/encoding.hpp"
#include "ncb/groebner/groebner.hpp"
#include "ncb/theta/theta.hpp"

namespace ncb {

/// B fits G when B_ij = 0 for distinct non-adjacent i, j and the diagonal
/// is 1 (unit variant) or nonzero (nonzero variant).
struct FittingMatrix {
  Graph graph;
  ExactMatrix b;
  FittingVariant variant = FittingVariant::UnitDiagonal;

  friend bool operator==(const FittingMatrix&, const FittingMatrix&) = default;
};

const char* to_string(FittingVariant variant);
FittingVariant parse_fitting_variant(const std::string& text);

class FittingViolation : public std::invalid_argument {
 public:
  FittingViolation(const std::string& what, std::size_t row, std::size_t col)
      : std::invalid_argument(what), row(row), col(col) {}
  std::size_t row, col;  // 0-based; both equal the vertex for a diagonal violation
};

/// rank(B) after checking the pattern; throws FittingViolation at the first
/// violated entry in row-major order.
std::size_t verify_fitting(const FittingMatrix& fm);

class OrthogonalityViolation : public std::invalid_argument {
 public:
  OrthogonalityViolation(const std::string& what, std::size_t i, std::size_t j)
      : std::invalid_argument(what), i(i), j(j) {}
  std::size_t i, j;
};

/// Checks one nonzero vector per vertex in a common C^k with
/// <psi_i|psi_j> = 0 for non-adjacent i != j, cross-checks that the Gram
/// matrix is PSD of rank <= k, and returns k.
std::size_t orthogonal_rank_verify(const Graph& g, const std::vector<ExactVector>& vectors);

ExactMatrix gram_matrix(const std::vector<ExactVector>& vectors);

/// Rows of the Gram matrix divided by its diagonal: unit-diagonal, same rank.
FittingMatrix fitting_from_representation(const Graph& g, const std::vector<ExactVector>& vectors);

/// Block matrix of all-ones blocks over a clique cover; rank = #cliques.
FittingMatrix clique_cover_fitting(const Graph& g);

/// Rotation i -> i+1 (mod n) is an automorphism.
bool is_circulant(const Graph& g);

struct CirculantSweepResult {
  std::optional<FittingMatrix> best;
  std::size_t best_rank = 0;
  std::size_t candidates = 0;
};

/// For circulant G every edge offset d (1 <= d <= n/2) gets a value from
/// the grid {p/q : |p| <= 2q, q <= max_q} (plus Gaussian grid points when
/// `complex` is set), symmetric in d and n - d; keeps the lowest exact rank.
/// Offsets are swept jointly only when there are at most two classes.
CirculantSweepResult circulant_sweep(const Graph& g, int max_q = 6, bool complex = false);

/// Exact orthogonal representation in C^k found by depth-first search over
/// small combinations of nullspace vectors, or nullopt within the node
/// budget.
std::optional<std::vector<ExactVector>> find_orthogonal_representation(const Graph& g, std::size_t k,
                                                                      std::size_t node_budget = 20000);

struct TinyHaemersResult {
  std::optional<std::size_t> value;  // nullopt: unknown or above the cap
  std::string status;                // "exact", "unknown" or "above-cap"
  std::vector<std::pair<std::size_t, IdealStatus>> steps;
};

/// For k = alpha(G) .. k_cap decides whether a fitting matrix of rank <= k
/// exists over C; the first k whose ideal is proper is H(G). n <= 6.
TinyHaemersResult haemers_exact_tiny(const Graph& g, std::size_t k_cap,
                                     FittingVariant variant = FittingVariant::NonzeroDiagonal,
                                     const GroebnerLimits& limits = {});

struct GraphBoundsOptions {
  ThetaOptions theta{};
  bool use_exact_engine = false;
  GroebnerLimits engine_limits{};
  std::size_t representation_budget = 20000;
};

struct GraphBounds {
  std::size_t alpha = 0;
  SdpSolution theta;
  std::size_t haemers_lower = 0;
  std::string haemers_lower_reason;
  std::size_t haemers_upper = 0;
  std::string haemers_upper_reason;
  FittingMatrix upper_witness;
  std::size_t xi_upper = 0;
  std::vector<ExactVector> xi_witness;
  bool consistent = false;
};

GraphBounds bounds_report(const Graph& g, const GraphBoundsOptions& options = {});

/// Smallest r with r * r >= a.
std::size_t ceil_sqrt(std::size_t a);

}  // namespace ncb
