#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncb/nc/ncgraph.hpp"

namespace ncb {

/// Nonzero vectors psi_1..psi_l in C^n with <psi_i|A|psi_j> = 0 for all
/// i != j and A in S. Vectors need not be normalized.
struct IndependentSystem {
  std::size_t n = 0;
  std::vector<ExactVector> vectors;

  std::size_t size() const { return vectors.size(); }
  friend bool operator==(const IndependentSystem&, const IndependentSystem&) = default;
};

struct IndependenceViolation {
  std::size_t i = 0, j = 0;    // offending pair (0-based)
  std::size_t basis_index = 0;  // basis element of S
};

/// First violated condition, or nullopt if the system is independent for S.
/// Throws std::invalid_argument on a zero vector or a dimension mismatch.
std::optional<IndependenceViolation> find_independence_violation(const NcGraph& s, const IndependentSystem& sys);
bool verify_independent(const NcGraph& s, const IndependentSystem& sys);

class NotGraphSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::size_t alpha_of_graph_system(const Graph& g);
/// Throws NotGraphSystem unless S = S_G for some graph G.
std::size_t alpha_of_graph_system(const NcGraph& s);

struct AlphaSearchOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 16;
  std::size_t sweeps = 300;
  /// Largest denominator tried when rounding (ladder 16, 256, 10^4).
  long max_denominator = 10000;
};

/// Heuristic search for an independent system of size `target`. Graph
/// systems are seeded with a maximum independent set; otherwise block
/// coordinate descent on sum |<psi_i|A|psi_j>|^2 followed by exact greedy
/// completion. Any returned system passes verify_independent.
std::optional<IndependentSystem> alpha_lower_search(const NcGraph& s, std::size_t target,
                                                    const AlphaSearchOptions& options = {});

/// Independence value with its justification tag: "exact" for graph
/// systems, "lower-bound" for a verified witness.
struct AlphaValue {
  std::size_t value = 0;
  std::string tag;
  std::optional<IndependentSystem> witness;
};

/// Largest size found by alpha_lower_search (at least 1), or the exact
/// value for graph systems.
AlphaValue alpha_estimate(const NcGraph& s, const AlphaSearchOptions& options = {});

}  // namespace ncb
