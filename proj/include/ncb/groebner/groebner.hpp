#pragma once

#include <optional>
#include <vector>

#include "ncb/groebner/polynomial.hpp"

namespace ncb {

struct GroebnerLimits {
  std::size_t max_pairs = 200000;
  /// Pairs whose lcm exceeds this degree are not processed.
  int max_degree = 8;
  double time_budget_seconds = 60.0;
};

enum class IdealStatus { NoCommonRoot, HasCommonRootOrUnknown, Timeout };

const char* to_string(IdealStatus status);

struct IdealDecision {
  IdealStatus status = IdealStatus::HasCommonRootOrUnknown;
  std::size_t basis_size = 0;
  std::size_t pairs_processed = 0;
  /// With status NoCommonRoot: cofactors a_i with sum a_i g_i = 1.
  std::optional<std::vector<Polynomial>> certificate;
  /// Reduced Groebner basis when the run completed without a constant,
  /// sorted by increasing leading monomial.
  std::vector<Polynomial> basis;
};

/// Buchberger's algorithm with the normal selection strategy and the
/// product and chain criteria. A nonzero constant in the basis decides
/// that the generators have no common root over C; the cofactor
/// combination is then recomputed and stored. Hitting any limit before a
/// constant appears gives Timeout.
IdealDecision buchberger(const std::vector<Polynomial>& gens, const GroebnerLimits& limits = {});

/// Exactly re-checks sum cofactors[i] * gens[i] == 1.
bool verify_cofactors(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& cofactors);

/// Full reduction of f modulo the list g.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& g);

}  // namespace ncb
