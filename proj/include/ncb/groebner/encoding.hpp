#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ncb/graph/graph.hpp"
#include "ncb/groebner/polynomial.hpp"
#include "ncb/nc/ncgraph.hpp"

namespace ncb {

class EncodingTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RankEncoding { Factor, Minor };

/// Polynomial system with a description of each variable and per-kind
/// polynomial counts.
struct PolynomialSystem {
  std::size_t num_vars = 0;
  std::vector<Polynomial> polys;
  std::vector<std::string> variable_names;
  std::size_t membership_count = 0;
  std::size_t trace_count = 0;
  std::size_t minor_count = 0;
  std::size_t other_count = 0;
};

inline constexpr std::size_t kDefaultEncodingVariableCap = 24;

/// Feasibility of B in M_m(S), sum_i B_ii = I_n, rank B <= k over C.
///
/// Factor: B = C^dagger D with C, D of shape k x mn; real variables are the
/// real and imaginary parts of every entry of C then D (x(2e+1) = Re,
/// x(2e+2) = Im of entry e in row-major order).
/// Minor: each block is sum_t y_t A_t over the basis of S with complex y
/// split the same way; all (k+1)-minors of B vanish.
/// Zero polynomials and duplicates up to scaling are dropped. Throws
/// EncodingTooLarge above `max_vars` variables.
PolynomialSystem encode_rank_feasibility(const NcGraph& s, std::size_t k, std::size_t m, RankEncoding encoding,
                                         std::size_t max_vars = kDefaultEncodingVariableCap);

enum class FittingVariant { UnitDiagonal, NonzeroDiagonal };

/// Fitting matrices of G with rank <= k: one complex variable per diagonal
/// entry and per ordered edge (i, j); the equations have rational
/// coefficients so no real/imaginary split is needed. Unit diagonal fixes
/// B_ii = 1; nonzero diagonal adds t_i B_ii - 1.
PolynomialSystem encode_fitting_rank(const Graph& g, std::size_t k, FittingVariant variant,
                                     std::size_t max_vars = kMaxVariables);

}  // namespace ncb
