#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ncb/exact/linalg.hpp"
#include "ncb/graph/graph.hpp"

namespace ncb {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Subspace S of M_n stored by its canonical basis: the reduced row echelon
/// form of the generators flattened row-major into C^(n^2). Two spans are
/// equal iff their canonical bases are equal.
class NcGraph {
 public:
  NcGraph() = default;

  std::size_t n() const { return n_; }
  std::size_t dim() const { return pivots_.size(); }

  /// Basis element k as an n x n matrix.
  ExactMatrix basis_element(std::size_t k) const;
  std::vector<ExactMatrix> basis() const;
  /// dim x n^2 coordinate rows in reduced echelon form.
  const ExactMatrix& coordinates() const { return coords_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

  bool contains(const ExactMatrix& a) const;

  /// (n^2 - dim) x n^2 matrix whose kernel is exactly span(S); one row per
  /// non-pivot coordinate.
  ExactMatrix annihilator() const;

  bool is_self_adjoint() const { return self_adjoint_; }
  bool contains_identity() const { return has_identity_; }
  bool is_operator_system() const { return self_adjoint_ && has_identity_; }
  bool is_full() const { return dim() == n_ * n_; }

  friend bool operator==(const NcGraph& a, const NcGraph& b) {
    return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.coords_ == b.coords_;
  }

  friend NcGraph span_from_generators(std::size_t n, const std::vector<ExactMatrix>& gens);

 private:
  bool contains_flat(const ExactVector& v) const;

  std::size_t n_ = 0;
  ExactMatrix coords_;
  std::vector<Eigen::Index> pivots_;
  bool self_adjoint_ = false;
  bool has_identity_ = false;
};

/// Canonical span of the generators; throws DimensionError if a generator
/// is not n x n.
NcGraph span_from_generators(std::size_t n, const std::vector<ExactMatrix>& gens);

inline bool equals(const NcGraph& a, const NcGraph& b) { return a == b; }

class InvalidChannel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUnitary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phi(A) = sum_k E_k A E_k^dagger with E_k of size n_out x n_in.
struct QuantumChannel {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  std::vector<ExactMatrix> kraus;

  /// Throws InvalidChannel unless shapes agree and sum E_k^dagger E_k = I.
  void validate() const;
};

/// probs(y, x) = N(y|x); columns are distributions over outputs.
struct ClassicalChannel {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  RationalMatrix probs;

  void validate() const;
};

NcGraph from_graph(const Graph& g);
/// span{E_k^dagger E_l}.
NcGraph from_kraus(const QuantumChannel& channel);
NcGraph from_classical_channel(const ClassicalChannel& channel);
Graph confusability_graph(const ClassicalChannel& channel);

/// If every basis element is a matrix unit, all diagonal units are present
/// and the off-diagonal pattern is symmetric, the graph G with S = S_G.
std::optional<Graph> graph_of_system(const NcGraph& s);

NcGraph tensor(const NcGraph& s, const NcGraph& t);
/// {A (+) B : A in S, B in T}; no cross blocks.
NcGraph direct_sum_nc(const NcGraph& s, const NcGraph& t);
/// U^dagger S U; throws NotUnitary unless U^dagger U = I exactly.
NcGraph conjugate_by_unitary(const NcGraph& s, const ExactMatrix& u);

bool is_unitary(const ExactMatrix& u);

/// C I_n.
NcGraph scalar_system(std::size_t n);
/// Diagonal matrices D_n.
NcGraph diagonal_system(std::size_t n);
/// M_n.
NcGraph full_system(std::size_t n);
/// span{I_n, |i><j| : i != j}.
NcGraph s_n_system(std::size_t n);
/// span{|1><3|, |3><1|, (1-c)|2><2| + |3><3|, c|2><2| + |1><1|} in M_3
/// with c = cos^2(gamma) in (0, 1].
NcGraph s_gamma_system(const Rational& c);
std::vector<ExactMatrix> s_gamma_generators(const Rational& c);

/// Vectorize row-major / reshape back.
ExactVector flatten(const ExactMatrix& a);
ExactMatrix unflatten(const ExactVector& v, std::size_t n);

}  // namespace ncb
