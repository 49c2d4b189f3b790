#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncb {

/// Finite simple undirected graph on vertices 0..n-1 (1..n in files).
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t order() const { return n_; }
  std::size_t size() const { return edge_count_; }

  /// Loops and out-of-range endpoints throw; repeated edges are ignored.
  void add_edge(std::size_t i, std::size_t j);
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  std::size_t degree(std::size_t v) const;

  /// Edges as (i, j) with i < j, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<unsigned char> adj_;
};

Graph complement(const Graph& g);
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);

/// Vertex (i, k) of G x H is labelled i * |H| + k.
Graph strong_product(const Graph& g, const Graph& h);
Graph strong_power(const Graph& g, std::size_t k);
/// Vertices of H are shifted by |G|.
Graph disjoint_union(const Graph& g, const Graph& h);

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultIndependenceCap = 64;

/// A maximum independent set (sorted vertex list) by branch and bound with
/// a greedy clique-cover bound. Vertices are branched in ascending-degree
/// order so the result is deterministic.
std::vector<std::size_t> maximum_independent_set(const Graph& g, std::size_t cap = kDefaultIndependenceCap);
std::size_t independence_number(const Graph& g, std::size_t cap = kDefaultIndependenceCap);

/// alpha(G^k)^(1/k), a lower bound on the Shannon capacity.
double shannon_lower(const Graph& g, std::size_t k, std::size_t cap = kDefaultIndependenceCap);

/// A clique cover (list of cliques partitioning the vertices) built greedily.
std::vector<std::vector<std::size_t>> greedy_clique_cover(const Graph& g);

/// DIMACS-like text: "p <n> <m>" then "e <i> <j>" per edge, 1-based.
Graph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Graph& g);
Graph read_dimacs_file(const std::string& path);

}  // namespace ncb
