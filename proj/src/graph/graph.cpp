#include "ncb/graph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ncb {

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (i == j) throw std::invalid_argument("Graph::add_edge: loops are not allowed");
  if (adj_[i * n_ + j]) return;
  adj_[i * n_ + j] = adj_[j * n_ + i] = 1;
  ++edge_count_;
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n_; ++u) d += adj_[v * n_ + u];
  return d;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

Graph complement(const Graph& g) {
  Graph out(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = i + 1; j < g.order(); ++j)
      if (!g.adjacent(i, j)) out.add_edge(i, j);
  return out;
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete_graph: n must be >= 1");
  return complement(Graph(n));
}

Graph empty_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("empty_graph: n must be >= 1");
  return Graph(n);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path_graph: n must be >= 1");
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph strong_product(const Graph& g, const Graph& h) {
  const std::size_t n = g.order(), m = h.order();
  Graph out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !g.adjacent(i, j)) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (k != l && !h.adjacent(k, l)) continue;
          const std::size_t a = i * m + k, b = j * m + l;
          if (a < b) out.add_edge(a, b);
        }
    }
  return out;
}

Graph strong_power(const Graph& g, std::size_t k) {
  if (k < 1) throw std::invalid_argument("strong_power: k must be >= 1");
  Graph out = g;
  for (std::size_t t = 1; t < k; ++t) out = strong_product(out, g);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.order() + h.order());
  for (const auto& [i, j] : g.edges()) out.add_edge(i, j);
  for (const auto& [i, j] : h.edges()) out.add_edge(g.order() + i, g.order() + j);
  return out;
}

namespace {

using Bits = unsigned long long;

int popcount(Bits x) { return __builtin_popcountll(x); }
int lowest(Bits x) { return __builtin_ctzll(x); }

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : n_(g.order()) {
    // Relabel by ascending degree (stable on ties) so branching is deterministic.
    order_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) < g.degree(b); });
    neighbors_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (a != b && g.adjacent(order_[a], order_[b])) neighbors_[a] |= Bits{1} << b;
  }

  std::vector<std::size_t> run() {
    Bits all = n_ == 64 ? ~Bits{0} : ((Bits{1} << n_) - 1);
    expand(0, all);
    std::vector<std::size_t> out;
    for (Bits b = best_set_; b; b &= b - 1) out.push_back(order_[static_cast<std::size_t>(lowest(b))]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // Greedy partition of `p` into cliques of G; bound[i] is the number of
  // cliques opened up to and including verts[i].
  void clique_cover(Bits p, std::vector<int>& verts, std::vector<int>& bound) const {
    verts.clear();
    bound.clear();
    int k = 0;
    Bits uncolored = p;
    while (uncolored) {
      ++k;
      Bits q = uncolored;
      while (q) {
        const int v = lowest(q);
        q &= ~(Bits{1} << v);
        // Keep only common neighbors: the class stays a clique of G.
        q &= neighbors_[static_cast<std::size_t>(v)];
        uncolored &= ~(Bits{1} << v);
        verts.push_back(v);
        bound.push_back(k);
      }
    }
  }

  void expand(Bits current, Bits candidates) {
    if (!candidates) {
      if (popcount(current) > best_size_) {
        best_size_ = popcount(current);
        best_set_ = current;
      }
      return;
    }
    std::vector<int> verts, bound;
    clique_cover(candidates, verts, bound);
    const int size = popcount(current);
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (size + bound[idx] <= best_size_) return;
      const int v = verts[idx];
      const Bits bit = Bits{1} << v;
      expand(current | bit, candidates & ~neighbors_[static_cast<std::size_t>(v)] & ~bit);
      candidates &= ~bit;
    }
    if (size > best_size_) {
      best_size_ = size;
      best_set_ = current;
    }
  }

  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<Bits> neighbors_;
  int best_size_ = 0;
  Bits best_set_ = 0;
};

}  // namespace

std::vector<std::size_t> maximum_independent_set(const Graph& g, std::size_t cap) {
  const std::size_t limit = std::min<std::size_t>(cap, 64);
  if (g.order() > limit)
    throw CapExceeded("independence number: graph has " + std::to_string(g.order()) + " vertices, cap is " +
                      std::to_string(limit));
  if (g.order() == 0) return {};
  return IndependentSetSearch(g).run();
}

std::size_t independence_number(const Graph& g, std::size_t cap) {
  return maximum_independent_set(g, cap).size();
}

double shannon_lower(const Graph& g, std::size_t k, std::size_t cap) {
  if (k < 1) throw std::invalid_argument("shannon_lower: k must be >= 1");
  const double vertices = std::pow(static_cast<double>(g.order()), static_cast<double>(k));
  if (vertices > static_cast<double>(std::min<std::size_t>(cap, 64)))
    throw CapExceeded("shannon_lower: strong power has too many vertices");
  const auto alpha = static_cast<double>(independence_number(strong_power(g, k), cap));
  return std::pow(alpha, 1.0 / static_cast<double>(k));
}

std::vector<std::vector<std::size_t>> greedy_clique_cover(const Graph& g) {
  std::vector<std::vector<std::size_t>> cover;
  std::vector<bool> used(g.order(), false);
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (used[v]) continue;
    std::vector<std::size_t> clique{v};
    used[v] = true;
    for (std::size_t u = v + 1; u < g.order(); ++u) {
      if (used[u]) continue;
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t w) { return g.adjacent(u, w); })) {
        clique.push_back(u);
        used[u] = true;
      }
    }
    cover.push_back(std::move(clique));
  }
  return cover;
}

Graph read_dimacs(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0, m = 0, seen = 0;
  Graph g;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw std::invalid_argument("graph file: duplicate 'p' line");
      std::string maybe_n;
      ls >> maybe_n;
      // Accept the classic "p edge <n> <m>" as well as "p <n> <m>".
      if (maybe_n == "edge" || maybe_n == "col") ls >> n;
      else n = std::stoul(maybe_n);
      if (!(ls >> m)) throw std::invalid_argument("graph file: malformed 'p' line");
      g = Graph(n);
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw std::invalid_argument("graph file: 'e' line before 'p' line");
      std::size_t i = 0, j = 0;
      if (!(ls >> i >> j) || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("graph file: bad edge on line " + std::to_string(line_no));
      g.add_edge(i - 1, j - 1);
      ++seen;
    } else {
      throw std::invalid_argument("graph file: unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw std::invalid_argument("graph file: missing 'p' line");
  if (seen != m)
    throw std::invalid_argument("graph file: header declares " + std::to_string(m) + " edges, found " +
                                std::to_string(seen));
  return g;
}

void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p " << g.order() << ' ' << g.size() << '\n';
  for (const auto& [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_dimacs(in);
}

}  // namespace ncb
