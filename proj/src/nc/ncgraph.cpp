#include "ncb/nc/ncgraph.hpp"

#include <string>

namespace ncb {

using Eigen::Index;

ExactVector flatten(const ExactMatrix& a) {
  ExactVector v(a.rows() * a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

ExactMatrix unflatten(const ExactVector& v, std::size_t n) {
  const auto nn = static_cast<Index>(n);
  if (v.size() != nn * nn) throw DimensionError("unflatten: length is not n^2");
  ExactMatrix a(nn, nn);
  for (Index i = 0; i < nn; ++i)
    for (Index j = 0; j < nn; ++j) a(i, j) = v(i * nn + j);
  return a;
}

ExactMatrix NcGraph::basis_element(std::size_t k) const {
  return unflatten(coords_.row(static_cast<Index>(k)).transpose(), n_);
}

std::vector<ExactMatrix> NcGraph::basis() const {
  std::vector<ExactMatrix> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_element(k));
  return out;
}

bool NcGraph::contains_flat(const ExactVector& v) const {
  // Rows are reduced, so the only candidate combination uses coefficients
  // v[pivot_r]; membership holds iff it reproduces v.
  ExactVector residual = v;
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const GaussianRational coeff = v(pivots_[r]);
    if (coeff.is_zero()) continue;
    for (Index c = 0; c < coords_.cols(); ++c)
      if (!coords_(static_cast<Index>(r), c).is_zero()) residual(c) -= coeff * coords_(static_cast<Index>(r), c);
  }
  for (Index c = 0; c < residual.size(); ++c)
    if (!residual(c).is_zero()) return false;
  return true;
}

bool NcGraph::contains(const ExactMatrix& a) const {
  if (a.rows() != static_cast<Index>(n_) || a.cols() != static_cast<Index>(n_))
    throw DimensionError("NcGraph::contains: expected " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
  return contains_flat(flatten(a));
}

ExactMatrix NcGraph::annihilator() const {
  const Index nn = static_cast<Index>(n_ * n_);
  std::vector<bool> is_pivot(static_cast<std::size_t>(nn), false);
  for (Index p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
  ExactMatrix out = exact_zero(nn - static_cast<Index>(dim()), nn);
  Index row = 0;
  for (Index c = 0; c < nn; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    out(row, c) = 1;
    for (std::size_t r = 0; r < pivots_.size(); ++r) out(row, pivots_[r]) = -coords_(static_cast<Index>(r), c);
    ++row;
  }
  return out;
}

NcGraph span_from_generators(std::size_t n, const std::vector<ExactMatrix>& gens) {
  const auto nn = static_cast<Index>(n);
  ExactMatrix stacked(static_cast<Index>(gens.size()), nn * nn);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].rows() != nn || gens[k].cols() != nn)
      throw DimensionError("span_from_generators: generator " + std::to_string(k) + " is not " + std::to_string(n) +
                           "x" + std::to_string(n));
    stacked.row(static_cast<Index>(k)) = flatten(gens[k]).transpose();
  }
  RowEchelon e = rref(stacked);
  NcGraph s;
  s.n_ = n;
  s.coords_ = std::move(e.reduced);
  if (s.coords_.rows() == 0) s.coords_ = ExactMatrix(0, nn * nn);
  s.pivots_ = std::move(e.pivots);
  s.has_identity_ = n > 0 && s.contains(exact_identity(nn));
  s.self_adjoint_ = true;
  for (std::size_t k = 0; k < s.dim() && s.self_adjoint_; ++k)
    s.self_adjoint_ = s.contains(conj_transpose(s.basis_element(k)));
  return s;
}

void QuantumChannel::validate() const {
  if (kraus.empty()) throw InvalidChannel("channel: no Kraus operators");
  const auto ni = static_cast<Index>(n_in), no = static_cast<Index>(n_out);
  ExactMatrix sum = exact_zero(ni, ni);
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != no || kraus[k].cols() != ni)
      throw InvalidChannel("channel: Kraus operator " + std::to_string(k) + " has the wrong shape");
    sum += matmul(conj_transpose(kraus[k]), kraus[k]);
  }
  if (sum != exact_identity(ni)) throw InvalidChannel("channel: sum of E^dagger E is not the identity");
}

void ClassicalChannel::validate() const {
  if (inputs == 0 || outputs == 0) throw InvalidChannel("classical channel: empty alphabet");
  if (probs.rows() != static_cast<Index>(outputs) || probs.cols() != static_cast<Index>(inputs))
    throw InvalidChannel("classical channel: probability matrix must be outputs x inputs");
  for (Index x = 0; x < probs.cols(); ++x) {
    Rational total = 0;
    for (Index y = 0; y < probs.rows(); ++y) {
      if (sgn(probs(y, x)) < 0) throw InvalidChannel("classical channel: negative probability");
      total += probs(y, x);
    }
    if (total != 1) throw InvalidChannel("classical channel: column " + std::to_string(x + 1) + " does not sum to 1");
  }
}

NcGraph from_graph(const Graph& g) {
  const auto n = static_cast<Index>(g.order());
  std::vector<ExactMatrix> gens;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i == j || g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
        gens.push_back(matrix_unit(n, i, j));
  return span_from_generators(g.order(), gens);
}

NcGraph from_kraus(const QuantumChannel& channel) {
  channel.validate();
  std::vector<ExactMatrix> gens;
  for (const auto& e : channel.kraus) {
    const ExactMatrix ed = conj_transpose(e);
    for (const auto& f : channel.kraus) gens.push_back(matmul(ed, f));
  }
  return span_from_generators(channel.n_in, gens);
}

Graph confusability_graph(const ClassicalChannel& channel) {
  channel.validate();
  Graph g(channel.inputs);
  const Index outs = channel.probs.rows();
  for (std::size_t x = 0; x < channel.inputs; ++x)
    for (std::size_t xp = x + 1; xp < channel.inputs; ++xp)
      for (Index y = 0; y < outs; ++y)
        if (sgn(channel.probs(y, static_cast<Index>(x))) > 0 && sgn(channel.probs(y, static_cast<Index>(xp))) > 0) {
          g.add_edge(x, xp);
          break;
        }
  return g;
}

NcGraph from_classical_channel(const ClassicalChannel& channel) {
  // sqrt(N(y|x) N(y|x')) > 0 iff both factors are positive, so S_N only
  // depends on the support pattern.
  return from_graph(confusability_graph(channel));
}

std::optional<Graph> graph_of_system(const NcGraph& s) {
  const std::size_t n = s.n();
  std::vector<unsigned char> present(n * n, 0);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const auto row = s.coordinates().row(static_cast<Index>(k));
    Index nonzero = 0;
    for (Index c = 0; c < row.size(); ++c)
      if (!row(c).is_zero()) ++nonzero;
    // In reduced form a matrix unit row is exactly the pivot with value 1.
    if (nonzero != 1) return std::nullopt;
    present[static_cast<std::size_t>(s.pivots()[k])] = 1;
  }
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!present[i * n + i]) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (present[i * n + j] != present[j * n + i]) return std::nullopt;
      if (present[i * n + j]) g.add_edge(i, j);
    }
  }
  return g;
}

NcGraph tensor(const NcGraph& s, const NcGraph& t) {
  const std::vector<ExactMatrix> bs = s.basis(), bt = t.basis();
  std::vector<ExactMatrix> gens;
  gens.reserve(bs.size() * bt.size());
  for (const auto& a : bs)
    for (const auto& b : bt) gens.push_back(kron(a, b));
  return span_from_generators(s.n() * t.n(), gens);
}

NcGraph direct_sum_nc(const NcGraph& s, const NcGraph& t) {
  const auto ns = static_cast<Index>(s.n()), nt = static_cast<Index>(t.n());
  std::vector<ExactMatrix> gens;
  for (const auto& a : s.basis()) gens.push_back(direct_sum(a, exact_zero(nt, nt)));
  for (const auto& b : t.basis()) gens.push_back(direct_sum(exact_zero(ns, ns), b));
  return span_from_generators(s.n() + t.n(), gens);
}

bool is_unitary(const ExactMatrix& u) {
  return u.rows() == u.cols() && matmul(conj_transpose(u), u) == exact_identity(u.rows());
}

NcGraph conjugate_by_unitary(const NcGraph& s, const ExactMatrix& u) {
  if (u.rows() != static_cast<Index>(s.n()) || !is_unitary(u))
    throw NotUnitary("conjugate_by_unitary: U is not an exact " + std::to_string(s.n()) + "x" +
                     std::to_string(s.n()) + " unitary");
  const ExactMatrix ud = conj_transpose(u);
  std::vector<ExactMatrix> gens;
  for (const auto& a : s.basis()) gens.push_back(matmul(matmul(ud, a), u));
  return span_from_generators(s.n(), gens);
}

NcGraph scalar_system(std::size_t n) { return span_from_generators(n, {exact_identity(static_cast<Index>(n))}); }

NcGraph diagonal_system(std::size_t n) { return from_graph(empty_graph(n)); }

NcGraph full_system(std::size_t n) { return from_graph(complete_graph(n)); }

NcGraph s_n_system(std::size_t n) {
  const auto nn = static_cast<Index>(n);
  std::vector<ExactMatrix> gens{exact_identity(nn)};
  for (Index i = 0; i < nn; ++i)
    for (Index j = 0; j < nn; ++j)
      if (i != j) gens.push_back(matrix_unit(nn, i, j));
  return span_from_generators(n, gens);
}

std::vector<ExactMatrix> s_gamma_generators(const Rational& c) {
  if (sgn(c) <= 0 || c > 1) throw std::invalid_argument("s_gamma: c = cos^2(gamma) must lie in (0, 1]");
  ExactMatrix a = exact_zero(3, 3), b = exact_zero(3, 3);
  a(1, 1) = GaussianRational(Rational(1 - c));
  a(2, 2) = 1;
  b(1, 1) = GaussianRational(c);
  b(0, 0) = 1;
  return {matrix_unit(3, 0, 2), matrix_unit(3, 2, 0), a, b};
}

NcGraph s_gamma_system(const Rational& c) { return span_from_generators(3, s_gamma_generators(c)); }

}  // namespace ncb
