#include "ncb/nc/independence.hpp"

#include <random>

#include <Eigen/Dense>

namespace ncb {

using Eigen::Index;

namespace {

// <u|A|v>, skipping zero entries.
GaussianRational bilinear(const ExactVector& u, const ExactMatrix& a, const ExactVector& v) {
  GaussianRational out = 0;
  for (Index p = 0; p < a.rows(); ++p) {
    if (u(p).is_zero()) continue;
    GaussianRational row = 0;
    for (Index q = 0; q < a.cols(); ++q)
      if (!a(p, q).is_zero() && !v(q).is_zero()) row += a(p, q) * v(q);
    if (!row.is_zero()) out += conj(u(p)) * row;
  }
  return out;
}

void check_shape(const NcGraph& s, const IndependentSystem& sys) {
  if (sys.n != s.n()) throw std::invalid_argument("independent system: dimension differs from S");
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (sys.vectors[i].size() != static_cast<Index>(s.n()))
      throw std::invalid_argument("independent system: vector " + std::to_string(i + 1) + " has the wrong length");
    bool zero = true;
    for (Index p = 0; p < sys.vectors[i].size() && zero; ++p) zero = sys.vectors[i](p).is_zero();
    if (zero) throw std::invalid_argument("independent system: vector " + std::to_string(i + 1) + " is zero");
  }
}

ExactVector standard_vector(std::size_t n, std::size_t i) {
  ExactVector v = ExactVector::Constant(static_cast<Index>(n), GaussianRational(0));
  v(static_cast<Index>(i)) = 1;
  return v;
}

// Rows r with r psi = 0 encoding <u|A|psi> = <u|A^dagger|psi> = 0 for every basis A.
ExactMatrix exact_constraints(const std::vector<ExactMatrix>& basis, const std::vector<ExactVector>& fixed, std::size_t n) {
  ExactMatrix rows(static_cast<Index>(2 * basis.size() * fixed.size()), static_cast<Index>(n));
  Index r = 0;
  for (const auto& u : fixed) {
    const ExactMatrix ud = conj_transpose(u);
    for (const auto& a : basis) {
      rows.row(r++) = matmul(ud, a);
      rows.row(r++) = matmul(ud, conj_transpose(a));
    }
  }
  return rows;
}

Eigen::MatrixXcd numeric_constraints(const std::vector<Eigen::MatrixXcd>& basis, const std::vector<Eigen::VectorXcd>& psi,
                                     std::size_t skip) {
  const Index n = psi.front().size();
  Eigen::MatrixXcd rows(static_cast<Index>(2 * basis.size() * (psi.size() - 1)), n);
  Index r = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i == skip) continue;
    const Eigen::RowVectorXcd ud = psi[i].adjoint();
    for (const auto& a : basis) {
      rows.row(r++) = ud * a;
      rows.row(r++) = ud * a.adjoint();
    }
  }
  return rows;
}

double total_violation(const std::vector<Eigen::MatrixXcd>& basis, const std::vector<Eigen::VectorXcd>& psi) {
  double out = 0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j)
      if (i != j)
        for (const auto& a : basis) out += std::norm(psi[i].dot(a * psi[j]));
  return out;
}

// Rounds the numeric vectors one at a time into the exact nullspace of the
// constraints imposed by the already-rounded ones.
std::optional<IndependentSystem> exact_completion(const NcGraph& s, const std::vector<ExactMatrix>& basis,
                                                  const std::vector<Eigen::VectorXcd>& psi, long max_denominator) {
  const std::size_t n = s.n();
  for (long den : {16L, 256L, 10000L, 1000000L}) {
    if (den > max_denominator) break;
    IndependentSystem sys{n, {}};
    bool ok = true;
    for (const auto& target : psi) {
      ExactMatrix null = sys.vectors.empty() ? exact_identity(static_cast<Index>(n))
                                             : nullspace(exact_constraints(basis, sys.vectors, n));
      if (null.cols() == 0) {
        ok = false;
        break;
      }
      // Least-squares coordinates of the numeric vector in the nullspace.
      const Eigen::MatrixXcd nf = to_complex(null);
      Eigen::VectorXcd coeff = nf.colPivHouseholderQr().solve(target);
      // Scale so the largest coordinate is 1; rounding is then relative.
      Index big = 0;
      coeff.cwiseAbs().maxCoeff(&big);
      if (std::abs(coeff(big)) < 1e-12) {
        ok = false;
        break;
      }
      coeff /= coeff(big);
      ExactVector exact_coeff(coeff.size());
      for (Index c = 0; c < coeff.size(); ++c) exact_coeff(c) = rationalize(coeff(c), BigInt(den));
      ExactVector v = matmul(null, exact_coeff);
      bool zero = true;
      for (Index p = 0; p < v.size() && zero; ++p) zero = v(p).is_zero();
      if (zero) {
        ok = false;
        break;
      }
      sys.vectors.push_back(std::move(v));
    }
    if (ok && verify_independent(s, sys)) return sys;
  }
  return std::nullopt;
}

}  // namespace

std::optional<IndependenceViolation> find_independence_violation(const NcGraph& s, const IndependentSystem& sys) {
  check_shape(s, sys);
  const std::vector<ExactMatrix> basis = s.basis();
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (i == j) continue;
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (!bilinear(sys.vectors[i], basis[b], sys.vectors[j]).is_zero()) return IndependenceViolation{i, j, b};
    }
  return std::nullopt;
}

bool verify_independent(const NcGraph& s, const IndependentSystem& sys) {
  return !find_independence_violation(s, sys).has_value();
}

std::size_t alpha_of_graph_system(const Graph& g) { return independence_number(g); }

std::size_t alpha_of_graph_system(const NcGraph& s) {
  const auto g = graph_of_system(s);
  if (!g) throw NotGraphSystem("alpha_of_graph_system: S is not spanned by matrix units of a graph");
  return independence_number(*g);
}

std::optional<IndependentSystem> alpha_lower_search(const NcGraph& s, std::size_t target,
                                                    const AlphaSearchOptions& options) {
  if (target < 1) throw std::invalid_argument("alpha_lower_search: target must be >= 1");
  const std::size_t n = s.n();
  if (target > n) return std::nullopt;  // independent vectors are linearly independent when I is in S
  if (target == 1) return IndependentSystem{n, {standard_vector(n, 0)}};

  if (const auto g = graph_of_system(s); g && g->order() <= kDefaultIndependenceCap) {
    const std::vector<std::size_t> mis = maximum_independent_set(*g);
    if (mis.size() < target) return std::nullopt;
    IndependentSystem sys{n, {}};
    for (std::size_t k = 0; k < target; ++k) sys.vectors.push_back(standard_vector(n, mis[k]));
    if (verify_independent(s, sys)) return sys;
    return std::nullopt;
  }

  const std::vector<ExactMatrix> basis = s.basis();
  std::vector<Eigen::MatrixXcd> fbasis;
  for (const auto& a : basis) fbasis.push_back(to_complex(a));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> coord(0, n - 1);
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    std::vector<Eigen::VectorXcd> psi(target, Eigen::VectorXcd::Zero(static_cast<Index>(n)));
    // Alternate dense random starts with sparse ones near coordinate vectors.
    const bool sparse = restart % 2 == 1;
    for (auto& v : psi) {
      if (sparse) {
        v(static_cast<Index>(coord(rng))) = 1.0;
        v(static_cast<Index>(coord(rng))) += std::complex<double>(0.1 * normal(rng), 0.1 * normal(rng));
      } else {
        for (Index p = 0; p < v.size(); ++p) v(p) = {normal(rng), normal(rng)};
      }
      v.normalize();
    }
    for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep) {
      for (std::size_t j = 0; j < target; ++j) {
        const Eigen::MatrixXcd m = numeric_constraints(fbasis, psi, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
        psi[j] = es.eigenvectors().col(0);
      }
      if (total_violation(fbasis, psi) < 1e-24) break;
    }
    if (total_violation(fbasis, psi) > 1e-12) continue;
    if (auto sys = exact_completion(s, basis, psi, options.max_denominator)) return sys;
  }
  return std::nullopt;
}

AlphaValue alpha_estimate(const NcGraph& s, const AlphaSearchOptions& options) {
  if (const auto g = graph_of_system(s); g && g->order() <= kDefaultIndependenceCap) {
    const std::vector<std::size_t> mis = maximum_independent_set(*g);
    IndependentSystem sys{s.n(), {}};
    for (std::size_t v : mis) sys.vectors.push_back(standard_vector(s.n(), v));
    return {mis.size(), "exact", sys};
  }
  AlphaValue best{1, "lower-bound", IndependentSystem{s.n(), {standard_vector(s.n(), 0)}}};
  for (std::size_t l = 2; l <= s.n(); ++l) {
    auto sys = alpha_lower_search(s, l, options);
    if (!sys) break;
    best = {l, "lower-bound", std::move(sys)};
  }
  return best;
}

}  // namespace ncb
