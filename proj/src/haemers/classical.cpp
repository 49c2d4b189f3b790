#include "ncb/haemers/classical.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ncb {

using Eigen::Index;

const char* to_string(FittingVariant variant) {
  return variant == FittingVariant::UnitDiagonal ? "unit-diagonal" : "nonzero-diagonal";
}

FittingVariant parse_fitting_variant(const std::string& text) {
  if (text == "unit-diagonal") return FittingVariant::UnitDiagonal;
  if (text == "nonzero-diagonal") return FittingVariant::NonzeroDiagonal;
  throw std::invalid_argument("unknown fitting variant '" + text + "'");
}

std::size_t verify_fitting(const FittingMatrix& fm) {
  const std::size_t n = fm.graph.order();
  if (fm.b.rows() != static_cast<Index>(n) || fm.b.cols() != static_cast<Index>(n))
    throw FittingViolation("fitting matrix: B is not " + std::to_string(n) + "x" + std::to_string(n), 0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GaussianRational& v = fm.b(static_cast<Index>(i), static_cast<Index>(j));
      const std::string at = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (i == j) {
        if (fm.variant == FittingVariant::UnitDiagonal && v != GaussianRational(1))
          throw FittingViolation("fitting matrix: diagonal entry " + at + " is not 1", i, j);
        if (fm.variant == FittingVariant::NonzeroDiagonal && v.is_zero())
          throw FittingViolation("fitting matrix: diagonal entry " + at + " is zero", i, j);
      } else if (!fm.graph.adjacent(i, j) && !v.is_zero()) {
        throw FittingViolation("fitting matrix: entry " + at + " is nonzero on a non-edge", i, j);
      }
    }
  return rank(fm.b);
}

ExactMatrix gram_matrix(const std::vector<ExactVector>& vectors) {
  const auto n = static_cast<Index>(vectors.size());
  ExactMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = vectors[static_cast<std::size_t>(i)].dot(vectors[static_cast<std::size_t>(j)]);
  return g;
}

std::size_t orthogonal_rank_verify(const Graph& g, const std::vector<ExactVector>& vectors) {
  const std::size_t n = g.order();
  if (vectors.size() != n)
    throw OrthogonalityViolation("orthogonal representation: expected one vector per vertex", 0, 0);
  if (n == 0) return 0;
  const Index k = vectors.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != k)
      throw OrthogonalityViolation("orthogonal representation: vectors differ in dimension", i, i);
    if (is_zero(vectors[i]))
      throw OrthogonalityViolation("orthogonal representation: vector " + std::to_string(i + 1) + " is zero", i, i);
  }
  const ExactMatrix gram = gram_matrix(vectors);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!g.adjacent(i, j) && !gram(static_cast<Index>(i), static_cast<Index>(j)).is_zero())
        throw OrthogonalityViolation("orthogonal representation: vectors " + std::to_string(i + 1) + " and " +
                                         std::to_string(j + 1) + " are not orthogonal",
                                     i, j);
  if (!is_psd(gram) || rank(gram) > static_cast<std::size_t>(k))
    throw std::logic_error("orthogonal representation: Gram matrix failed the PSD/rank cross-check");
  return static_cast<std::size_t>(k);
}

FittingMatrix fitting_from_representation(const Graph& g, const std::vector<ExactVector>& vectors) {
  ExactMatrix b = gram_matrix(vectors);
  for (Index i = 0; i < b.rows(); ++i) {
    const GaussianRational inv = GaussianRational(1) / b(i, i);
    for (Index j = 0; j < b.cols(); ++j) b(i, j) *= inv;
  }
  return {g, b, FittingVariant::UnitDiagonal};
}

FittingMatrix clique_cover_fitting(const Graph& g) {
  const auto n = static_cast<Index>(g.order());
  ExactMatrix b = exact_zero(n, n);
  for (const auto& clique : greedy_clique_cover(g))
    for (std::size_t u : clique)
      for (std::size_t v : clique) b(static_cast<Index>(u), static_cast<Index>(v)) = 1;
  return {g, b, FittingVariant::UnitDiagonal};
}

bool is_circulant(const Graph& g) {
  const std::size_t n = g.order();
  for (const auto& [i, j] : g.edges())
    if (!g.adjacent((i + 1) % n, (j + 1) % n)) return false;
  return true;
}

namespace {

std::vector<GaussianRational> sweep_values(int max_q, bool complex) {
  std::set<std::pair<Rational, Rational>> seen;
  std::vector<GaussianRational> out;
  auto push = [&](const Rational& re, const Rational& im) {
    if (seen.insert({re, im}).second) out.emplace_back(re, im);
  };
  std::vector<Rational> reals;
  for (int q = 1; q <= max_q; ++q)
    for (int p = -2 * q; p <= 2 * q; ++p) {
      Rational r(p, q);
      r.canonicalize();
      reals.push_back(r);
    }
  std::sort(reals.begin(), reals.end());
  reals.erase(std::unique(reals.begin(), reals.end()), reals.end());
  for (const auto& r : reals) push(r, 0);
  if (complex) {
    // A coarser grid for the imaginary direction keeps the sweep small.
    std::vector<Rational> coarse;
    for (const auto& r : reals)
      if (r.get_den() <= 3) coarse.push_back(r);
    for (const auto& re : coarse)
      for (const auto& im : coarse)
        if (sgn(im) != 0) push(re, im);
  }
  return out;
}

}  // namespace

CirculantSweepResult circulant_sweep(const Graph& g, int max_q, bool complex) {
  CirculantSweepResult out;
  if (!is_circulant(g) || g.order() == 0) return out;
  const std::size_t n = g.order();
  std::vector<std::size_t> offsets;
  for (std::size_t d = 1; d <= n / 2; ++d)
    if (g.adjacent(0, d)) offsets.push_back(d);
  const std::vector<GaussianRational> values = sweep_values(max_q, complex);

  auto build = [&](const std::vector<GaussianRational>& x) {
    ExactMatrix b = exact_identity(static_cast<Index>(n));
    for (std::size_t c = 0; c < offsets.size(); ++c)
      for (std::size_t i = 0; i < n; ++i) {
        b(static_cast<Index>(i), static_cast<Index>((i + offsets[c]) % n)) = x[c];
        b(static_cast<Index>(i), static_cast<Index>((i + n - offsets[c]) % n)) = x[c];
      }
    return FittingMatrix{g, b, FittingVariant::UnitDiagonal};
  };
  auto consider = [&](const std::vector<GaussianRational>& x) {
    FittingMatrix fm = build(x);
    const std::size_t r = verify_fitting(fm);
    ++out.candidates;
    if (!out.best || r < out.best_rank) {
      out.best_rank = r;
      out.best = std::move(fm);
    }
  };

  if (offsets.empty()) {
    consider({});
  } else if (offsets.size() == 1) {
    for (const auto& v : values) consider({v});
  } else if (offsets.size() == 2) {
    for (const auto& v : values)
      for (const auto& w : values) consider({v, w});
  } else {
    for (const auto& v : values) consider(std::vector<GaussianRational>(offsets.size(), v));
  }
  return out;
}

std::optional<std::vector<ExactVector>> find_orthogonal_representation(const Graph& g, std::size_t k,
                                                                      std::size_t node_budget) {
  const std::size_t n = g.order();
  if (k == 0) return std::nullopt;
  const auto kk = static_cast<Index>(k);
  std::vector<ExactVector> psi(n);
  std::size_t nodes = 0;

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    if (++nodes > node_budget) return false;
    std::vector<std::size_t> constraints;
    for (std::size_t j = 0; j < i; ++j)
      if (!g.adjacent(i, j)) constraints.push_back(j);
    ExactMatrix null;
    if (constraints.empty()) {
      null = exact_identity(kk);
    } else {
      ExactMatrix rows(static_cast<Index>(constraints.size()), kk);
      for (std::size_t r = 0; r < constraints.size(); ++r) rows.row(static_cast<Index>(r)) = conj_transpose(psi[constraints[r]]);
      null = nullspace(rows);
    }
    const Index r = null.cols();
    if (r == 0) return false;
    std::vector<ExactVector> candidates;
    // Earlier vectors that already fit are reused first: they keep the span small.
    for (std::size_t j = 0; j < i; ++j) {
      bool fits = true;
      for (std::size_t c : constraints) fits = fits && psi[c].dot(psi[j]).is_zero();
      if (fits && !is_zero(psi[j])) candidates.push_back(psi[j]);
    }
    // The first vertex is placed at e_1 without loss of generality.
    const Index singles = (i == 0) ? 1 : r;
    for (Index a = 0; a < singles; ++a) candidates.push_back(null.col(a));
    if (i > 0)
      for (Index a = 0; a < r; ++a)
        for (Index b = a + 1; b < r; ++b) {
          candidates.push_back(null.col(a) + null.col(b));
          candidates.push_back(null.col(a) - null.col(b));
          candidates.push_back(null.col(a) + GaussianRational::i() * null.col(b));
        }
    std::vector<ExactVector> unique;
    for (auto& c : candidates)
      if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(std::move(c));
    for (const auto& c : unique) {
      psi[i] = c;
      if (place(i + 1)) return true;
      if (nodes > node_budget) return false;
    }
    return false;
  };

  if (!place(0)) return std::nullopt;
  orthogonal_rank_verify(g, psi);
  return psi;
}

TinyHaemersResult haemers_exact_tiny(const Graph& g, std::size_t k_cap, FittingVariant variant,
                                     const GroebnerLimits& limits) {
  const std::size_t n = g.order();
  if (n > 6) throw std::invalid_argument("haemers_exact_tiny: n must be <= 6");
  TinyHaemersResult out;
  out.status = "above-cap";
  if (n == 0) {
    out.value = 0;
    out.status = "exact";
    return out;
  }
  for (std::size_t k = independence_number(g); k <= k_cap; ++k) {
    if (k >= n) {
      // B = I fits every graph.
      out.steps.emplace_back(k, IdealStatus::HasCommonRootOrUnknown);
      out.value = k;
      out.status = "exact";
      return out;
    }
    const PolynomialSystem sys = encode_fitting_rank(g, k, variant);
    const IdealDecision d = buchberger(sys.polys, limits);
    out.steps.emplace_back(k, d.status);
    if (d.status == IdealStatus::NoCommonRoot) continue;
    if (d.status == IdealStatus::Timeout) {
      out.status = "unknown";
      return out;
    }
    // A completed basis without a constant means a common root over C.
    out.value = k;
    out.status = "exact";
    return out;
  }
  return out;
}

std::size_t ceil_sqrt(std::size_t a) {
  std::size_t r = 0;
  while (r * r < a) ++r;
  return r;
}

GraphBounds bounds_report(const Graph& g, const GraphBoundsOptions& options) {
  GraphBounds out;
  const std::size_t n = g.order();
  out.alpha = independence_number(g);
  out.theta = lovasz_theta(g, options.theta);

  out.haemers_lower = out.alpha;
  out.haemers_lower_reason = "alpha";
  if (n * n <= kDefaultIndependenceCap && n > 0) {
    const std::size_t a2 = independence_number(strong_power(g, 2));
    const std::size_t r = ceil_sqrt(a2);
    if (r > out.haemers_lower) {
      out.haemers_lower = r;
      out.haemers_lower_reason = "ceil(sqrt(alpha(G^2)))";
    }
  }

  out.upper_witness = clique_cover_fitting(g);
  out.haemers_upper = verify_fitting(out.upper_witness);
  out.haemers_upper_reason = "clique cover";
  if (is_circulant(g) && n <= 16) {
    const CirculantSweepResult sweep = circulant_sweep(g);
    if (sweep.best && sweep.best_rank < out.haemers_upper) {
      out.haemers_upper = sweep.best_rank;
      out.upper_witness = *sweep.best;
      out.haemers_upper_reason = "circulant sweep";
    }
  }

  // Standard basis is always an orthogonal representation in C^n.
  out.xi_upper = n;
  out.xi_witness.clear();
  for (std::size_t i = 0; i < n; ++i) {
    ExactVector e = ExactVector::Constant(static_cast<Index>(n), GaussianRational(0));
    e(static_cast<Index>(i)) = 1;
    out.xi_witness.push_back(e);
  }
  for (std::size_t k = std::max<std::size_t>(out.haemers_lower, 1); k < n; ++k) {
    if (auto rep = find_orthogonal_representation(g, k, options.representation_budget)) {
      out.xi_upper = k;
      out.xi_witness = *rep;
      break;
    }
  }
  if (out.xi_upper < out.haemers_upper) {
    out.upper_witness = fitting_from_representation(g, out.xi_witness);
    out.haemers_upper = verify_fitting(out.upper_witness);
    out.haemers_upper_reason = "orthogonal representation";
  }

  if (options.use_exact_engine && n <= 6 && out.haemers_lower < out.haemers_upper) {
    const TinyHaemersResult exact = haemers_exact_tiny(g, out.haemers_upper - 1, FittingVariant::NonzeroDiagonal,
                                                       options.engine_limits);
    // Every k below the upper bound was refuted: the bound is tight.
    if (exact.status == "above-cap") {
      out.haemers_lower = out.haemers_upper;
      out.haemers_lower_reason = "exact engine";
    }
  }

  const std::size_t reverified = verify_fitting(out.upper_witness);
  out.consistent = reverified == out.haemers_upper && out.alpha <= out.haemers_lower &&
                   out.haemers_lower <= out.haemers_upper && out.haemers_upper <= out.xi_upper &&
                   static_cast<double>(out.alpha) <= out.theta.value + 1e-6 &&
                   orthogonal_rank_verify(g, out.xi_witness) == out.xi_upper;
  return out;
}

}  // namespace ncb
