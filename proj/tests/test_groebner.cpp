#include <random>

#include "doctest.h"
#include "ncb/groebner/encoding.hpp"
#include "ncb/groebner/groebner.hpp"

using namespace ncb;

namespace {

Polynomial P(const char* text, std::size_t nvars) { return Polynomial::parse(text, nvars); }

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
  Rational out = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < p.num_vars(); ++i)
      for (int e = 0; e < t.mono.exp[i]; ++e) v *= point[i];
    out += v;
  }
  return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.leading().mono, g.leading().mono);
  return f.times_term(quotient(l, f.leading().mono), 1 / f.leading().coeff) -
         g.times_term(quotient(l, g.leading().mono), 1 / g.leading().coeff);
}

// Independent check that `basis` is a Groebner basis of the ideal of `gens`.
void check_groebner_basis(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& basis) {
  for (const auto& g : gens) CHECK(normal_form(g, basis).is_zero());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) CHECK(normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero());
}

}  // namespace

TEST_CASE("polynomial text format") {
  const Polynomial p = P("x1^2*x3 - 3/4*x2 + 1", 3);
  CHECK(p.to_string() == "x1^2*x3 - 3/4*x2 + 1");
  CHECK(Polynomial::parse(p.to_string(), 3) == p);
  CHECK(P("x2 + x1", 2).to_string() == "x1 + x2");
  CHECK(P("-x1*x1 + 2*x1^2", 1).to_string() == "x1^2");
  CHECK(P("x1 - x1", 1).is_zero());
  CHECK(P("0", 2).to_string() == "0");
  CHECK(P(" - 1/2 * x2 ", 2).to_string() == "-1/2*x2");
  // Degrevlex: x1*x3 < x2^2 since the last variable breaks the tie.
  CHECK(P("x1*x3 + x2^2", 3).to_string() == "x2^2 + x1*x3");
  CHECK(P("x1*x3 + x2^2", 3).with_order(MonomialOrder::Lex).to_string() == "x1*x3 + x2^2");

  CHECK_THROWS_AS(P("x4", 3), std::invalid_argument);
  CHECK_THROWS_AS(P("x1 +", 3), std::invalid_argument);
  CHECK_THROWS_AS(P("2*i", 3), std::invalid_argument);
  CHECK_THROWS_AS(P("y1", 3), std::invalid_argument);
  CHECK_THROWS_AS(P("1/0", 3), std::invalid_argument);

  const std::vector<Polynomial> sys{P("x1*x2 - 1", 2), P("x1", 2)};
  CHECK(read_polynomial_system("# comment\n" + write_polynomial_system(sys) + "\n", 2) == sys);
}

TEST_CASE("polynomial arithmetic") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-3, 3);
  auto random_poly = [&] {
    Polynomial p(3);
    for (int t = 0; t < 5; ++t) {
      Monomial m;
      for (std::size_t v = 0; v < 3; ++v) {
        m.exp[v] = static_cast<std::uint8_t>(std::abs(d(rng)) % 3);
        m.degree += m.exp[v];
      }
      p.add_term(m, d(rng));
    }
    return p;
  };
  const std::vector<Rational> point{Rational(1, 2), Rational(-2), Rational(3, 7)};
  for (int t = 0; t < 30; ++t) {
    const Polynomial a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(evaluate(a * b, point) == evaluate(a, point) * evaluate(b, point));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("worked examples") {
  {
    const std::vector<Polynomial> g{P("x1^2", 1), P("x1 + 1", 1)};
    const IdealDecision r = buchberger(g);
    CHECK(r.status == IdealStatus::NoCommonRoot);
    REQUIRE(r.certificate.has_value());
    CHECK(verify_cofactors(g, *r.certificate));
  }
  {
    const std::vector<Polynomial> g{P("x1*x2 - 1", 2), P("x1", 2)};
    const IdealDecision r = buchberger(g);
    CHECK(r.status == IdealStatus::NoCommonRoot);
    REQUIRE(r.certificate.has_value());
    CHECK(verify_cofactors(g, *r.certificate));
  }
  {
    const std::vector<Polynomial> g{P("x1 - 1", 1)};
    const IdealDecision r = buchberger(g);
    CHECK(r.status == IdealStatus::HasCommonRootOrUnknown);
    CHECK_FALSE(r.certificate.has_value());
    REQUIRE(r.basis.size() == 1);
    CHECK(r.basis[0] == g[0]);
  }
  CHECK(buchberger({P("3", 2)}).status == IdealStatus::NoCommonRoot);
  CHECK_THROWS_AS(buchberger({}), std::invalid_argument);
  CHECK_THROWS_AS(buchberger({P("x1", 1), P("x1", 2)}), std::invalid_argument);
}

TEST_CASE("known bases") {
  // Circle meets diagonal: reduced basis {x1 - x2, x2^2 - 1/2}.
  const std::vector<Polynomial> g{P("x1^2 + x2^2 - 1", 2), P("x1 - x2", 2)};
  const IdealDecision r = buchberger(g);
  CHECK(r.status == IdealStatus::HasCommonRootOrUnknown);
  REQUIRE(r.basis.size() == 2);
  CHECK(r.basis[0].to_string() == "x1 - x2");
  CHECK(r.basis[1].to_string() == "x2^2 - 1/2");
  check_groebner_basis(g, r.basis);

  // Twisted cubic.
  const std::vector<Polynomial> tc{P("x1^2 - x2", 3), P("x1^3 - x3", 3)};
  const IdealDecision t = buchberger(tc);
  CHECK(t.status == IdealStatus::HasCommonRootOrUnknown);
  check_groebner_basis(tc, t.basis);
  for (const auto& b : t.basis) CHECK(evaluate(b, {Rational(2), Rational(4), Rational(8)}) == 0);
}

TEST_CASE("randomized soundness") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t nv = 2 + static_cast<std::size_t>(t % 3);
    std::vector<Rational> root(nv);
    for (auto& r : root) r = d(rng);
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) {
      Polynomial p(nv);
      for (int s = 0; s < 4; ++s) {
        Monomial m;
        for (std::size_t v = 0; v < nv; ++v) {
          m.exp[v] = static_cast<std::uint8_t>(std::abs(d(rng)) % 2);
          m.degree += m.exp[v];
        }
        p.add_term(m, d(rng));
      }
      // Shift so the planted root is a common zero.
      p -= Polynomial::constant(nv, evaluate(p, root));
      gens.push_back(p);
    }
    const bool planted = t % 2 == 0;
    if (!planted) {
      // x1 - r and x1 - r - 1 are incompatible.
      gens.push_back(Polynomial::variable(nv, 0) - Polynomial::constant(nv, root[0]));
      gens.push_back(Polynomial::variable(nv, 0) - Polynomial::constant(nv, root[0] + 1));
    }
    const IdealDecision r = buchberger(gens);
    CAPTURE(t);
    if (planted) {
      CHECK(r.status != IdealStatus::NoCommonRoot);
      if (r.status == IdealStatus::HasCommonRootOrUnknown) {
        check_groebner_basis(gens, r.basis);
        for (const auto& b : r.basis) CHECK(evaluate(b, root) == 0);
      }
    } else {
      REQUIRE(r.status == IdealStatus::NoCommonRoot);
      CHECK(verify_cofactors(gens, *r.certificate));
    }
  }
}

TEST_CASE("limits and determinism") {
  // Coprime leading monomials: already a basis, no degree is ever needed.
  CHECK(buchberger({P("x1^5 - x2", 2), P("x2^5 - x1", 2)}, {.max_pairs = 1000, .max_degree = 2, .time_budget_seconds = 60})
            .status == IdealStatus::HasCommonRootOrUnknown);
  const std::vector<Polynomial> g{P("x1^2*x2 - 1", 2), P("x1*x2^2 - 1", 2)};
  // Degree cap below the only S-pair (lcm degree 4): cannot conclude anything.
  CHECK(buchberger(g, {.max_pairs = 1000, .max_degree = 3, .time_budget_seconds = 60}).status == IdealStatus::Timeout);
  CHECK(buchberger(g, {.max_pairs = 0, .max_degree = 8, .time_budget_seconds = 60}).status == IdealStatus::Timeout);
  const std::vector<Polynomial> h{P("x1^2 + x2^2 - 1", 2), P("x1*x2 - 2", 2), P("x1 + x2 - 1", 2)};
  const IdealDecision a = buchberger(h), b = buchberger(h);
  CHECK(a.status == b.status);
  CHECK(a.basis == b.basis);
  CHECK(a.pairs_processed == b.pairs_processed);
}

TEST_CASE("rank feasibility encodings: counts") {
  const PolynomialSystem ci = encode_rank_feasibility(scalar_system(2), 1, 1, RankEncoding::Factor);
  CHECK(ci.num_vars == 8);
  // Annihilator of C I_2: B12, B21, B11 - B22 (3 complex forms, 6 real).
  CHECK(ci.membership_count == 6);
  // Trace: B11 - 1, B22 - 1 survive; B12 = 0 and B21 = 0 repeat membership.
  CHECK(ci.trace_count == 4);
  CHECK(ci.polys.size() == 10);

  const PolynomialSystem full = encode_rank_feasibility(full_system(2), 1, 1, RankEncoding::Factor);
  CHECK(full.membership_count == 0);
  CHECK(full.trace_count == 8);

  // M_2 with m = 1: a 2x2 B and k = 1 give one complex minor.
  const PolynomialSystem minor = encode_rank_feasibility(full_system(2), 1, 1, RankEncoding::Minor);
  CHECK(minor.minor_count == 2);
  CHECK(minor.num_vars == 8);

  CHECK_THROWS_AS(encode_rank_feasibility(full_system(3), 2, 2, RankEncoding::Factor), EncodingTooLarge);
  CHECK_THROWS_AS(encode_rank_feasibility(full_system(2), 0, 1, RankEncoding::Factor), std::invalid_argument);
}

TEST_CASE("rank feasibility encodings vanish at feasible points") {
  // B = u u^dagger with u = e1 (+) e2 is feasible for M_2, k = 1, m = 2:
  // C = D = (1, 0, 0, 1).
  const PolynomialSystem sys = encode_rank_feasibility(full_system(2), 1, 2, RankEncoding::Factor);
  std::vector<Rational> point(sys.num_vars, Rational(0));
  for (std::size_t off : {0u, 8u}) {
    point[off + 0] = 1;  // Re entry 1
    point[off + 6] = 1;  // Re entry 4
  }
  for (const auto& p : sys.polys) CHECK(evaluate(p, point) == 0);
  // Perturbing one coordinate breaks the trace condition.
  point[0] = 2;
  bool some_nonzero = false;
  for (const auto& p : sys.polys) some_nonzero |= evaluate(p, point) != 0;
  CHECK(some_nonzero);

  // B = I_2 for S_2 in the minor encoding at k = 2 (no minors): y picks I.
  const NcGraph s2 = s_n_system(2);
  const PolynomialSystem m2 = encode_rank_feasibility(s2, 2, 1, RankEncoding::Minor);
  CHECK(m2.minor_count == 0);
  std::vector<Rational> y(m2.num_vars, Rational(0));
  // Canonical rows of S_2: (1,0,0,1) = I_2, then |1><2| and |2><1|.
  REQUIRE(s2.basis_element(0) == exact_identity(2));
  y[0] = 1;
  for (const auto& p : m2.polys) CHECK(evaluate(p, y) == 0);
}

TEST_CASE("fitting encodings") {
  // Path 1-2-3: [[1,1,0],[1/2,1,1/2],[0,1,1]] has middle row = (row1 + row3) / 2.
  const Graph p3 = path_graph(3);
  const PolynomialSystem unit = encode_fitting_rank(p3, 2, FittingVariant::UnitDiagonal);
  CHECK(unit.num_vars == 4);
  CHECK(unit.minor_count == 1);
  // Variables B12, B21, B23, B32.
  CHECK(evaluate(unit.polys[0], {Rational(1), Rational(1, 2), Rational(1, 2), Rational(1)}) == 0);
  CHECK(evaluate(unit.polys[0], {1, 1, 1, 1}) != 0);
  const PolynomialSystem nz = encode_fitting_rank(p3, 2, FittingVariant::NonzeroDiagonal);
  CHECK(nz.num_vars == 3 + 4 + 3);
  CHECK(nz.other_count == 3);

  CHECK(buchberger(encode_fitting_rank(p3, 1, FittingVariant::NonzeroDiagonal).polys).status ==
        IdealStatus::NoCommonRoot);
  CHECK(buchberger(encode_fitting_rank(p3, 2, FittingVariant::NonzeroDiagonal).polys).status ==
        IdealStatus::HasCommonRootOrUnknown);
  CHECK(buchberger(encode_fitting_rank(empty_graph(3), 2, FittingVariant::NonzeroDiagonal).polys).status ==
        IdealStatus::NoCommonRoot);
}

TEST_CASE("decision on the small noncommutative instances") {
  for (std::size_t m : {1u, 2u}) {
    for (const NcGraph& s : {scalar_system(2), diagonal_system(2)}) {
      for (RankEncoding enc : {RankEncoding::Factor, RankEncoding::Minor}) {
        const PolynomialSystem sys = encode_rank_feasibility(s, 1, m, enc);
        const IdealDecision r = buchberger(sys.polys);
        CHECK(r.status == IdealStatus::NoCommonRoot);
        REQUIRE(r.certificate.has_value());
        CHECK(verify_cofactors(sys.polys, *r.certificate));
      }
    }
  }
  const IdealDecision full = buchberger(encode_rank_feasibility(full_system(2), 1, 2, RankEncoding::Factor).polys);
  CHECK(full.status == IdealStatus::HasCommonRootOrUnknown);
  // m = 1 is too small for M_2 at k = 1: rank-1 B cannot equal I_2.
  CHECK(buchberger(encode_rank_feasibility(full_system(2), 1, 1, RankEncoding::Factor).polys).status ==
        IdealStatus::NoCommonRoot);
}
