#include <random>
#include <sstream>

#include "cert_oracles.hpp"
#include "doctest.h"
#include "graph_oracles.hpp"
#include "nc_oracles.hpp"
#include "ncb/io/serialize.hpp"

using namespace ncb;
using ncb::testing::random_graph;

namespace {

template <typename T>
T round_trip(const T& x) {
  return json::parse(json(x).dump()).get<T>();
}

}  // namespace

TEST_CASE("matrix and scalar round trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    ExactMatrix a = testing::random_matrix(rng, 1 + t % 3, 1 + t % 4);
    a(0, 0) = GaussianRational(Rational(-7, 3), Rational(5, 11));
    CHECK(matrix_from_json(json::parse(matrix_to_json(a).dump())) == a);
  }
  const json j = json::parse(R"([["1/2-3/4*i", 2], ["i", "-i"]])");
  const ExactMatrix m = matrix_from_json(j);
  CHECK(m(0, 0) == GaussianRational(Rational(1, 2), Rational(-3, 4)));
  CHECK(m(0, 1) == GaussianRational(2));
  CHECK(m(1, 0) == GaussianRational(0, 1));
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([["1", "2"], ["3"]])")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([[1.5]])")), FormatError);
}

TEST_CASE("graph round trip and 1-based edges") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_graph(rng, 1 + t % 8, 0.5);
    CHECK(round_trip(g) == g);
  }
  const json c5 = cycle_graph(5);
  CHECK(c5["edges"][0] == json::array({1, 2}));
  CHECK_THROWS_AS(json::parse(R"({"n": 2, "edges": [[0, 1]]})").get<Graph>(), FormatError);
  CHECK_THROWS_AS(json::parse(R"({"edges": []})").get<Graph>(), FormatError);
}

TEST_CASE("noncommutative graph and channel round trip") {
  for (const NcGraph& s : {scalar_system(2), diagonal_system(3), full_system(2), s_gamma_system(Rational(1, 4)),
                           from_graph(cycle_graph(5))})
    CHECK(round_trip(s) == s);
  CHECK_THROWS_AS(json::parse(R"({"n": 2, "basis": [[["1"]]]})").get<NcGraph>(), FormatError);

  QuantumChannel ch{2, 2, {exact_identity(2)}};
  const QuantumChannel back = round_trip(ch);
  CHECK(back.n_in == 2);
  CHECK(back.n_out == 2);
  REQUIRE(back.kraus.size() == 1);
  CHECK(back.kraus[0] == exact_identity(2));

  ClassicalChannel cc;
  cc.inputs = 2;
  cc.outputs = 2;
  cc.probs = RationalMatrix(2, 2);
  cc.probs << Rational(1, 3), Rational(0), Rational(2, 3), Rational(1);
  const ClassicalChannel cb = round_trip(cc);
  CHECK(cb.inputs == 2);
  CHECK(cb.probs == cc.probs);
  CHECK(from_classical_channel(cb) == from_classical_channel(cc));
}

TEST_CASE("independent system, fitting matrix and certificates round trip") {
  IndependentSystem sys{2, {}};
  ExactVector v(2);
  v << GaussianRational(1), GaussianRational(Rational(1, 2), Rational(-1));
  sys.vectors.push_back(v);
  CHECK(round_trip(sys) == sys);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const FittingMatrix f = testing::random_fitting(rng, random_graph(rng, 2 + t % 4, 0.5));
    CHECK(round_trip(f) == f);
    const auto inst = testing::random_instance(rng);
    CHECK(round_trip(inst.cert) == inst.cert);
    const TpMapCertificate tp = to_tp_map(inst.s, inst.cert);
    const TpMapCertificate tb = round_trip(tp);
    CHECK(tb.n == tp.n);
    CHECK(tb.k == tp.k);
    CHECK(tb.e == tp.e);
    CHECK(tb.f == tp.f);
  }
  json bad = testing::full_certificate(2);
  bad["k"] = 3;
  CHECK_THROWS_AS(bad.get<HaemersCertificate>(), FormatError);
}

TEST_CASE("config parsing") {
  std::istringstream in("# caps\ngraph-n-cap = 40\nsdp-tol=1e-6  # tighter\n\nm-cap = 9\ngroebner-budget=5\n");
  const Config c = parse_config(in);
  CHECK(c.graph_n_cap == 40);
  CHECK(c.sdp_tol == doctest::Approx(1e-6));
  CHECK(c.m_cap == 9);
  CHECK(c.groebner_budget == doctest::Approx(5));
  std::istringstream unknown("colour = blue\n"), junk("graph-n-cap\n"), value("m-cap = x\n");
  CHECK_THROWS_AS(parse_config(unknown), FormatError);
  CHECK_THROWS_AS(parse_config(junk), FormatError);
  CHECK_THROWS_AS(parse_config(value), FormatError);
}

TEST_CASE("bounds report json") {
  BoundsReport r{"c5", {{"alpha", "2", "exact", ""}, {"theta", "2.2361", "numeric±1e-07", ""}}, true};
  const json j = r;
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["provenance"] == "numeric±1e-07");
  CHECK(j["consistent"] == true);
  CHECK(to_text(r).find("alpha = 2") != std::string::npos);
}
