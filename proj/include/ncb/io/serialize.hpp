#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncb/haemers/classical.hpp"
#include "ncb/haemers/noncommutative.hpp"
#include "ncb/nc/independence.hpp"
#include "ncb/nc/ncgraph.hpp"

namespace ncb {

using json = nlohmann::json;

/// Malformed or inconsistent serialized input.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrices are arrays of rows of exact scalar strings.
json matrix_to_json(const ExactMatrix& a);
ExactMatrix matrix_from_json(const json& j);
json vector_to_json(const ExactVector& v);
ExactVector vector_from_json(const json& j);

// Graph: {"n": int, "edges": [[i, j], ...]} with 1-based vertices.
void to_json(json& j, const Graph& g);
void from_json(const json& j, Graph& g);
// NcGraph: {"n": int, "basis": [matrix, ...]}; parsing re-canonicalizes.
void to_json(json& j, const NcGraph& s);
void from_json(const json& j, NcGraph& s);
// {"n_in", "n_out", "kraus": [matrix, ...]}
void to_json(json& j, const QuantumChannel& c);
void from_json(const json& j, QuantumChannel& c);
// {"inputs", "outputs", "probs": outputs x inputs matrix of rationals}
void to_json(json& j, const ClassicalChannel& c);
void from_json(const json& j, ClassicalChannel& c);
// {"n", "vectors": [[scalar, ...], ...]}
void to_json(json& j, const IndependentSystem& s);
void from_json(const json& j, IndependentSystem& s);
// {"graph", "variant", "B"}
void to_json(json& j, const FittingMatrix& f);
void from_json(const json& j, FittingMatrix& f);
// {"n", "m", "k", "C", "D"}
void to_json(json& j, const HaemersCertificate& c);
void from_json(const json& j, HaemersCertificate& c);
// {"n", "k", "E": [matrix, ...], "F": [matrix, ...]}
void to_json(json& j, const TpMapCertificate& t);
void from_json(const json& j, TpMapCertificate& t);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

template <typename T>
T read_file_as(const std::string& path) {
  try {
    return read_json_file(path).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// One line of a bounds report; provenance is "exact", "certificate:<path>",
/// "certificate", "numeric+-<tol>" or "lower-bound".
struct BoundsRow {
  std::string name;
  std::string value;
  std::string provenance;
  std::string note;
};

struct BoundsReport {
  std::string target;
  std::vector<BoundsRow> rows;
  bool consistent = false;
};

void to_json(json& j, const BoundsRow& r);
void to_json(json& j, const BoundsReport& r);
std::string to_text(const BoundsReport& r);

/// Optional key=value configuration; '#' starts a comment.
struct Config {
  std::size_t graph_n_cap = kDefaultIndependenceCap;
  double sdp_tol = 1e-7;
  double groebner_budget = 60;
  std::size_t m_cap = 0;  // 0: n^4
};

Config parse_config(std::istream& in);
Config read_config_file(const std::string& path);

}  // namespace ncb
