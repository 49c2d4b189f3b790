#include "ncb/io/serialize.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace ncb {

using Eigen::Index;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

GaussianRational scalar_from_json(const json& j) {
  if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
  if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
  throw FormatError("scalars must be strings such as \"1/2-3/4*i\"");
}

std::vector<ExactMatrix> matrices_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of matrices");
  std::vector<ExactMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json matrices_to_json(const std::vector<ExactMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

void require_shape(const ExactMatrix& a, std::size_t rows, std::size_t cols, const std::string& what) {
  if (a.rows() != static_cast<Index>(rows) || a.cols() != static_cast<Index>(cols))
    throw FormatError(what + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

json matrix_to_json(const ExactMatrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("a matrix must be an array of rows");
  const auto rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j[0].size()) : 0;
  ExactMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw FormatError("matrix rows differ in length");
    for (Index c = 0; c < cols; ++c) out(i, c) = scalar_from_json(row[static_cast<std::size_t>(c)]);
  }
  return out;
}

json vector_to_json(const ExactVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).to_string());
  return out;
}

ExactVector vector_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("a vector must be an array of scalars");
  ExactVector out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Index>(i)) = scalar_from_json(j[i]);
  return out;
}

void to_json(json& j, const Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  j = {{"n", g.order()}, {"edges", edges}};
}

void from_json(const json& j, Graph& g) {
  const std::size_t n = count_field(j, "n");
  Graph out(n);
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edges are pairs [i, j]");
    const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a < 1 || b < 1 || a > n || b > n) throw FormatError("edge endpoint out of range");
    out.add_edge(a - 1, b - 1);
  }
  g = std::move(out);
}

void to_json(json& j, const NcGraph& s) { j = {{"n", s.n()}, {"basis", matrices_to_json(s.basis())}}; }

void from_json(const json& j, NcGraph& s) {
  const std::size_t n = count_field(j, "n");
  const auto basis = matrices_from_json(field(j, "basis"));
  for (const auto& b : basis) require_shape(b, n, n, "basis elements");
  s = span_from_generators(n, basis);
}

void to_json(json& j, const QuantumChannel& c) {
  j = {{"n_in", c.n_in}, {"n_out", c.n_out}, {"kraus", matrices_to_json(c.kraus)}};
}

void from_json(const json& j, QuantumChannel& c) {
  c.n_in = count_field(j, "n_in");
  c.n_out = count_field(j, "n_out");
  c.kraus = matrices_from_json(field(j, "kraus"));
}

void to_json(json& j, const ClassicalChannel& c) {
  json probs = json::array();
  for (Index y = 0; y < c.probs.rows(); ++y) {
    json row = json::array();
    for (Index x = 0; x < c.probs.cols(); ++x) row.push_back(c.probs(y, x).get_str());
    probs.push_back(std::move(row));
  }
  j = {{"inputs", c.inputs}, {"outputs", c.outputs}, {"probs", probs}};
}

void from_json(const json& j, ClassicalChannel& c) {
  c.inputs = count_field(j, "inputs");
  c.outputs = count_field(j, "outputs");
  const ExactMatrix p = matrix_from_json(field(j, "probs"));
  require_shape(p, c.outputs, c.inputs, "probs");
  c.probs = RationalMatrix(p.rows(), p.cols());
  for (Index y = 0; y < p.rows(); ++y)
    for (Index x = 0; x < p.cols(); ++x) {
      if (sgn(p(y, x).imag()) != 0) throw FormatError("probabilities must be real");
      c.probs(y, x) = p(y, x).real();
    }
}

void to_json(json& j, const IndependentSystem& s) {
  json vs = json::array();
  for (const auto& v : s.vectors) vs.push_back(vector_to_json(v));
  j = {{"n", s.n}, {"vectors", vs}};
}

void from_json(const json& j, IndependentSystem& s) {
  s.n = count_field(j, "n");
  s.vectors.clear();
  for (const auto& v : field(j, "vectors")) {
    s.vectors.push_back(vector_from_json(v));
    if (s.vectors.back().size() != static_cast<Index>(s.n)) throw FormatError("vectors must have length n");
  }
}

void to_json(json& j, const FittingMatrix& f) {
  j = {{"graph", f.graph}, {"variant", to_string(f.variant)}, {"B", matrix_to_json(f.b)}};
}

void from_json(const json& j, FittingMatrix& f) {
  f.graph = field(j, "graph").get<Graph>();
  f.variant = parse_fitting_variant(field(j, "variant").get<std::string>());
  f.b = matrix_from_json(field(j, "B"));
  require_shape(f.b, f.graph.order(), f.graph.order(), "B");
}

void to_json(json& j, const HaemersCertificate& c) {
  j = {{"n", c.n}, {"m", c.m}, {"k", c.k}, {"C", matrix_to_json(c.c)}, {"D", matrix_to_json(c.d)}};
}

void from_json(const json& j, HaemersCertificate& c) {
  c.n = count_field(j, "n");
  c.m = count_field(j, "m");
  c.k = count_field(j, "k");
  c.c = matrix_from_json(field(j, "C"));
  c.d = matrix_from_json(field(j, "D"));
  require_shape(c.c, c.k, c.m * c.n, "C");
  require_shape(c.d, c.k, c.m * c.n, "D");
}

void to_json(json& j, const TpMapCertificate& t) {
  j = {{"n", t.n}, {"k", t.k}, {"E", matrices_to_json(t.e)}, {"F", matrices_to_json(t.f)}};
}

void from_json(const json& j, TpMapCertificate& t) {
  t.n = count_field(j, "n");
  t.k = count_field(j, "k");
  t.e = matrices_from_json(field(j, "E"));
  t.f = matrices_from_json(field(j, "F"));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void to_json(json& j, const BoundsRow& r) {
  j = {{"name", r.name}, {"value", r.value}, {"provenance", r.provenance}};
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const BoundsReport& r) {
  j = {{"target", r.target}, {"rows", r.rows}, {"consistent", r.consistent}};
}

std::string to_text(const BoundsReport& r) {
  std::ostringstream out;
  out << r.target << '\n';
  for (const auto& row : r.rows) {
    out << "  " << row.name << " = " << row.value << "  [" << row.provenance << "]";
    if (!row.note.empty()) out << "  " << row.note;
    out << '\n';
  }
  out << "  sandwich: " << (r.consistent ? "consistent" : "INCONSISTENT") << '\n';
  return out.str();
}

Config parse_config(std::istream& in) {
  Config c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "graph-n-cap") c.graph_n_cap = std::stoul(value);
      else if (key == "sdp-tol") c.sdp_tol = std::stod(value);
      else if (key == "groebner-budget") c.groebner_budget = std::stod(value);
      else if (key == "m-cap") c.m_cap = std::stoul(value);
      else throw FormatError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const FormatError*>(&e)) throw;
      throw FormatError("config line " + std::to_string(line_no) + ": bad value '" + value + "'");
    }
  }
  return c;
}

Config read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_config(in);
}

}  // namespace ncb
