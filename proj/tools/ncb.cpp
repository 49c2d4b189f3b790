// Command-line front end: graph bounds, noncommutative graph construction,
// Haemers certificates and their transformations.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "ncb/io/serialize.hpp"
#include "ncb/theta/theta.hpp"

using namespace ncb;

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

/// Bad input files or arguments detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failed exact verification; `diagnostic` goes to stderr as JSON.
class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(json diagnostic)
      : std::runtime_error(diagnostic.value("message", "verification failed")), diagnostic(std::move(diagnostic)) {}
  json diagnostic;
};

struct Globals {
  bool json_output = false;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string config_path;
  Config config;
};

Globals globals;

void emit(const json& j, const std::string& text) {
  if (globals.json_output) std::cout << j.dump(2) << '\n';
  else std::cout << text << '\n';
}

bool has_json_extension(const std::string& path) { return std::filesystem::path(path).extension() == ".json"; }

Graph read_graph(const std::string& path) {
  if (has_json_extension(path)) return read_file_as<Graph>(path);
  return read_dimacs_file(path);
}

NcGraph read_system(const std::string& path) {
  NcGraph s = read_file_as<NcGraph>(path);
  for (const auto& w : system_warnings(s)) std::cerr << "warning: " << w << '\n';
  return s;
}

json violation_json(const CertificateViolation& e) {
  json j = {{"error", "certificate violation"}, {"kind", to_string(e.kind)}, {"message", e.what()}};
  if (e.kind == CertificateViolation::Kind::Membership) j["block"] = {e.block_i + 1, e.block_j + 1};
  return j;
}

/// Writes the certificate, reads it back and verifies the file contents.
std::size_t write_and_reverify(const NcGraph& s, const HaemersCertificate& cert, const std::string& path) {
  write_json_file(path, json(cert));
  const HaemersCertificate back = read_file_as<HaemersCertificate>(path);
  try {
    return verify_certificate(s, back);
  } catch (const CertificateViolation& e) {
    json j = violation_json(e);
    j["file"] = path;
    throw VerificationFailure(j);
  }
}

/// Round-trips through JSON text so printed witnesses never rely on memory.
template <typename T>
T reparse(const T& x) {
  return json::parse(json(x).dump()).get<T>();
}

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

// graph ------------------------------------------------------------------

void graph_alpha(const std::string& file) {
  const Graph g = read_graph(file);
  const auto set = maximum_independent_set(g, globals.config.graph_n_cap);
  json vertices = json::array();
  std::string listed;
  for (std::size_t v : set) {
    vertices.push_back(v + 1);
    listed += (listed.empty() ? "" : " ") + std::to_string(v + 1);
  }
  emit({{"alpha", set.size()}, {"independent_set", vertices}, {"provenance", "exact"}},
       "alpha = " + std::to_string(set.size()) + "  (independent set: " + listed + ")");
}

void graph_theta(const std::string& file, double tol) {
  const Graph g = read_graph(file);
  ThetaOptions opts;
  opts.tol = tol > 0 ? tol : globals.config.sdp_tol;
  const SdpSolution sol = lovasz_theta(g, opts);
  std::ostringstream tol_text;
  tol_text << opts.tol;
  emit({{"theta", sol.value},
        {"duality_gap", sol.duality_gap},
        {"converged", sol.converged},
        {"iterations", sol.iterations},
        {"provenance", "numeric±" + tol_text.str()}},
       "theta = " + fixed(sol.value, 7) + "  (numeric±" + tol_text.str() + ", gap " + fixed(sol.duality_gap, 10) +
           (sol.converged ? "" : ", NOT converged") + ")");
}

void graph_power(const std::string& file, std::size_t k, const std::string& out_path) {
  const Graph p = strong_power(read_graph(file), k);
  if (!out_path.empty()) {
    if (has_json_extension(out_path)) {
      write_json_file(out_path, json(p));
    } else {
      std::ofstream out(out_path);
      write_dimacs(out, p);
    }
  }
  if (globals.json_output) {
    std::cout << json(p).dump(2) << '\n';
  } else if (out_path.empty()) {
    write_dimacs(std::cout, p);
  } else {
    std::cout << "wrote " << p.order() << " vertices, " << p.size() << " edges to " << out_path << '\n';
  }
}

void graph_report(const std::string& file, bool exact_engine, const std::string& cert_dir) {
  const Graph g = read_graph(file);
  if (g.order() > globals.config.graph_n_cap)
    throw CapExceeded("graph has " + std::to_string(g.order()) + " vertices, cap is " +
                      std::to_string(globals.config.graph_n_cap));
  GraphBoundsOptions opts;
  opts.theta.tol = globals.config.sdp_tol;
  opts.use_exact_engine = exact_engine;
  opts.engine_limits.time_budget_seconds = globals.config.groebner_budget;
  const GraphBounds b = bounds_report(g, opts);

  std::ostringstream tol_text;
  tol_text << opts.theta.tol;
  BoundsReport r;
  r.target = file;
  r.rows.push_back({"alpha", std::to_string(b.alpha), "exact", ""});
  r.rows.push_back({"theta", fixed(b.theta.value, 4), "numeric±" + tol_text.str(), ""});
  r.rows.push_back({"H-lower", std::to_string(b.haemers_lower), "lower-bound", b.haemers_lower_reason});

  // The upper witness is re-verified from its serialized form.
  std::string provenance = "certificate";
  FittingMatrix fm;
  if (!cert_dir.empty()) {
    std::filesystem::create_directories(cert_dir);
    const std::string path =
        (std::filesystem::path(cert_dir) / (std::filesystem::path(file).stem().string() + ".fitting.json")).string();
    write_json_file(path, json(b.upper_witness));
    fm = read_file_as<FittingMatrix>(path);
    provenance = "certificate:" + path;
  } else {
    fm = reparse(b.upper_witness);
  }
  std::size_t upper = 0;
  try {
    upper = verify_fitting(fm);
  } catch (const FittingViolation& e) {
    throw VerificationFailure({{"error", "fitting violation"},
                               {"message", e.what()},
                               {"entry", {e.row + 1, e.col + 1}}});
  }
  r.rows.push_back({"H-upper", std::to_string(upper), provenance, b.haemers_upper_reason});

  std::vector<ExactVector> xi;
  for (const auto& v : b.xi_witness) xi.push_back(vector_from_json(json::parse(vector_to_json(v).dump())));
  std::size_t xi_upper = 0;
  if (!xi.empty()) {
    xi_upper = orthogonal_rank_verify(g, xi);
    r.rows.push_back({"xi-upper", std::to_string(xi_upper), "certificate", "orthogonal representation"});
  }
  r.consistent = b.alpha <= b.haemers_lower && b.haemers_lower <= upper && (xi.empty() || upper <= xi_upper) &&
                 static_cast<double>(b.alpha) <= b.theta.value + 10 * opts.theta.tol;
  if (globals.json_output) {
    std::cout << json(r).dump(2) << '\n';
  } else {
    std::cout << to_text(r);
    std::cout << "alpha=" << b.alpha << ", theta~" << fixed(b.theta.value, 4) << ", H in [" << b.haemers_lower << ","
              << upper << "]\n";
  }
  if (!r.consistent) throw VerificationFailure({{"error", "sandwich ordering violated"}, {"report", json(r)}});
}

// nc ---------------------------------------------------------------------

struct BuildArgs {
  std::string graph, kraus, classical, basis, out;
};

void nc_build(const BuildArgs& a) {
  NcGraph s;
  if (!a.graph.empty()) s = from_graph(read_graph(a.graph));
  else if (!a.kraus.empty()) s = from_kraus(read_file_as<QuantumChannel>(a.kraus));
  else if (!a.classical.empty()) s = from_classical_channel(read_file_as<ClassicalChannel>(a.classical));
  else s = read_file_as<NcGraph>(a.basis);
  for (const auto& w : system_warnings(s)) std::cerr << "warning: " << w << '\n';
  if (!a.out.empty()) {
    write_json_file(a.out, json(s));
    if (!globals.json_output) {
      std::cout << "wrote noncommutative graph in M_" << s.n() << " of dimension " << s.dim() << " to " << a.out
                << '\n';
      return;
    }
  }
  std::cout << json(s).dump(2) << '\n';
}

struct HaemersArgs {
  std::string system;
  std::size_t k_max = 0;
  std::vector<std::size_t> m_schedule;
  double budget = 30;
  bool exact_tiny = false;
  std::string out;
};

std::string default_cert_path(const std::string& system_path) {
  std::filesystem::path p(system_path);
  return (p.parent_path() / (p.stem().string() + ".cert.json")).string();
}

void nc_haemers(const HaemersArgs& a) {
  const NcGraph s = read_system(a.system);
  AlphaSearchOptions alpha_opts;
  alpha_opts.seed = globals.seed;
  const HaemersLowerBound lb = haemers_lower(s, alpha_opts);
  std::string lower_reason;
  for (const auto& c : lb.contributions)
    if (c.value == lb.value) {
      lower_reason = c.reason;
      break;
    }

  HaemersSearchOptions opts;
  opts.m_schedule = a.m_schedule;
  opts.m_cap = globals.config.m_cap;
  opts.seed = globals.seed;
  opts.time_budget_seconds = a.budget;
  const std::size_t k_max = a.k_max ? a.k_max : std::max<std::size_t>(s.n(), lb.value);

  // Batches of `jobs` consecutive ranks run concurrently; the smallest
  // successful rank wins, so the answer does not depend on scheduling.
  std::optional<HaemersCertificate> best;
  for (std::size_t k = lb.value; k <= k_max && !best; k += globals.jobs) {
    std::vector<std::future<std::optional<HaemersCertificate>>> batch;
    for (std::size_t kk = k; kk < k + globals.jobs && kk <= k_max; ++kk)
      batch.push_back(std::async(std::launch::async, [&s, kk, opts] { return haemers_upper_search(s, kk, opts); }));
    for (auto& f : batch) {
      auto cert = f.get();
      if (cert && !best) best = std::move(cert);
    }
  }

  json steps = json::array();
  if (a.exact_tiny) {
    GroebnerLimits limits;
    limits.time_budget_seconds = globals.config.groebner_budget;
    const std::vector<std::size_t> ms = a.m_schedule.empty() ? std::vector<std::size_t>{1, 2} : a.m_schedule;
    const std::size_t top = best ? best->k : k_max + 1;
    for (std::size_t k = lb.value; k < top; ++k)
      for (std::size_t m : ms) {
        ExactDecision d;
        try {
          d = haemers_exact_decide(s, k, m, limits, RankEncoding::Factor, opts);
        } catch (const EncodingTooLarge& e) {
          steps.push_back({{"k", k}, {"m", m}, {"status", "too-large"}});
          continue;
        }
        steps.push_back({{"k", k}, {"m", m}, {"status", to_string(d.status)}});
        if (d.certificate && (!best || d.certificate->k < best->k)) best = d.certificate;
      }
  }

  json out = {{"lower", {{"value", lb.value}, {"reason", lower_reason}}}};
  std::ostringstream text;
  text << "H >= " << lb.value << " (" << lower_reason << ")";
  if (best) {
    const std::string path = a.out.empty() ? default_cert_path(a.system) : a.out;
    const std::size_t r = write_and_reverify(s, *best, path);
    out["upper"] = {{"value", r}, {"m", best->m}, {"k", best->k}, {"provenance", "certificate:" + path}};
    text << ", H <= " << r << " (certificate rank " << r << ", m=" << best->m << ")";
    if (!globals.json_output) text << "\ncertificate written to " << path;
  } else {
    out["upper"] = nullptr;
    text << ", no certificate found for k <= " << k_max;
  }
  if (!steps.empty()) {
    out["exact"] = steps;
    for (const auto& st : steps)
      text << "\n  exact k=" << st["k"].get<std::size_t>() << " m=" << st["m"].get<std::size_t>() << ": "
           << st["status"].get<std::string>();
  }
  emit(out, text.str());
}

void nc_verify_cert(const std::string& system_path, const std::string& cert_path) {
  const NcGraph s = read_system(system_path);
  const json j = read_json_file(cert_path);
  try {
    if (j.contains("E")) {
      const std::size_t k = verify_tp_map(s, j.get<TpMapCertificate>());
      emit({{"k", k}, {"ok", true}}, "trace-preserving map to M_" + std::to_string(k) + ", OK");
      return;
    }
    const HaemersCertificate cert = j.get<HaemersCertificate>();
    const std::size_t r = verify_certificate(s, cert);
    emit({{"rank", r}, {"m", cert.m}, {"ok", true}}, "rank " + std::to_string(r) + ", OK");
  } catch (const CertificateViolation& e) {
    throw VerificationFailure(violation_json(e));
  } catch (const json::exception& e) {
    throw FormatError(cert_path + ": " + e.what());
  }
}

// transform --------------------------------------------------------------

void report_derived(const NcGraph& s, const HaemersCertificate& cert, const std::string& out,
                    const std::string& system_out) {
  if (!system_out.empty()) write_json_file(system_out, json(s));
  if (out.empty()) {
    const std::size_t r = verify_certificate(s, reparse(cert));
    if (globals.json_output) std::cout << json(cert).dump(2) << '\n';
    else std::cout << json(cert).dump(2) << "\nrank " << r << ", m=" << cert.m << ", OK\n";
    return;
  }
  const std::size_t r = write_and_reverify(s, cert, out);
  emit({{"rank", r}, {"m", cert.m}, {"k", cert.k}, {"certificate", out}},
       "rank " + std::to_string(r) + ", m=" + std::to_string(cert.m) + ", OK  (written to " + out + ")");
}

std::vector<ExactMatrix> read_kraus(const std::string& path) {
  const json j = read_json_file(path);
  if (j.is_object()) return j.get<QuantumChannel>().kraus;
  std::vector<ExactMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

HaemersCertificate read_verified(const NcGraph& s, const std::string& path) {
  HaemersCertificate cert = read_file_as<HaemersCertificate>(path);
  try {
    verify_certificate(s, cert);
  } catch (const CertificateViolation& e) {
    json j = violation_json(e);
    j["file"] = path;
    throw VerificationFailure(j);
  }
  return cert;
}

void transform(const std::string& op, const std::vector<std::string>& args, const std::string& out,
               const std::string& system_out) {
  auto need = [&](std::size_t count, const char* usage) {
    if (args.size() != count) throw UsageError(std::string("usage: nc transform ") + op + " " + usage);
  };
  if (op == "tensor" || op == "dsum") {
    need(4, "<S.json> <certS.json> <T.json> <certT.json>");
    const NcGraph s = read_system(args[0]), t = read_system(args[2]);
    const HaemersCertificate c1 = read_verified(s, args[1]), c2 = read_verified(t, args[3]);
    if (op == "tensor") report_derived(tensor(s, t), tensor_certificate(s, c1, t, c2), out, system_out);
    else report_derived(direct_sum_nc(s, t), direct_sum_certificate(s, c1, t, c2), out, system_out);
  } else if (op == "conjugate") {
    need(3, "<S.json> <cert.json> <U.json>");
    const NcGraph s = read_system(args[0]);
    const ExactMatrix u = matrix_from_json(read_json_file(args[2]));
    if (!is_unitary(u)) throw UsageError(args[2] + ": matrix is not unitary");
    report_derived(conjugate_by_unitary(s, u), conjugate_certificate(s, read_verified(s, args[1]), u), out,
                   system_out);
  } else if (op == "cohom") {
    need(4, "<S.json> <T.json> <kraus.json> <certT.json>");
    const NcGraph s = read_system(args[0]), t = read_system(args[1]);
    const std::vector<ExactMatrix> kraus = read_kraus(args[2]);
    try {
      verify_cohomomorphism(s, t, kraus);
    } catch (const CohomomorphismViolation& e) {
      throw VerificationFailure({{"error", "cohomomorphism violation"},
                                 {"message", e.what()},
                                 {"kraus", {e.i + 1, e.j + 1}},
                                 {"basis_index", e.basis_index + 1}});
    } catch (const std::invalid_argument& e) {
      throw VerificationFailure({{"error", "cohomomorphism violation"}, {"message", e.what()}});
    }
    report_derived(s, cohomomorphism_apply(s, t, kraus, read_verified(t, args[3])), out, system_out);
  } else if (op == "lift") {
    need(1, "<fitting.json>");
    const FittingMatrix fm = read_file_as<FittingMatrix>(args[0]);
    try {
      verify_fitting(fm);
    } catch (const FittingViolation& e) {
      throw VerificationFailure(
          {{"error", "fitting violation"}, {"message", e.what()}, {"entry", {e.row + 1, e.col + 1}}});
    }
    report_derived(from_graph(fm.graph), lift_graph_certificate(fm), out, system_out);
  } else if (op == "project") {
    need(2, "<graph> <cert.json>");
    const Graph g = read_graph(args[0]);
    const FittingMatrix fm = project_to_graph_certificate(g, read_verified(from_graph(g), args[1]));
    if (!out.empty()) write_json_file(out, json(fm));
    const std::size_t r = verify_fitting(out.empty() ? reparse(fm) : read_file_as<FittingMatrix>(out));
    if (globals.json_output || out.empty()) std::cout << json(fm).dump(2) << '\n';
    if (!globals.json_output) std::cout << "fitting matrix rank " << r << ", OK\n";
  } else if (op == "tpmap") {
    need(2, "<S.json> <cert.json | tpmap.json>");
    const NcGraph s = read_system(args[0]);
    const json j = read_json_file(args[1]);
    if (j.contains("E")) {
      report_derived(s, from_tp_map(s, j.get<TpMapCertificate>()), out, system_out);
      return;
    }
    const TpMapCertificate tp = to_tp_map(s, read_verified(s, args[1]));
    if (!out.empty()) write_json_file(out, json(tp));
    const std::size_t k = verify_tp_map(s, out.empty() ? reparse(tp) : read_file_as<TpMapCertificate>(out));
    if (globals.json_output || out.empty()) std::cout << json(tp).dump(2) << '\n';
    if (!globals.json_output) std::cout << "trace-preserving map to M_" << k << ", OK\n";
  } else {
    throw UsageError("unknown transform '" + op + "'");
  }
}

int selftest(const std::vector<int>& ids) {
  std::vector<int> run = ids;
  if (run.empty())
    for (int id = 1; id <= acceptance::kCriterionCount; ++id) run.push_back(id);
  json results = json::array();
  bool all = true;
  for (int id : run) {
    if (id < 1 || id > acceptance::kCriterionCount) throw UsageError("no criterion " + std::to_string(id));
    const auto r = acceptance::run_criterion(id);
    all = all && r.pass;
    if (globals.json_output)
      results.push_back(
          {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    else std::cout << acceptance::format(r) << std::endl;
  }
  if (globals.json_output) std::cout << results.dump(2) << '\n';
  return all ? 0 : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haemers-type bounds for graphs and noncommutative graphs with exact certificates"};
  app.require_subcommand(1);
  app.add_flag("--json", globals.json_output, "Machine-readable output");
  app.add_option("--seed", globals.seed, "Seed for every randomized search")->capture_default_str();
  app.add_option("--jobs", globals.jobs, "Parallel searches")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--config", globals.config_path, "key=value file: graph-n-cap, sdp-tol, groebner-budget, m-cap")
      ->check(CLI::ExistingFile);

  std::function<int()> action;
  auto set = [&](auto f) {
    return [&action, f] {
      action = [f] {
        f();
        return 0;
      };
    };
  };

  // graph
  auto* graph = app.add_subcommand("graph", "Classical graph bounds")->require_subcommand(1);
  std::string graph_file, out_path, cert_dir;
  double tol = 0;
  std::size_t power_k = 2;
  bool exact_engine = false;
  auto* g_alpha = graph->add_subcommand("alpha", "Exact independence number");
  g_alpha->add_option("file", graph_file, "DIMACS or JSON graph")->required()->check(CLI::ExistingFile);
  g_alpha->callback(set([&] { graph_alpha(graph_file); }));
  auto* g_theta = graph->add_subcommand("theta", "Lovasz theta by interior point");
  g_theta->add_option("file", graph_file)->required()->check(CLI::ExistingFile);
  g_theta->add_option("--tol", tol, "Feasibility and gap tolerance");
  g_theta->callback(set([&] { graph_theta(graph_file, tol); }));
  auto* g_power = graph->add_subcommand("power", "Strong power");
  g_power->add_option("file", graph_file)->required()->check(CLI::ExistingFile);
  g_power->add_option("-k", power_k, "Exponent")->required()->check(CLI::PositiveNumber);
  g_power->add_option("--out", out_path, "Output file (.json for JSON, DIMACS otherwise)");
  g_power->callback(set([&] { graph_power(graph_file, power_k, out_path); }));
  auto* g_report = graph->add_subcommand("report", "alpha, theta, Haemers and orthogonal-rank bounds");
  g_report->add_option("file", graph_file)->required()->check(CLI::ExistingFile);
  g_report->add_flag("--exact-engine", exact_engine, "Close the Haemers gap with Groebner bases (n <= 6)");
  g_report->add_option("--cert-dir", cert_dir, "Directory for the fitting-matrix certificate");
  g_report->callback(set([&] { graph_report(graph_file, exact_engine, cert_dir); }));

  // nc
  auto* nc = app.add_subcommand("nc", "Noncommutative graphs")->require_subcommand(1);
  BuildArgs build;
  auto* n_build = nc->add_subcommand("build", "Operator system from a graph, channel or basis");
  auto* src_graph = n_build->add_option("--from-graph", build.graph, "Graph file")->check(CLI::ExistingFile);
  auto* src_kraus = n_build->add_option("--from-kraus", build.kraus, "Quantum channel JSON")->check(CLI::ExistingFile);
  auto* src_class =
      n_build->add_option("--from-classical", build.classical, "Classical channel JSON")->check(CLI::ExistingFile);
  auto* src_basis = n_build->add_option("--from-basis", build.basis, "Spanning set JSON")->check(CLI::ExistingFile);
  n_build->add_option("--out", build.out, "Output file");
  for (auto* o : {src_graph, src_kraus, src_class, src_basis})
    for (auto* x : {src_graph, src_kraus, src_class, src_basis})
      if (o != x) o->excludes(x);
  n_build->callback([&] {
    if (build.graph.empty() && build.kraus.empty() && build.classical.empty() && build.basis.empty())
      throw CLI::RequiredError("one of --from-graph, --from-kraus, --from-classical, --from-basis");
    action = [&] {
      nc_build(build);
      return 0;
    };
  });

  HaemersArgs hargs;
  auto* n_haemers = nc->add_subcommand("haemers", "Verified Haemers upper bound and lower bound");
  n_haemers->add_option("system", hargs.system, "Noncommutative graph JSON")->required()->check(CLI::ExistingFile);
  n_haemers->add_option("--k-max", hargs.k_max, "Largest rank to search (default max(n, lower))");
  n_haemers->add_option("--m-schedule", hargs.m_schedule, "Block counts to try, e.g. 1,2,4")->delimiter(',');
  n_haemers->add_option("--budget", hargs.budget, "Seconds per rank")->capture_default_str();
  n_haemers->add_flag("--exact-tiny", hargs.exact_tiny, "Groebner decision below the found rank");
  n_haemers->add_option("--out", hargs.out, "Certificate path (default <system>.cert.json)");
  n_haemers->callback(set([&] { nc_haemers(hargs); }));

  std::string sys_path, cert_path;
  auto* n_verify = nc->add_subcommand("verify-cert", "Exact certificate check");
  n_verify->add_option("system", sys_path)->required()->check(CLI::ExistingFile);
  n_verify->add_option("certificate", cert_path)->required()->check(CLI::ExistingFile);
  n_verify->callback(set([&] { nc_verify_cert(sys_path, cert_path); }));

  std::string op, system_out;
  std::vector<std::string> targs;
  auto* n_transform = nc->add_subcommand("transform", "Derived certificates");
  n_transform->add_option("op", op, "tensor | dsum | conjugate | cohom | lift | project | tpmap")
      ->required()
      ->check(CLI::IsMember({"tensor", "dsum", "conjugate", "cohom", "lift", "project", "tpmap"}));
  n_transform->add_option("inputs", targs, "Input files")->check(CLI::ExistingFile);
  n_transform->add_option("--out", out_path, "Output file");
  n_transform->add_option("--system-out", system_out, "Also write the derived noncommutative graph");
  n_transform->callback(set([&] { transform(op, targs, out_path, system_out); }));

  // selftest
  std::string suite;
  std::vector<int> criteria;
  auto* st = app.add_subcommand("selftest", "Acceptance suite");
  st->add_option("suite", suite)->required()->check(CLI::IsMember({"paper"}));
  st->add_option("--criterion", criteria, "Run only these criteria (1-10)");
  st->callback([&] { action = [&] { return selftest(criteria); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (!globals.config_path.empty()) globals.config = read_config_file(globals.config_path);
    return action ? action() : kUsageError;
  } catch (const VerificationFailure& e) {
    std::cerr << e.diagnostic.dump() << '\n';
    return kVerificationFailed;
  } catch (const CertificateViolation& e) {
    std::cerr << violation_json(e).dump() << '\n';
    return kVerificationFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    // Malformed input files and arguments the library rejects.
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "failed"}, {"message", e.what()}}.dump() << '\n';
    return kVerificationFailed;
  }
}
