#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bjorth/acceptance.hpp"
#include "bjorth/report.hpp"

namespace {

using namespace bjorth;

struct RunConfig {
  std::string spec_path;
  std::string mode = "auto";  // auto | exact | sampled
  int samples = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> tol_overrides;
  std::string out_path;
  std::string dot_path;
  std::string csv_path;
  bool gamma0 = false;
  int pairs = 1000;
  std::string x_text, y_text;
  bool all = false;
};

Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  Tolerances tol;
  std::map<std::string, double*> keys = {
      {"orth_margin", &tol.orth_margin},
      {"functional_id", &tol.functional_id},
      {"fd_step", &tol.fd_step},
      {"fd_step_fine", &tol.fd_step_fine},
      {"fd_disagree", &tol.fd_disagree},
      {"kernel_angle", &tol.kernel_angle},
      {"seam", &tol.seam},
      {"radon_bisect_rel", &tol.radon_bisect_rel},
      {"antipodal_merge", &tol.antipodal_merge},
      {"flat_collinear", &tol.flat_collinear},
      {"unit_sample", &tol.unit_sample},
  };
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ContractError("--tol expects KEY=VALUE, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (key == "radon_bisect_max") {
      tol.radon_bisect_max = std::stoi(value);
      continue;
    }
    const auto it = keys.find(key);
    if (it == keys.end())
      throw ContractError("unknown tolerance key \"" + key + "\"");
    *it->second = std::stod(value);
  }
  return tol;
}

Json tolerances_json(const Tolerances& t) {
  return Json{{"orth_margin", t.orth_margin},
              {"functional_id", t.functional_id},
              {"fd_step", t.fd_step},
              {"fd_step_fine", t.fd_step_fine},
              {"fd_disagree", t.fd_disagree},
              {"kernel_angle", t.kernel_angle},
              {"seam", t.seam},
              {"radon_bisect_rel", t.radon_bisect_rel},
              {"radon_bisect_max", t.radon_bisect_max},
              {"antipodal_merge", t.antipodal_merge},
              {"flat_collinear", t.flat_collinear},
              {"unit_sample", t.unit_sample}};
}

/// JSON-lines sink: stdout by default, --out file otherwise.
class Reporter {
 public:
  explicit Reporter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ContractError("cannot open output file: " + path);
    }
  }
  void line(const Json& j) {
    (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout)
        << j.dump() << "\n";
  }

 private:
  std::ofstream file_;
};

Json base_record(const std::string& command, const RunConfig& cfg,
                 const NormPtr& norm, const Tolerances& tol) {
  Json j;
  j["command"] = command;
  if (norm) {
    j["spec"] = norm->label();
    j["exact_spec"] = norm->is_exact();
  }
  j["seed"] = cfg.seed;
  j["tolerances"] = tolerances_json(tol);
  return j;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Vec parse_vector(const std::string& text, const NormPtr& norm) {
  const auto tokens = split_commas(text);
  if (static_cast<int>(tokens.size()) != norm->dim()) {
    throw ContractError("vector \"" + text + "\" has " +
                        std::to_string(tokens.size()) + " coordinates, spec " +
                        norm->label() + " needs " +
                        std::to_string(norm->dim()));
  }
  if (norm->is_exact()) {
    RVec r;
    for (const std::string& t : tokens) r.push_back(parse_rational(t));
    return Vec::exact(std::move(r));
  }
  if (text.find('/') != std::string::npos) {
    throw ContractError(
        "rational literals require an exact (polyhedral) spec; pass decimals "
        "for numeric mode");
  }
  NVec v;
  for (const std::string& t : tokens) v.push_back(std::stod(t));
  return Vec::numeric(std::move(v));
}

OrthoDigraph::Mode resolve_mode(const RunConfig& cfg, const NormPtr& norm) {
  if (cfg.mode == "exact") {
    if (!norm->is_exact())
      throw ContractError("--mode exact requires an exact (polyhedral) spec");
    return OrthoDigraph::Mode::ExactQuotient;
  }
  if (cfg.mode == "sampled") return OrthoDigraph::Mode::Sampled;
  return norm->is_exact() ? OrthoDigraph::Mode::ExactQuotient
                          : OrthoDigraph::Mode::Sampled;
}

OrthoDigraph build_graph(const RunConfig& cfg, const NormPtr& norm,
                         const Tolerances& tol, bool gamma0) {
  const auto mode = resolve_mode(cfg, norm);
  const int count =
      mode == OrthoDigraph::Mode::Sampled ? cfg.samples : 0;
  return build_orthodigraph(norm, mode, gamma0, count, cfg.seed, tol);
}

int cmd_bj(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const Vec x = parse_vector(cfg.x_text, norm);
  const Vec y = parse_vector(cfg.y_text, norm);
  const OrthoVerdict verdict = is_bj_orthogonal(*norm, x, y, tol);
  Json j = base_record("bj", cfg, norm, tol);
  j["x"] = cfg.x_text;
  j["y"] = cfg.y_text;
  j["verdict"] = to_json(verdict);
  Reporter(cfg.out_path).line(j);
  return verdict.orthogonal ? 0 : 1;
}

int cmd_graph(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const OrthoDigraph graph = build_graph(cfg, norm, tol, cfg.gamma0);
  Json j = base_record("graph", cfg, norm, tol);
  j["mode"] = graph.mode == OrthoDigraph::Mode::ExactQuotient
                  ? "exact"
                  : "sampled";
  j["gamma0"] = graph.gamma0;
  j["vertices"] = static_cast<int>(graph.vertices.size());
  int edges = 0;
  for (const auto& row : graph.adj)
    for (bool e : row) edges += e ? 1 : 0;
  j["edges"] = edges;
  j["fingerprint"] = to_json(graph_fingerprint(graph));
  Reporter(cfg.out_path).line(j);
  if (!cfg.dot_path.empty()) {
    std::ofstream dot(cfg.dot_path);
    if (!dot) throw ContractError("cannot open DOT file: " + cfg.dot_path);
    dot << export_dot(graph);
  }
  return 0;
}

int cmd_dim(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const OrthoDigraph gamma0 = build_graph(cfg, norm, tol, true);
  const OrthoDigraph gamma = build_graph(cfg, norm, tol, false);
  const DimensionResult d0 = digraph_dimension(gamma0);
  const DimensionResult d = digraph_dimension(gamma);
  if (d0.dimension != d.dimension) {
    throw ContractError("Gamma_0 and Gamma dimension conventions disagree: " +
                        std::to_string(d0.dimension) + " vs " +
                        std::to_string(d.dimension));
  }
  Json j = base_record("dim", cfg, norm, tol);
  j["result"] = to_json(d);
  j["gamma0_dimension"] = d0.dimension;
  j["gamma_dimension"] = d.dimension;
  Reporter(cfg.out_path).line(j);
  return 0;
}

int cmd_smooth(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const OrthoDigraph graph = build_graph(cfg, norm, tol, false);
  const SmoothClassification cls =
      norm->dim() == 2 ? classify_smooth_vertices_2d(graph, tol)
                       : classify_smooth_vertices_nd(graph);
  Json j = base_record("smooth", cfg, norm, tol);
  j["result"] = to_json(cls);
  Json names = Json::array();
  for (int id : cls.smooth_ids) names.push_back(graph.vertices[id].name);
  j["smooth_names"] = names;
  Reporter(cfg.out_path).line(j);
  return 0;
}

int cmd_faces(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const OrthoDigraph graph = build_graph(cfg, norm, tol, false);
  const auto faces = find_maximal_faces(graph);
  Json j = base_record("faces", cfg, norm, tol);
  Json list = Json::array();
  for (const auto& f : faces) {
    Json names = Json::array();
    for (int id : f.vertex_ids) names.push_back(graph.vertices[id].name);
    list.push_back(Json{{"vertex_ids", f.vertex_ids},
                        {"vertex_names", names},
                        {"witness_class", f.witness_class}});
  }
  j["maximal_faces"] = list;
  j["count"] = static_cast<int>(faces.size());
  Reporter(cfg.out_path).line(j);
  return 0;
}

int cmd_recognize(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  const OrthoDigraph graph = build_graph(cfg, norm, tol, false);
  const SupNormVerdict verdict = recognize_sup_norm(graph, tol);
  Json j = base_record("recognize", cfg, norm, tol);
  j["result"] = to_json(verdict);
  j["sup_norm"] = verdict.is_sup_norm;
  j["count"] = verdict.smooth_neighborhood_count;
  j["dim"] = verdict.dimension;
  Reporter(cfg.out_path).line(j);
  return 0;
}

int cmd_radon(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  const NormPtr norm = parse_norm_spec_file(cfg.spec_path);
  Reporter reporter(cfg.out_path);

  Json sym = base_record("radon-symmetry", cfg, norm, tol);
  sym["result"] = to_json(verify_radon_symmetry(norm, cfg.pairs, cfg.seed,
                                                1e-6, tol));
  reporter.line(sym);

  Json pair = base_record("radon-mutual-pair", cfg, norm, tol);
  pair["result"] = to_json(find_mutual_pair_2d(norm, tol));
  reporter.line(pair);

  Json hilbert = base_record("radon-hilbert", cfg, norm, tol);
  hilbert["result"] =
      to_json(check_gamma0_hilbert_conditions_real(norm, 4096, tol));
  reporter.line(hilbert);

  if (!cfg.csv_path.empty()) {
    std::ofstream csv(cfg.csv_path);
    if (!csv) throw ContractError("cannot open CSV file: " + cfg.csv_path);
    csv << boundary_curve(norm).to_csv(1024);
  }
  return 0;
}

int cmd_suite(const RunConfig& cfg) {
  const Tolerances tol = parse_tolerances(cfg.tol_overrides);
  Reporter reporter(cfg.out_path);
  const auto results = run_acceptance(cfg.seed, true);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    Json j = base_record("suite-criterion", cfg, nullptr, tol);
    j["criterion"] = r.name;
    j["passed"] = r.passed;
    j["details"] = r.details;
    j["seconds"] = r.seconds;
    reporter.line(j);
  }
  Json summary = base_record("suite-summary", cfg, nullptr, tol);
  summary["total"] = static_cast<int>(results.size());
  summary["passed"] = all_passed;
  reporter.line(summary);
  return all_passed ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool need_spec) {
  auto* spec = sub->add_option("--spec", cfg.spec_path, "norm spec JSON file");
  if (need_spec) spec->required();
  sub->add_option("--mode", cfg.mode, "exact|sampled (default: by spec kind)")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}));
  sub->add_option("--samples", cfg.samples, "sample count for sampled mode");
  sub->add_option("--seed", cfg.seed, "master RNG seed");
  sub->add_option("--tol", cfg.tol_overrides, "tolerance override KEY=VALUE");
  sub->add_option("--out", cfg.out_path, "write JSON lines to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality and orthodigraph toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* bj = app.add_subcommand("bj", "decide x -> y");
  add_common(bj, cfg, true);
  bj->add_option("--x", cfg.x_text, "left vector, comma separated")->required();
  bj->add_option("--y", cfg.y_text, "right vector, comma separated")
      ->required();

  auto* graph = app.add_subcommand("graph", "build the orthodigraph");
  add_common(graph, cfg, true);
  graph->add_flag("--gamma0", cfg.gamma0, "materialize the 0 vertex");
  graph->add_option("--dot", cfg.dot_path, "write DOT export to this file");

  auto* dim = app.add_subcommand("dim", "dimension from the graph");
  add_common(dim, cfg, true);

  auto* smooth = app.add_subcommand("smooth", "classify smooth vertices");
  add_common(smooth, cfg, true);

  auto* faces = app.add_subcommand("faces", "maximal faces (exact specs)");
  add_common(faces, cfg, true);

  auto* recognize = app.add_subcommand("recognize", "sup-norm recognition");
  add_common(recognize, cfg, true);

  auto* radon = app.add_subcommand("radon", "Radon-plane checks (2D specs)");
  add_common(radon, cfg, true);
  radon->add_option("--pairs", cfg.pairs, "symmetry pairs to sample");
  radon->add_option("--csv", cfg.csv_path, "write boundary CSV to this file");

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  add_common(suite, cfg, false);
  suite->add_flag("--all", cfg.all, "run every criterion (default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bj->parsed()) return cmd_bj(cfg);
    if (graph->parsed()) return cmd_graph(cfg);
    if (dim->parsed()) return cmd_dim(cfg);
    if (smooth->parsed()) return cmd_smooth(cfg);
    if (faces->parsed()) return cmd_faces(cfg);
    if (recognize->parsed()) return cmd_recognize(cfg);
    if (radon->parsed()) return cmd_radon(cfg);
    if (suite->parsed()) return cmd_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
