#include "igcert/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "igcert/connectivity.hpp"
#include "igcert/counts.hpp"
#include "igcert/deltagraph.hpp"
#include "igcert/presentation.hpp"
#include "igcert/squares.hpp"

namespace igcert {

namespace {

std::string big(const BigCount& v) { return v.get_str(); }

Json path_json(const StrongPath& path) {
  Json steps = Json::array();
  for (const StrongStep& st : path.steps) {
    steps.push_back({{"row_edge", st.row_edge}, {"witness", st.witness}});
  }
  return Json{{"cells", path.cells}, {"steps", steps}};
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + p.string());
  }
  out << content;
}

}  // namespace

FieldRef field_of(const RunConfig& cfg) {
  if (cfg.poly.empty()) {
    return make_field(cfg.q);
  }
  return make_field(cfg.q, cfg.poly);
}

Json cmd_enumerate(const RunConfig& cfg, std::string* dump) {
  FieldRef field = field_of(cfg);
  RankedSet ys = enumerate_Y(cfg.n, cfg.r, field);
  Json regions = Json::array();
  for (size_t ri = 0; ri < ys.regions.size(); ++ri) {
    regions.push_back(
        {{"subset", ys.regions[ri].idx},
         {"count", ys.region_span[ri].second - ys.region_span[ri].first}});
  }
  if (dump) {
    std::ostringstream out;
    for (int32_t id = 0; id < ys.count(); ++id) {
      out << mat_to_text(ys.y(id)) << "\n";
    }
    *dump = out.str();
  }
  return Json{{"schema", 1},     {"n", cfg.n},          {"r", cfg.r},
              {"q", cfg.q},      {"count", ys.count()}, {"regions", regions}};
}

Json cmd_rees(const RunConfig& cfg, bool full) {
  FieldRef field = field_of(cfg);
  RankedSet ys = enumerate_Y(cfg.n, cfg.r, field);
  ProductTable t = full ? build_T_full(ys, cfg.budget, cfg.jobs)
                        : build_P(ys, cfg.budget, cfg.jobs);
  std::vector<int64_t> counts = t.value_counts();
  std::vector<int> ranks = t.value_ranks();
  int64_t nonzero = 0;
  int64_t idempotent_cells = 0;
  for (size_t vid = 0; vid < t.pool.size(); ++vid) {
    bool is_zero_value = (t.policy == ZeroPolicy::kZeroIfSingular && vid == 0)
                         || ranks[vid] == 0;
    if (!is_zero_value) nonzero += counts[vid];
    if (ranks[vid] == t.k) idempotent_cells += counts[vid];
  }
  return Json{{"schema", 1},
              {"n", cfg.n},
              {"r", cfg.r},
              {"q", cfg.q},
              {"full", full},
              {"rows", t.n_rows},
              {"cols", t.n_cols},
              {"nonzero", nonzero},
              {"distinct_values", t.pool.size()},
              {"idempotent_cells", idempotent_cells}};
}

namespace {

struct DeltaParts {
  RankedSet ys;
  ProductTable P;
  DeltaGraph dg;
  SpanningTree tree;
};

DeltaParts build_delta_parts(const RunConfig& cfg) {
  FieldRef field = field_of(cfg);
  DeltaParts parts{enumerate_Y(cfg.n, cfg.r, field), {}, {}, {}};
  parts.P = build_P(parts.ys, cfg.budget, cfg.jobs);
  parts.dg = build_delta(parts.P);
  parts.tree = build_spanning_tree(parts.ys, parts.dg);
  return parts;
}

}  // namespace

Json cmd_delta(const RunConfig& cfg) {
  DeltaParts parts = build_delta_parts(cfg);
  int64_t t1 = 0, t2 = 0, t12 = 0, t3 = 0;
  for (TreeTag tag : parts.tree.tags) {
    switch (tag) {
      case TreeTag::kT1: ++t1; break;
      case TreeTag::kT2: ++t2; break;
      case TreeTag::kT1T2: ++t12; break;
      case TreeTag::kT3: ++t3; break;
    }
  }
  return Json{{"schema", 1},
              {"n", cfg.n},
              {"r", cfg.r},
              {"q", cfg.q},
              {"x_vertices", parts.dg.n_x},
              {"y_vertices", parts.dg.n_y},
              {"edges", parts.dg.edge_count()},
              {"tree_edges",
               Json{{"total", parts.tree.edge_ids.size()},
                    {"t1", t1},
                    {"t2", t2},
                    {"t1_t2", t12},
                    {"t3", t3}}}};
}

std::string cmd_delta_dot(const RunConfig& cfg) {
  DeltaParts parts = build_delta_parts(cfg);
  return delta_to_dot(parts.ys, parts.dg, parts.tree);
}

Json cmd_closure(const RunConfig& cfg, std::string* trace_text) {
  DeltaParts parts = build_delta_parts(cfg);
  ColorState color = color_closure(
      parts.dg, parts.tree,
      cfg.lifo ? WorklistOrder::kLifo : WorklistOrder::kFifo);
  if (trace_text) {
    *trace_text = trace_to_text(parts.dg, color.trace);
  }
  int64_t blued = 0;
  for (uint8_t b : color.blue) blued += b;
  return Json{{"schema", 1},
              {"n", cfg.n},
              {"r", cfg.r},
              {"q", cfg.q},
              {"edges", parts.dg.edge_count()},
              {"tree_edges", parts.tree.edge_ids.size()},
              {"blued", blued},
              {"all_blue", color.all_blue},
              {"steps", color.trace.size()}};
}

Json cmd_lambda(int m, int k, const RunConfig& cfg) {
  FieldRef field = field_of(cfg);
  Thm52Report report = check_thm52(m, k, field, cfg.budget);
  Json values = Json::array();
  for (const LambdaSweepRow& row : report.rows) {
    values.push_back({{"value", row.value_digits},
                      {"rank", row.rank},
                      {"occurrences", row.occurrences},
                      {"lambda_edges", row.lambda_edges_present},
                      {"components", row.components},
                      {"asserted", row.asserted},
                      {"connected", row.connected}});
  }
  return Json{{"schema", 1},
              {"m", m},
              {"k", k},
              {"q", cfg.q},
              {"values", values},
              {"all_asserted_connected", report.all_asserted_connected}};
}

Json cmd_strong(const RunConfig& cfg, const std::string& value_digits) {
  FieldRef field = field_of(cfg);
  RankedSet ys = enumerate_Y(cfg.n, cfg.r, field);
  ProductTable t = build_T_full(ys, cfg.budget, cfg.jobs);
  if (!value_digits.empty()) {
    Mat K = mat_from_digits(field, cfg.r, cfg.r, value_digits);
    int32_t vid = -1;
    for (size_t v = 0; v < t.pool.size(); ++v) {
      if (t.pool[v] == K) {
        vid = int32_t(v);
        break;
      }
    }
    if (vid < 0) {
      return Json{{"schema", 1}, {"n", cfg.n},           {"r", cfg.r},
                  {"q", cfg.q},  {"value", value_digits}, {"absent", true}};
    }
    StrongForest forest = strong_components(t, vid);
    StrongPath sample =
        extract_strong_path(forest, forest.cells.front(), forest.cells.back());
    bool verified = verify_strong_path(t, sample);
    return Json{{"schema", 1},
                {"n", cfg.n},
                {"r", cfg.r},
                {"q", cfg.q},
                {"value", value_digits},
                {"absent", false},
                {"occurrences", forest.cells.size()},
                {"components", forest.n_components},
                {"sample_path", path_json(sample)},
                {"sample_path_verified", verified}};
  }
  Thm63Report report = check_thm63(t);
  Json values = Json::array();
  for (const StrongSweepRow& row : report.rows) {
    values.push_back({{"value", row.value_digits},
                      {"rank", row.rank},
                      {"occurrences", row.occurrences},
                      {"components", row.components}});
  }
  return Json{{"schema", 1},
              {"n", cfg.n},
              {"r", cfg.r},
              {"q", cfg.q},
              {"values", values},
              {"absent_values", report.absent_values},
              {"all_strong", report.all_strong}};
}

Json cmd_counts(const RunConfig& cfg) {
  BigCount gaussian = gaussian_binomial(cfg.n, cfg.r, cfg.q);
  BigCount order = gl_order(cfg.r, cfg.q);
  BigCount idempotents = idempotent_count(cfg.n, cfg.r, cfg.q);
  int cmp = mpz_cmp(idempotents.get_mpz_t(), order.get_mpz_t());
  return Json{{"schema", 1},
              {"n", cfg.n},
              {"r", cfg.r},
              {"q", cfg.q},
              {"gaussian", big(gaussian)},
              {"gl_order", big(order)},
              {"idempotents", big(idempotents)},
              {"generators_vs_group",
               cmp < 0 ? "less" : (cmp == 0 ? "equal" : "greater")}};
}

std::string cmd_presentation(const RunConfig& cfg, const std::string& mode,
                             int64_t square_cap) {
  FieldRef field = field_of(cfg);
  RankedSet ys = enumerate_Y(cfg.n, cfg.r, field);
  ProductTable P = build_P(ys, cfg.budget, cfg.jobs);
  DeltaGraph dg = build_delta(P);
  SpanningTree tree = build_spanning_tree(ys, dg);
  Presentation pres = build_presentation(P, dg, tree);
  if (mode == "tree-only") {
    return export_presentation(pres, P, ExportMode::kTreeOnly);
  }
  if (mode == "full-enumeration") {
    return export_presentation(pres, P, ExportMode::kFullEnumeration, nullptr,
                               square_cap);
  }
  if (mode == "certificate-squares") {
    ColorState color = color_closure(dg, tree);
    ProductTable t_full = build_T_full(ys, cfg.budget, cfg.jobs);
    ClassMap classes(pres.n_generators());
    CertificateChain chain;
    chain.n = cfg.n;
    chain.r = cfg.r;
    chain.q = cfg.q;
    chain.seed = cfg.seed;
    run_stage1(pres, dg, tree, color, classes, chain);
    run_stage2(pres, P, t_full, classes, chain);
    run_stage3(pres, ys, P, classes, chain);
    return export_presentation(pres, P, ExportMode::kCertificateSquares, &chain,
                               square_cap);
  }
  throw std::invalid_argument(
      "mode must be tree-only, certificate-squares or full-enumeration");
}

namespace {

std::string stage2_forest_text(const CertificateChain& chain) {
  std::ostringstream out;
  for (const auto& entry : chain.stage2) {
    for (const auto& edge : entry.edges) {
      out << entry.value_digits << " " << entry.cells[size_t(edge.a)] << " "
          << entry.cells[size_t(edge.b)] << " "
          << (edge.row_edge ? "row" : "col") << " " << edge.witness << "\n";
    }
  }
  return out.str();
}

std::string human_summary(const Json& summary) {
  std::ostringstream out;
  out << "verify-theorem n=" << summary["n"] << " r=" << summary["r"]
      << " q=" << summary["q"] << "\n";
  out << "  certified: " << (summary["certified"].get<bool>() ? "yes" : "no")
      << "\n";
  if (summary.contains("failed_stage")
      && !summary["failed_stage"].get<std::string>().empty()) {
    out << "  failed stage: " << summary["failed_stage"].get<std::string>()
        << "\n";
  }
  if (summary.contains("class_count")) {
    out << "  presentation classes: " << summary["class_count"]
        << "  (|GL_r(F_q)| = " << summary["gl_order"].get<std::string>() << ")\n";
  }
  for (const auto& [key, val] : summary["stages"].items()) {
    out << "  " << key << ": " << val.dump() << "\n";
  }
  return out.str();
}

}  // namespace

VerifyOutcome cmd_verify_theorem(const RunConfig& cfg) {
  if (!cfg.exploratory && 3 * cfg.r >= cfg.n) {
    throw std::invalid_argument(
        "verify-theorem requires r < n/3; pass --exploratory to run anyway");
  }
  VerifyOutcome outcome;
  Json stages = Json::object();
  std::string failed;

  FieldRef field = field_of(cfg);
  RankedSet ys = enumerate_Y(cfg.n, cfg.r, field);

  BigCount gaussian = gaussian_binomial(cfg.n, cfg.r, cfg.q);
  if (BigCount(ys.count()) != gaussian) {
    throw std::logic_error("enumeration disagrees with the Gaussian coefficient");
  }

  ProductTable P = build_P(ys, cfg.budget, cfg.jobs);
  DeltaGraph dg = build_delta(P);
  SpanningTree tree = build_spanning_tree(ys, dg);
  ProductTable t_full = build_T_full(ys, cfg.budget, cfg.jobs);
  Presentation pres = build_presentation(P, dg, tree);
  ClassMap classes(pres.n_generators());
  CertificateChain chain;
  chain.n = cfg.n;
  chain.r = cfg.r;
  chain.q = cfg.q;
  chain.seed = cfg.seed;

  stages["build"] = Json{{"vertices", ys.count()},
                         {"generators", pres.n_generators()},
                         {"delta_edges", dg.edge_count()},
                         {"tree_edges", tree.edge_ids.size()}};

  SoundnessReport soundness;
  bool stages_done = false;
  try {
    ColorState color = color_closure(
        dg, tree, cfg.lifo ? WorklistOrder::kLifo : WorklistOrder::kFifo);
    run_stage1(pres, dg, tree, color, classes, chain);
    stages["stage1"] = Json{{"all_blue", color.all_blue},
                            {"identity_cells", dg.edge_count()},
                            {"trace_steps", chain.trace.size()}};
    outcome.trace_text = trace_to_text(dg, color.trace);

    run_stage2(pres, P, t_full, classes, chain);
    Json stage2_values = Json::array();
    for (const auto& entry : chain.stage2) {
      stage2_values.push_back({{"value", entry.value_digits},
                               {"occurrences", entry.cells.size()},
                               {"forest_edges", entry.edges.size()},
                               {"components", entry.components}});
    }
    stages["stage2"] =
        Json{{"values", stage2_values}, {"classes", classes.n_classes()}};

    run_stage3(pres, ys, P, classes, chain);
    stages["stage3"] = Json{{"pairs", chain.stage3.size()}};
    stages_done = true;
  } catch (const StageError& e) {
    failed = e.what();
  }

  int64_t idempotent_cells = 0;
  for (uint16_t v : P.cells) {
    if (v != 0) ++idempotent_cells;
  }
  bool counts_ok =
      BigCount(idempotent_cells) == idempotent_count(cfg.n, cfg.r, cfg.q);

  bool replay_ok = false;
  if (stages_done) {
    soundness = check_soundness(pres, ys, classes, chain);
    replay_ok = soundness.certified;
    if (!replay_ok && failed.empty()) {
      failed = "soundness: " + soundness.first_error;
    }
  }
  if (!counts_ok && failed.empty()) {
    failed = "idempotent cell count disagrees with the closed form";
  }

  outcome.certified = stages_done && replay_ok && counts_ok;
  outcome.pass = cfg.exploratory ? true : outcome.certified;
  outcome.failed_stage = failed;

  Json soundness_json = Json{{"tree_relations_ok", soundness.tree_relations_ok},
                             {"squares_ok", soundness.squares_ok},
                             {"squares_checked", soundness.squares_checked},
                             {"class_count_ok", soundness.class_count_ok},
                             {"labels_bijective", soundness.labels_bijective},
                             {"multiplication_closed", soundness.multiplication_closed},
                             {"certified", soundness.certified}};

  outcome.summary = Json{{"schema", 1},
                         {"n", cfg.n},
                         {"r", cfg.r},
                         {"q", cfg.q},
                         {"seed", cfg.seed},
                         {"exploratory", cfg.exploratory},
                         {"certified", outcome.certified},
                         {"failed_stage", failed},
                         {"class_count", stages_done ? classes.n_classes() : -1},
                         {"gl_order", big(gl_order(cfg.r, cfg.q))},
                         {"gaussian", big(gaussian)},
                         {"idempotents", big(idempotent_count(cfg.n, cfg.r, cfg.q))},
                         {"idempotent_cells_ok", counts_ok},
                         {"stages", stages},
                         {"soundness", soundness_json}};

  Json stage2_cert = Json::array();
  for (const auto& entry : chain.stage2) {
    stage2_cert.push_back({{"value", entry.value_digits},
                           {"occurrences", entry.cells.size()},
                           {"forest_edges", entry.edges.size()},
                           {"components", entry.components},
                           {"sample_path", path_json(entry.sample_path)}});
  }
  Json stage3_cert = Json::array();
  for (const auto& entry : chain.stage3) {
    stage3_cert.push_back({{"a", entry.a_digits},
                           {"b", entry.b_digits},
                           {"ab", entry.ab_digits},
                           {"x", entry.ids.x},
                           {"xp", entry.ids.xp},
                           {"y", entry.ids.y},
                           {"yp", entry.ids.yp}});
  }
  outcome.certificate = Json{{"schema", 1},
                             {"n", cfg.n},
                             {"r", cfg.r},
                             {"q", cfg.q},
                             {"seed", cfg.seed},
                             {"stage1",
                              Json{{"all_blue", chain.stage1_all_blue},
                                   {"delta_edges", chain.delta_edges},
                                   {"tree_edges", chain.tree_edges.size()},
                                   {"trace_steps", chain.trace.size()},
                                   {"trace_file", "trace.txt"}}},
                             {"stage2", stage2_cert},
                             {"stage3", stage3_cert},
                             {"soundness", soundness_json}};
  if (cfg.full_cert) {
    outcome.stage2_forest_text = stage2_forest_text(chain);
  }
  return outcome;
}

void write_verify_files(const RunConfig& cfg, const VerifyOutcome& outcome) {
  if (cfg.out_dir.empty()) {
    return;
  }
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "cert.json", outcome.certificate.dump(2) + "\n");
  write_file(dir / "trace.txt", outcome.trace_text);
  write_file(dir / "summary.json", outcome.summary.dump(2) + "\n");
  write_file(dir / "summary.txt", human_summary(outcome.summary));
  if (cfg.full_cert) {
    write_file(dir / "stage2_forest.txt", outcome.stage2_forest_text);
  }
}

}  // namespace igcert
