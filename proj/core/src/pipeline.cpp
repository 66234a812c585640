#include "xgsc/pipeline.hpp"

#include "xgsc/equivalence.hpp"
#include "xgsc/eval.hpp"
#include "xgsc/explain.hpp"
#include "xgsc/gower.hpp"
#include "xgsc/kmeans.hpp"
#include "xgsc/objectives.hpp"
#include "xgsc/parallel.hpp"
#include "xgsc/spectral.hpp"
#include "xgsc/wordvec.hpp"

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

namespace xgsc {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string_view to_string(Route route) {
  switch (route) {
    case Route::direct_glove: return "direct_glove";
    case Route::direct_tvs: return "direct_tvs";
    case Route::spectral_L: return "spectral_L";
    case Route::spectral_N: return "spectral_N";
    case Route::spectral_R: return "spectral_R";
    case Route::gower_K: return "gower_K";
    case Route::gower_B: return "gower_B";
  }
  return "unknown";
}

Route parse_route(std::string_view name) {
  for (const Route r : {Route::direct_glove, Route::direct_tvs, Route::spectral_L,
                        Route::spectral_N, Route::spectral_R, Route::gower_K, Route::gower_B}) {
    if (to_string(r) == name) return r;
  }
  throw Error("config", "unknown embedding_route '" + std::string(name) + "'");
}

namespace {

std::string_view to_string(ImpactChoice c) {
  switch (c) {
    case ImpactChoice::automatic: return "auto";
    case ImpactChoice::cardinality: return "cardinality";
    case ImpactChoice::volume: return "volume";
  }
  return "auto";
}

std::string_view to_string(ClustererChoice c) {
  switch (c) {
    case ClustererChoice::automatic: return "auto";
    case ClustererChoice::standard: return "kmeans";
    case ClustererChoice::spherical: return "spherical";
  }
  return "auto";
}

std::string_view to_string(CorpusFormat f) {
  return f == CorpusFormat::jsonl ? "jsonl" : "text";
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error("config", std::string("field '") + key + "' has the wrong type");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

CorpusFormat infer_format(const PipelineConfig& cfg) {
  if (cfg.corpus_format) return *cfg.corpus_format;
  const auto ext = cfg.corpus_path.extension().string();
  return ext == ".jsonl" || ext == ".json" ? CorpusFormat::jsonl : CorpusFormat::plain_text;
}

Json config_json(const PipelineConfig& cfg) {
  Json j;
  j["name"] = cfg.name;
  j["corpus_path"] = cfg.corpus_path.generic_string();
  j["corpus_format"] = std::string(to_string(infer_format(cfg)));
  j["vectors_path"] = cfg.vectors_path ? Json(cfg.vectors_path->generic_string()) : Json(nullptr);
  j["weight_scheme"] = std::string(to_string(cfg.weight_scheme));
  j["embedding_route"] = std::string(to_string(cfg.route));
  j["k"] = cfg.k;
  j["m"] = cfg.m ? Json(*cfg.m) : Json(nullptr);
  j["seed"] = cfg.seed;
  j["restarts"] = cfg.restarts;
  j["max_iter"] = cfg.max_iter;
  j["tol"] = cfg.tol;
  j["shift_negative"] = cfg.shift_negative;
  j["output_dir"] = cfg.output_dir.generic_string();
  j["impact_mode"] = std::string(to_string(cfg.impact));
  j["clusterer"] = std::string(to_string(cfg.clusterer));
  j["top_n"] = cfg.top_n;
  j["equivalence_trials"] = cfg.equivalence_trials;
  j["idf_log_base"] = cfg.idf_log_base;
  j["drop_urls"] = cfg.drop_urls;
  j["macro_f1"] = cfg.macro_f1;
  return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json words_json(const std::vector<WordExplanation>& words) {
  Json arr = Json::array();
  for (const auto& w : words) arr.push_back({{"rank", w.rank}, {"word", w.word}, {"score", w.score}});
  return arr;
}

Json criteria_json(const CriterionValues& c) {
  return Json{{"rcut", c.rcut},       {"ncut", optional_json(c.ncut)},
              {"nrcut", c.nrcut},     {"q_glove", c.q_glove},
              {"q_kbased", c.q_kbased}, {"q_bbased", optional_json(c.q_bbased)},
              {"q_wglove", optional_json(c.q_wglove)}};
}

Json equivalence_json(const EquivalenceReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"statement", c.statement},
                      {"tolerance", c.tolerance},
                      {"evaluated", c.evaluated},
                      {"failures", c.failures},
                      {"max_residual", c.max_residual},
                      {"skipped", c.skipped},
                      {"skip_reason", c.skip_reason.empty() ? Json(nullptr) : Json(c.skip_reason)},
                      {"status", c.skipped ? "skipped" : (c.failures == 0 ? "pass" : "fail")}});
  }
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    std::vector<int> one_based(f.assignment);
    for (int& a : one_based) ++a;
    failures.push_back(
        {{"check", f.check}, {"k", f.k}, {"residual", f.residual}, {"assignment", one_based}});
  }
  return Json{{"n", r.n},
              {"trials", r.trials},
              {"seed", r.seed},
              {"k_lingoes_sigma", r.k_lingoes_sigma},
              {"b_lingoes_sigma", r.b_lingoes_sigma},
              {"passed", r.passed()},
              {"checks", checks},
              {"failures", failures}};
}

Json matrix_json(const Matrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cli", "cannot write " + path.string());
  out << text;
  if (!out) throw Error("cli", "failed writing " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

template <typename Writer>
void write_stream(const fs::path& path, Writer writer) {
  std::ostringstream buffer;
  writer(buffer);
  write_text(path, buffer.str());
}

bool uses_graph_volume(Route route) {
  return route == Route::spectral_N || route == Route::spectral_R || route == Route::gower_B;
}

struct RunState {
  std::vector<std::string> artifacts;
  Json manifest;
};

RunSummary run_impl(const PipelineConfig& cfg, const RunOptions& options) {
  RunSummary summary;
  summary.name = cfg.name;
  summary.route = cfg.route;
  summary.weight_scheme = cfg.weight_scheme;
  summary.m = cfg.m;
  summary.k = cfg.k;

  if (cfg.k < 2) throw Error("cli", "k must be at least 2");
  if (cfg.route == Route::direct_glove && !cfg.vectors_path) {
    throw Error("cli", "route direct_glove requires vectors_path");
  }
  const bool use_tvs =
      cfg.route == Route::direct_tvs || (!cfg.vectors_path && cfg.route != Route::direct_glove);
  const bool direct = cfg.route == Route::direct_glove || cfg.route == Route::direct_tvs;
  if (cfg.clusterer == ClustererChoice::spherical && !direct) {
    throw Error("cli", "spherical k-means needs unit rows; use a direct route");
  }
  summary.space = use_tvs ? "tvs" : "glove";

  fs::create_directories(cfg.output_dir);
  RunState state;

  const auto raw = load_raw_documents(cfg.corpus_path, infer_format(cfg));
  CorpusBuild built = build_corpus(raw, TokenizerConfig{cfg.drop_urls}, cfg.idf_log_base);
  std::vector<SkipRecord> skipped = built.rejected;
  Corpus corpus = std::move(built.corpus);

  std::optional<WordVectorTable> table;
  std::unique_ptr<TermSpace> term_space;
  Json coverage = nullptr;
  if (!use_tvs) {
    table = load_glove_text(*cfg.vectors_path, &corpus.vocabulary());
    const CoverageStats stats = coverage_report(*table, corpus);
    coverage = Json{{"vocabulary_size", stats.vocabulary_size},
                    {"in_vocabulary", stats.in_vocabulary},
                    {"out_of_vocabulary", stats.out_of_vocabulary},
                    {"coverage", stats.coverage},
                    {"fully_oov_documents", stats.fully_oov_documents.size()}};
    CorpusBuild restricted = restrict_to_table(corpus, *table);
    skipped.insert(skipped.end(), restricted.rejected.begin(), restricted.rejected.end());
    corpus = std::move(restricted.corpus);
  }
  if (corpus.size() == 0) throw Error("corpus", "no usable documents");
  const WordSpace* space = nullptr;
  if (use_tvs) {
    term_space = std::make_unique<TermSpace>(corpus);
    space = term_space.get();
  } else {
    space = &*table;
  }

  EmbeddedCorpus embedded =
      embed_corpus(corpus, *space, cfg.weight_scheme, use_tvs ? SpaceTag::tvs : SpaceTag::glove);
  skipped.insert(skipped.end(), embedded.skipped.begin(), embedded.skipped.end());
  const std::size_t n = embedded.matrix.size();
  summary.documents = n;
  if (n < cfg.k) {
    throw Error("cli", "k = " + std::to_string(cfg.k) + " exceeds the " + std::to_string(n) +
                           " embeddable documents");
  }

  std::map<std::string, std::optional<std::string>, std::less<>> label_of;
  for (const auto& d : corpus.documents()) label_of.emplace(d.id, d.label);
  std::optional<std::vector<std::string>> labels(std::in_place);
  for (const auto& id : embedded.matrix.doc_ids) {
    const auto& l = label_of.at(id);
    if (!l) {
      labels.reset();
      break;
    }
    labels->push_back(*l);
  }

  SimilarityGraph graph = build_similarity(embedded.matrix);
  const double s_min = min_off_diagonal(graph);
  if (s_min < 0.0 && cfg.shift_negative) graph = shift_nonnegative(graph);

  write_stream(cfg.output_dir / "skipped.json",
               [&](std::ostream& out) { write_skip_records_json(out, skipped); });
  state.artifacts.push_back("skipped.json");

  EquivalenceOptions eq_options;
  eq_options.trials = cfg.equivalence_trials;
  eq_options.seed = cfg.seed;
  const EquivalenceReport report = verify_equivalences(graph, eq_options);
  summary.equivalence_passed = report.passed();
  write_json(cfg.output_dir / "equivalence_report.json", equivalence_json(report));
  state.artifacts.push_back("equivalence_report.json");

  Json seeds = Json::array();
  for (std::size_t r = 0; r < std::max<std::size_t>(1, cfg.restarts); ++r) seeds.push_back(cfg.seed + r);
  state.manifest = Json{{"tool", "xgsc"},
                        {"version", version()},
                        {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                              std::to_string(EIGEN_MINOR_VERSION)},
                        {"mode", options.verify_only ? "verify_only" : "run"},
                        {"config", config_json(cfg)},
                        {"kmeans_seeds", seeds},
                        {"equivalence_seed", cfg.seed},
                        {"documents",
                         {{"input", raw.size()}, {"embedded", n}, {"skipped", skipped.size()}}},
                        {"space", summary.space},
                        {"vector_coverage", coverage},
                        {"similarity",
                         {{"min_off_diagonal", s_min},
                          {"shifted", s_min < 0.0 && cfg.shift_negative},
                          {"notes", graph.notes}}}};

  auto finish = [&](int exit_code) {
    state.artifacts.push_back("run_manifest.json");
    state.manifest["artifacts"] = state.artifacts;
    state.manifest["equivalence_passed"] = report.passed();
    state.manifest["exit_code"] = exit_code;
    write_json(cfg.output_dir / "run_manifest.json", state.manifest);
    summary.exit_code = exit_code;
    return summary;
  };
  const int ok_code = report.passed() ? 0 : 2;
  if (options.verify_only) return finish(ok_code);

  EmbeddingMatrix emb;
  Json route_info = Json::object();
  switch (cfg.route) {
    case Route::direct_glove:
    case Route::direct_tvs:
      emb = embedded.matrix;
      break;
    case Route::spectral_L:
    case Route::spectral_N:
    case Route::spectral_R: {
      const LaplacianKind kind = cfg.route == Route::spectral_L ? LaplacianKind::combinatorial
                                 : cfg.route == Route::spectral_N ? LaplacianKind::normalized
                                                                  : LaplacianKind::rationormalized;
      const SpectralEmbedding se =
          spectral_embed(build_laplacian(graph, kind), cfg.m.value_or(cfg.k));
      route_info["laplacian"] = std::string(to_string(kind));
      route_info["eigenvalues"] = vector_json(se.eigenvalues);
      emb = to_embedding_matrix(se, embedded.matrix.doc_ids);
      break;
    }
    case Route::gower_K:
    case Route::gower_B: {
      const GowerKind kind = cfg.route == Route::gower_K ? GowerKind::K : GowerKind::B;
      const GowerEmbedding ge = gower_embed(graph, kind, cfg.m);
      route_info["kept_eigenvalues"] = vector_json(ge.kept_eigenvalues);
      route_info["lingoes_sigma"] = ge.lingoes_sigma;
      route_info["warnings"] = ge.warnings;
      emb = to_embedding_matrix(ge, embedded.matrix.doc_ids);
      if (kind == GowerKind::B) emb.row_weights = graph.degree_prime;
      break;
    }
  }
  state.manifest["route"] = route_info;

  KMeansOptions km;
  km.k = cfg.k;
  km.seed = cfg.seed;
  km.max_iter = cfg.max_iter;
  km.tol = cfg.tol;
  km.restarts = cfg.restarts;
  const ClusteringResult result = [&] {
    if (cfg.route == Route::gower_B) return weighted_kmeans(emb, km);
    if (cfg.clusterer == ClustererChoice::spherical) return spherical_kmeans(emb, km);
    return kmeans(emb, km);
  }();
  summary.objective = result.objective;
  const Partition& partition = result.partition;
  const CriterionValues criteria = evaluate_criteria(graph, partition);

  {
    Json assignment = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      assignment.push_back({{"doc_id", emb.doc_ids[i]}, {"cluster", partition[i] + 1}});
    }
    Json sizes = Json::array();
    for (int j = 0; j < partition.k(); ++j) sizes.push_back(partition.cluster_size(j));
    write_json(cfg.output_dir / "clusters.json",
               Json{{"route", std::string(to_string(cfg.route))},
                    {"embedding_tag", result.embedding_tag},
                    {"clusterer", std::string(to_string(result.variant))},
                    {"k", partition.k()},
                    {"seed", result.seed},
                    {"iterations", result.iterations},
                    {"objective", result.objective},
                    {"objective_trace", result.objective_trace},
                    {"cluster_sizes", sizes},
                    {"criteria", criteria_json(criteria)},
                    {"centers", matrix_json(result.centers)},
                    {"assignment", assignment}});
    state.artifacts.push_back("clusters.json");
  }

  write_stream(cfg.output_dir / "embedding.csv",
               [&](std::ostream& out) { write_embedding_csv(out, emb); });
  state.artifacts.push_back("embedding.csv");

  ExplainOptions eo;
  eo.top_n = cfg.top_n;
  const bool volume_mode =
      cfg.impact == ImpactChoice::volume ||
      (cfg.impact == ImpactChoice::automatic && uses_graph_volume(cfg.route));
  const Volumes vols = volumes(graph, partition);
  if (volume_mode) {
    eo.mode = ImpactMode::volume;
    eo.volumes = vols.volume_prime;
  }
  const std::vector<ClusterProfile> profiles =
      explain_clusters(embedded.documents, partition, *space, eo);
  {
    Json clusters = Json::array();
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      const auto& p = profiles[j];
      double sim_total = 0.0;
      for (const auto& entry : word_cluster_similarity(p, *space)) sim_total += entry.second;
      clusters.push_back({{"cluster", p.cluster_id + 1},
                          {"size", p.size},
                          {"normalizer", p.normalizer},
                          {"center_norm_sq", p.center.squaredNorm()},
                          {"similarity_sum", sim_total},
                          {"distinctness", cluster_distinctness(profiles, j)},
                          {"top_words", words_json(p.top_words)},
                          {"differentiating_words", words_json(p.diff_words)}});
    }
    Json documents = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const int c = partition[i];
      auto contributions = membership_contributions(
          embedded.documents[i], profiles[static_cast<std::size_t>(c)].center, *space);
      if (contributions.size() > 10) contributions.resize(10);
      documents.push_back({{"doc_id", embedded.documents[i].doc_id},
                           {"cluster", c + 1},
                           {"membership", words_json(contributions)}});
    }
    write_json(cfg.output_dir / "explanations.json",
               Json{{"space", summary.space},
                    {"impact_mode", std::string(to_string(eo.mode))},
                    {"top_n", cfg.top_n},
                    {"clusters", clusters},
                    {"documents", documents}});
    write_stream(cfg.output_dir / "explanations.txt",
                 [&](std::ostream& out) { write_explanation_text(out, profiles); });
    state.artifacts.push_back("explanations.json");
    state.artifacts.push_back("explanations.txt");
  }

  Json evaluation = nullptr;
  if (labels) {
    const ConfusionTable table = confusion(partition, *labels);
    const PairwiseScore f = f_measure_from_counts(table.counts);
    summary.f_measure = f.f;
    summary.error_pct = table.error_pct;
    Json matching = Json::array();
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
      matching.push_back({{"label", table.labels[i]},
                          {"cluster", table.matching[i] >= 0 ? Json(table.matching[i] + 1)
                                                             : Json(nullptr)}});
    }
    evaluation = Json{{"labels", table.labels},
                      {"counts", table.counts},
                      {"matching", matching},
                      {"correct", table.correct},
                      {"n", table.n},
                      {"error_pct", table.error_pct},
                      {"f_measure", {{"definition", "pairwise"},
                                     {"precision", f.precision},
                                     {"recall", f.recall},
                                     {"f", f.f}}}};
    if (cfg.macro_f1) {
      summary.macro_f1 = macro_f1(table);
      evaluation["macro_f1"] = *summary.macro_f1;
    }
    write_stream(cfg.output_dir / "confusion.csv",
                 [&](std::ostream& out) { write_confusion_csv(out, table); });
    state.artifacts.push_back("confusion.csv");
  }
  write_json(cfg.output_dir / "metrics.json",
             Json{{"documents", n},
                  {"k", partition.k()},
                  {"route", std::string(to_string(cfg.route))},
                  {"space", summary.space},
                  {"objective", result.objective},
                  {"criteria", criteria_json(criteria)},
                  {"volumes", vector_json(vols.volume)},
                  {"volumes_prime", vector_json(vols.volume_prime)},
                  {"evaluation", evaluation},
                  {"equivalence_passed", report.passed()}});
  state.artifacts.push_back("metrics.json");

  const DiagnosticsBundle diagnostics =
      similarity_diagnostics(graph, labels ? &*labels : nullptr);
  write_stream(cfg.output_dir / "diagnostics.csv", [&](std::ostream& out) {
    write_diagnostics_csv(out, diagnostics, embedded.matrix.doc_ids);
  });
  write_stream(cfg.output_dir / "diagnostics_sorted.csv",
               [&](std::ostream& out) { write_sorted_diagnostics_csv(out, diagnostics); });
  state.artifacts.push_back("diagnostics.csv");
  state.artifacts.push_back("diagnostics_sorted.csv");

  return finish(ok_code);
}

std::string format_optional(const std::optional<double>& v, int precision) {
  if (!v) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& json_text, const fs::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config", "top level must be an object");
  static const std::set<std::string> known = {
      "name", "corpus_path", "corpus_format", "vectors_path", "weight_scheme",
      "embedding_route", "k", "m", "seed", "restarts", "max_iter", "tol", "shift_negative",
      "output_dir", "impact_mode", "clusterer", "top_n", "equivalence_trials", "idf_log_base",
      "drop_urls", "macro_f1"};
  for (const auto& item : j.items()) {
    if (known.count(item.key()) == 0) throw Error("config", "unknown field '" + item.key() + "'");
  }

  PipelineConfig cfg;
  const auto corpus = get_or<std::string>(j, "corpus_path", "");
  if (corpus.empty()) throw Error("config", "corpus_path is required");
  cfg.corpus_path = resolve(base_dir, corpus);
  if (j.contains("corpus_format") && !j["corpus_format"].is_null()) {
    const auto f = get_or<std::string>(j, "corpus_format", "");
    if (f == "jsonl") {
      cfg.corpus_format = CorpusFormat::jsonl;
    } else if (f == "text") {
      cfg.corpus_format = CorpusFormat::plain_text;
    } else {
      throw Error("config", "corpus_format must be 'jsonl' or 'text'");
    }
  }
  const auto vectors = get_or<std::string>(j, "vectors_path", "");
  if (!vectors.empty()) cfg.vectors_path = resolve(base_dir, vectors);
  cfg.name = get_or<std::string>(j, "name", "");
  cfg.weight_scheme = parse_weight_scheme(get_or<std::string>(j, "weight_scheme", "tf"));
  cfg.route = parse_route(get_or<std::string>(j, "embedding_route", "gower_K"));
  const auto k = get_or<long long>(j, "k", 2);
  if (k < 1) throw Error("config", "k must be positive");
  cfg.k = static_cast<std::size_t>(k);
  if (j.contains("m") && !j["m"].is_null()) {
    const auto m = get_or<long long>(j, "m", 0);
    if (m < 1) throw Error("config", "m must be positive");
    cfg.m = static_cast<std::size_t>(m);
  }
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
  cfg.restarts = get_or<std::size_t>(j, "restarts", cfg.restarts);
  cfg.max_iter = get_or<std::size_t>(j, "max_iter", cfg.max_iter);
  cfg.tol = get_or<double>(j, "tol", cfg.tol);
  cfg.shift_negative = get_or<bool>(j, "shift_negative", false);
  cfg.output_dir = resolve(base_dir, get_or<std::string>(j, "output_dir", "xgsc_output"));
  const auto impact = get_or<std::string>(j, "impact_mode", "auto");
  if (impact == "auto") {
    cfg.impact = ImpactChoice::automatic;
  } else {
    cfg.impact = parse_impact_mode(impact) == ImpactMode::volume ? ImpactChoice::volume
                                                                 : ImpactChoice::cardinality;
  }
  const auto clusterer = get_or<std::string>(j, "clusterer", "auto");
  if (clusterer == "auto") {
    cfg.clusterer = ClustererChoice::automatic;
  } else if (clusterer == "kmeans") {
    cfg.clusterer = ClustererChoice::standard;
  } else if (clusterer == "spherical") {
    cfg.clusterer = ClustererChoice::spherical;
  } else {
    throw Error("config", "clusterer must be 'auto', 'kmeans' or 'spherical'");
  }
  cfg.top_n = get_or<std::size_t>(j, "top_n", cfg.top_n);
  cfg.equivalence_trials = get_or<std::size_t>(j, "equivalence_trials", cfg.equivalence_trials);
  cfg.idf_log_base = get_or<double>(j, "idf_log_base", cfg.idf_log_base);
  if (!(cfg.idf_log_base > 1.0)) throw Error("config", "idf_log_base must exceed 1");
  cfg.drop_urls = get_or<bool>(j, "drop_urls", true);
  cfg.macro_f1 = get_or<bool>(j, "macro_f1", false);
  return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("config", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  PipelineConfig cfg = parse_pipeline_config(text.str(), path.parent_path());
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

RunSummary run_pipeline(const PipelineConfig& config, const RunOptions& options) {
  try {
    return run_impl(config, options);
  } catch (const std::exception& e) {
    RunSummary failed;
    failed.name = config.name;
    failed.route = config.route;
    failed.weight_scheme = config.weight_scheme;
    failed.m = config.m;
    failed.k = config.k;
    failed.exit_code = 1;
    failed.error = dynamic_cast<const Error*>(&e) ? e.what() : std::string("cli: ") + e.what();
    return failed;
  }
}

std::vector<fs::path> list_config_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("cli", "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

GridResult run_grid(const std::vector<PipelineConfig>& configs, const fs::path& output_dir,
                    const RunOptions& options) {
  fs::create_directories(output_dir);
  GridResult grid;
  grid.rows.resize(configs.size());
  parallel_for(configs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PipelineConfig cfg = configs[i];
      std::ostringstream dir;
      dir << std::setw(2) << std::setfill('0') << i + 1;
      if (!cfg.name.empty()) dir << '_' << cfg.name;
      cfg.output_dir = output_dir / dir.str();
      grid.rows[i] = run_pipeline(cfg, options);
    }
  });
  for (const auto& row : grid.rows) grid.exit_code = std::max(grid.exit_code, row.exit_code);

  std::ostringstream csv;
  csv << "name,route,embedding,weighting,m,k,documents,f_measure,macro_f1,error_pct,"
         "equivalence,exit_code\n";
  for (const auto& r : grid.rows) {
    csv << r.name << ',' << to_string(r.route) << ',' << r.space << ','
        << to_string(r.weight_scheme) << ',' << (r.m ? std::to_string(*r.m) : "") << ',' << r.k
        << ',' << r.documents << ',' << format_optional(r.f_measure, 6) << ','
        << format_optional(r.macro_f1, 6) << ',' << format_optional(r.error_pct, 2) << ','
        << (r.exit_code == 1 ? "error" : (r.equivalence_passed ? "pass" : "fail")) << ','
        << r.exit_code << '\n';
  }
  write_text(output_dir / "grid_table.csv", csv.str());

  std::ostringstream txt;
  txt << std::left << std::setw(14) << "route" << std::setw(8) << "embed" << std::setw(10)
      << "weight" << std::setw(6) << "m" << std::setw(10) << "F" << std::setw(10) << "error%"
      << "name\n";
  for (const auto& r : grid.rows) {
    txt << std::left << std::setw(14) << to_string(r.route) << std::setw(8)
        << (r.space.empty() ? "-" : r.space) << std::setw(10) << to_string(r.weight_scheme)
        << std::setw(6) << (r.m ? std::to_string(*r.m) : "-") << std::setw(10)
        << format_optional(r.f_measure, 4) << std::setw(10) << format_optional(r.error_pct, 1)
        << r.name;
    if (!r.error.empty()) txt << "  [" << r.error << "]";
    txt << '\n';
  }
  write_text(output_dir / "grid_table.txt", txt.str());
  return grid;
}

}  // namespace xgsc
