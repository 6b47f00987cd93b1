#include "autoscore/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <sstream>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"
#include "autoscore/rng.hpp"

namespace autoscore {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kForestStream = 2;
constexpr std::uint64_t kBootstrapStream = 3;

const char* kSplits = "splits.csv";
const char* kImputation = "imputation.json";
const char* kRanking = "ranking.csv";
const char* kParsimonyCsv = "parsimony.csv";
const char* kParsimonySvg = "parsimony.svg";
const char* kCutoffs = "cutoffs.json";
const char* kFit = "pom_fit.json";
const char* kCardJson = "scorecard.json";
const char* kCardCsv = "scorecard.csv";
const char* kLookup = "lookup.csv";
const char* kReportJson = "report.json";
const char* kReportCsv = "report.csv";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) && !doc.at(key).is_null() ? doc.at(key).get<T>() : fallback;
}

fs::path require_artifact(const PipelineConfig& config, const char* name, const char* producer) {
  fs::path p = config.out_dir / name;
  if (!fs::exists(p)) {
    throw ValidationError(std::string("missing artifact ") + p.string() + "; run `autoscore " + producer + "` first");
  }
  return p;
}

struct Prepared {
  Schema schema;
  DataTable all;  // imputed
  SplitIndices split;
  DataTable train, validation, test;
};

Prepared prepare(const PipelineConfig& config) {
  Prepared p;
  p.schema = Schema::load(config.schema_path.string());
  DataTable raw = load_csv(config.data_path.string(), p.schema);
  p.split = read_splits_csv(require_artifact(config, kSplits, "split").string());
  if (p.split.total() != raw.rows()) throw ValidationError("splits.csv does not match the data's row count; rerun split");
  auto plan = ImputationPlan::from_json(json::parse(read_text_file(require_artifact(config, kImputation, "split").string())));
  p.all = impute(raw, plan);
  p.train = p.all.select_rows(p.split.train);
  p.validation = p.all.select_rows(p.split.validation);
  p.test = p.all.select_rows(p.split.test);
  return p;
}

std::vector<std::string> selected_variables(const PipelineConfig& config, std::vector<fs::path>& inputs) {
  if (!config.selected_variables.empty()) return config.selected_variables;
  if (config.top_k == 0) throw ValidationError("config must set selected_variables or top_k before build");
  auto ranking_path = require_artifact(config, kRanking, "rank");
  inputs.push_back(ranking_path);
  auto ranking = read_ranking_csv(ranking_path.string());
  if (config.top_k > ranking.size()) throw ValidationError("top_k exceeds the number of ranked variables");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < config.top_k; ++k) out.push_back(ranking[k].variable);
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

CommandResult build_impl(const PipelineConfig& config, const std::optional<fs::path>& overrides, const std::string& stage) {
  Prepared prep = prepare(config);
  std::vector<fs::path> inputs{config.data_path, config.schema_path, config.out_dir / kSplits, config.out_dir / kImputation};
  const auto variables = selected_variables(config, inputs);

  CutoffSpec cutoffs = training_cutoffs(prep.train, config.scoring);
  if (overrides) {
    if (!fs::exists(*overrides)) throw ValidationError("cut-off override file not found: " + overrides->string());
    inputs.push_back(*overrides);
    CutoffSpec user = CutoffSpec::load(overrides->string());
    for (const auto& [name, cuts] : user.cutoffs) {
      (void)cuts;
      if (std::find(variables.begin(), variables.end(), name) == variables.end()) {
        throw ValidationError("cut-off override for variable '" + name + "' which is not selected");
      }
    }
    cutoffs = apply_overrides(cutoffs, user);
  }

  ScoringModel model = train_scoring_model(prep.train, variables, cutoffs, config.scoring);
  if (!model.converged()) {
    std::string why = model.fit.warnings.empty() ? "" : ": " + model.fit.warnings.back();
    throw ComputationError("proportional odds fit did not converge" + why);
  }

  const std::string fit_text = dump(model.fit.to_json());
  model.card.fit_digest = sha256_hex(fit_text);
  const DataTable train_sel = prep.train.select_columns(variables);
  const auto scores = total_scores(model.card, categorize(train_sel, model.cutoffs));
  LookupTable lookup = build_lookup(model.card, scores, prep.train.outcome(), config.lookup);

  CommandResult result;
  result.warnings = model.fit.warnings;
  write_text_file((config.out_dir / kCutoffs).string(), dump(model.cutoffs.to_json()));
  write_text_file((config.out_dir / kFit).string(), fit_text);
  write_text_file((config.out_dir / kCardJson).string(), dump(model.card.to_json()));
  model.card.write_csv((config.out_dir / kCardCsv).string());
  lookup.write_csv((config.out_dir / kLookup).string());
  for (const char* f : {kCutoffs, kFit, kCardJson, kCardCsv, kLookup}) result.outputs.push_back(config.out_dir / f);

  RunManifest manifest(config.out_dir);
  manifest.record(stage, config.hash(), inputs, result.outputs, result.warnings);
  manifest.save();
  return result;
}

}  // namespace

std::string tool_version() {
#ifdef AUTOSCORE_VERSION
  return AUTOSCORE_VERSION;
#else
  return "0.0.0";
#endif
}

PipelineConfig PipelineConfig::from_json(const json& doc, const fs::path& base_dir) {
  PipelineConfig c;
  try {
    c.data_path = resolve(base_dir, doc.at("data").get<std::string>());
    c.schema_path = resolve(base_dir, doc.at("schema").get<std::string>());
    c.out_dir = resolve(base_dir, get_or<std::string>(doc, "out_dir", "out"));
    c.seed = get_or<std::uint64_t>(doc, "seed", 42);

    if (doc.contains("split")) {
      const auto& s = doc.at("split");
      if (s.contains("ratios")) {
        auto r = s.at("ratios").get<std::vector<double>>();
        if (r.size() != 3) throw ValidationError("split.ratios must have three entries");
        c.ratios = {r[0], r[1], r[2]};
      }
      if (s.contains("seed") && !s.at("seed").is_null()) c.split_seed = s.at("seed").get<std::uint64_t>();
    }
    c.imputation_reference = parse_split_part(get_or<std::string>(doc, "imputation_reference", "train"));
    if (c.imputation_reference == SplitPart::test) throw ValidationError("imputation_reference must be train or validation");

    if (doc.contains("forest")) {
      const auto& f = doc.at("forest");
      c.forest.n_trees = get_or<std::size_t>(f, "n_trees", 100);
      c.forest.mtry = get_or<std::size_t>(f, "mtry", 0);
      c.forest.min_node_size = get_or<std::size_t>(f, "min_node_size", 1);
      c.forest.max_depth = get_or<std::size_t>(f, "max_depth", 0);
      c.forest.threads = get_or<std::size_t>(f, "threads", 1);
      if (f.contains("seed") && !f.at("seed").is_null()) c.forest_seed = f.at("seed").get<std::uint64_t>();
    }
    if (c.forest.n_trees < 1) throw ValidationError("forest.n_trees must be >= 1");

    c.scoring.percentiles = get_or<std::vector<double>>(doc, "percentiles", default_percentiles());
    c.scoring.min_bin_fraction = get_or<double>(doc, "min_bin_fraction", 0.01);
    c.scoring.link = LinkFunction::parse(get_or<std::string>(doc, "link", "logit"));
    if (doc.contains("max_total_target") && doc.at("max_total_target").is_null()) {
      c.scoring.max_total_target.reset();
    } else {
      c.scoring.max_total_target = get_or<double>(doc, "max_total_target", 100.0);
      if (!(*c.scoring.max_total_target > 0)) throw ValidationError("max_total_target must be positive");
    }
    c.scoring.grad_tol = get_or<double>(doc, "grad_tol", 1e-8);
    c.scoring.max_iter = get_or<int>(doc, "max_iter", 100);
    if (!(c.scoring.grad_tol > 0) || c.scoring.max_iter < 1) throw ValidationError("grad_tol and max_iter must be positive");
    c.parsimony_max_variables = get_or<std::size_t>(doc, "parsimony_max_variables", 0);
    c.selected_variables = get_or<std::vector<std::string>>(doc, "selected_variables", {});
    c.top_k = get_or<std::size_t>(doc, "top_k", 0);
    if (doc.contains("cutoff_overrides") && !doc.at("cutoff_overrides").is_null()) {
      c.cutoff_overrides = resolve(base_dir, doc.at("cutoff_overrides").get<std::string>());
    }

    if (doc.contains("lookup")) {
      c.lookup.bin_width = get_or<int>(doc.at("lookup"), "bin_width", 5);
      c.lookup.min_bin_count = get_or<std::size_t>(doc.at("lookup"), "min_bin_count", 20);
    }
    if (c.lookup.bin_width < 1 || c.lookup.min_bin_count < 1) throw ValidationError("lookup bin settings must be >= 1");

    if (doc.contains("bootstrap")) {
      const auto& b = doc.at("bootstrap");
      c.bootstrap_resamples = get_or<std::size_t>(b, "B", 100);
      c.bootstrap_alpha = get_or<double>(b, "alpha", 0.05);
      if (b.contains("seed") && !b.at("seed").is_null()) c.bootstrap_seed = b.at("seed").get<std::uint64_t>();
      const auto method = get_or<std::string>(b, "method", "bc");
      if (method == "bca") throw ValidationError("bootstrap method 'bca' is unimplemented; use 'bc'");
      if (method != "bc") throw ValidationError("unknown bootstrap method '" + method + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }

  c.ratios.validate();
  if (c.bootstrap_resamples < 2) throw ValidationError("bootstrap.B must be >= 2");
  if (!(c.bootstrap_alpha > 0 && c.bootstrap_alpha < 1)) throw ValidationError("bootstrap.alpha must lie in (0, 1)");
  for (std::size_t k = 0; k < c.scoring.percentiles.size(); ++k) {
    const double p = c.scoring.percentiles[k];
    if (!(p > 0 && p < 100) || (k > 0 && !(p > c.scoring.percentiles[k - 1]))) {
      throw ValidationError("percentiles must be strictly increasing within (0, 100)");
    }
  }
  if (c.scoring.min_bin_fraction < 0 || c.scoring.min_bin_fraction >= 1) throw ValidationError("min_bin_fraction must lie in [0, 1)");

  if (!fs::exists(c.data_path)) throw ValidationError("data file not found: " + c.data_path.string());
  if (!fs::exists(c.schema_path)) throw ValidationError("schema file not found: " + c.schema_path.string());
  if (c.cutoff_overrides && !fs::exists(*c.cutoff_overrides)) {
    throw ValidationError("cut-off override file not found: " + c.cutoff_overrides->string());
  }
  const Schema schema = Schema::load(c.schema_path.string());
  std::set<std::string> seen;
  for (const auto& v : c.selected_variables) {
    if (!schema.find(v)) throw ValidationError("selected variable not in schema: " + v);
    if (!seen.insert(v).second) throw ValidationError("selected variable listed twice: " + v);
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path.string()));
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(doc, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

json PipelineConfig::to_json() const {
  json doc = {{"data", data_path.string()},
              {"schema", schema_path.string()},
              {"seed", seed},
              {"split", {{"ratios", {ratios.train, ratios.validation, ratios.test}}, {"seed", effective_split_seed()}}},
              {"imputation_reference", to_string(imputation_reference)},
              {"forest",
               {{"n_trees", forest.n_trees},
                {"mtry", forest.mtry},
                {"min_node_size", forest.min_node_size},
                {"max_depth", forest.max_depth},
                {"seed", effective_forest_seed()}}},
              {"percentiles", scoring.percentiles},
              {"min_bin_fraction", scoring.min_bin_fraction},
              {"link", scoring.link.name()},
              {"grad_tol", scoring.grad_tol},
              {"max_iter", scoring.max_iter},
              {"parsimony_max_variables", parsimony_max_variables},
              {"selected_variables", selected_variables},
              {"top_k", top_k},
              {"lookup", {{"bin_width", lookup.bin_width}, {"min_bin_count", lookup.min_bin_count}}},
              {"bootstrap", {{"B", bootstrap_resamples}, {"alpha", bootstrap_alpha}, {"seed", effective_bootstrap_seed()}}}};
  doc["max_total_target"] = scoring.max_total_target ? json(*scoring.max_total_target) : json(nullptr);
  doc["cutoff_overrides"] = cutoff_overrides ? json(cutoff_overrides->string()) : json(nullptr);
  return doc;
}

void PipelineConfig::override_seed(std::uint64_t s) {
  seed = s;
  split_seed.reset();
  forest_seed.reset();
  bootstrap_seed.reset();
}

std::uint64_t PipelineConfig::effective_split_seed() const { return split_seed.value_or(derive_seed(seed, kSplitStream)); }
std::uint64_t PipelineConfig::effective_forest_seed() const { return forest_seed.value_or(derive_seed(seed, kForestStream)); }
std::uint64_t PipelineConfig::effective_bootstrap_seed() const {
  return bootstrap_seed.value_or(derive_seed(seed, kBootstrapStream));
}

std::string PipelineConfig::hash() const {
  // Paths are excluded so that identical configs in different directories
  // hash alike.
  json doc = to_json();
  doc.erase("data");
  doc.erase("schema");
  doc.erase("cutoff_overrides");
  return sha256_hex(doc.dump());
}

RunManifest::RunManifest(fs::path out_dir) : path_(std::move(out_dir) / "manifest.json") {
  if (fs::exists(path_)) {
    try {
      doc_ = json::parse(read_text_file(path_.string()));
    } catch (const json::parse_error&) {
      doc_ = json::object();
    }
  }
  if (!doc_.is_object()) doc_ = json::object();
  doc_["tool_version"] = tool_version();
  if (!doc_.contains("stages")) doc_["stages"] = json::object();
}

void RunManifest::record(const std::string& stage, const std::string& config_hash, const std::vector<fs::path>& inputs,
                         const std::vector<fs::path>& outputs, const std::vector<std::string>& warnings) {
  json in = json::object(), out = json::object();
  for (const auto& p : inputs) in[p.filename().string()] = sha256_file(p.string());
  for (const auto& p : outputs) out[p.filename().string()] = sha256_file(p.string());
  doc_["stages"][stage] = {{"config_hash", config_hash},
                           {"inputs", in}, {"outputs", out}, {"timestamp", utc_timestamp()}, {"warnings", warnings}};
}

std::map<std::string, std::string> RunManifest::artifact_digests() const {
  std::map<std::string, std::string> out;
  for (const auto& [stage, entry] : doc_.at("stages").items()) {
    (void)stage;
    for (const auto& [name, digest] : entry.at("outputs").items()) out[name] = digest.get<std::string>();
  }
  return out;
}

void RunManifest::save() const { write_text_file(path_.string(), doc_.dump(2) + "\n"); }

CommandResult cmd_split(const PipelineConfig& config) {
  fs::create_directories(config.out_dir);
  const Schema schema = Schema::load(config.schema_path.string());
  const DataTable table = load_csv(config.data_path.string(), schema);
  const SplitIndices split = stratified_split(table, config.ratios, config.effective_split_seed());
  const ImputationPlan plan = plan_imputation(table, split, config.imputation_reference);

  CommandResult result;
  write_splits_csv((config.out_dir / kSplits).string(), split);
  write_text_file((config.out_dir / kImputation).string(), dump(plan.to_json()));
  result.outputs = {config.out_dir / kSplits, config.out_dir / kImputation};

  RunManifest manifest(config.out_dir);
  manifest.record("split", config.hash(), {config.data_path, config.schema_path}, result.outputs);
  manifest.save();
  return result;
}

CommandResult cmd_rank(const PipelineConfig& config) {
  Prepared prep = prepare(config);
  ForestParams params = config.forest;
  params.seed = config.effective_forest_seed();
  const Forest forest = train_forest(prep.train, params);
  const auto ranking = variable_importance(forest);

  CommandResult result;
  write_ranking_csv((config.out_dir / kRanking).string(), ranking);
  result.outputs = {config.out_dir / kRanking};
  RunManifest manifest(config.out_dir);
  manifest.record("rank", config.hash(),
                  {config.data_path, config.schema_path, config.out_dir / kSplits, config.out_dir / kImputation},
                  result.outputs);
  manifest.save();
  return result;
}

CommandResult cmd_parsimony(const PipelineConfig& config, bool svg) {
  Prepared prep = prepare(config);
  const auto ranking_path = require_artifact(config, kRanking, "rank");
  const auto ranking = read_ranking_csv(ranking_path.string());
  const auto curve = parsimony_curve(ranking, prep.train, prep.validation, config.scoring, config.parsimony_max_variables);

  CommandResult result;
  for (const auto& p : curve.points) {
    if (!p.converged) result.warnings.push_back("fit with k=" + std::to_string(p.k) + " variables did not converge");
  }
  curve.write_csv((config.out_dir / kParsimonyCsv).string());
  result.outputs.push_back(config.out_dir / kParsimonyCsv);
  if (svg) {
    curve.write_svg((config.out_dir / kParsimonySvg).string());
    result.outputs.push_back(config.out_dir / kParsimonySvg);
  }
  RunManifest manifest(config.out_dir);
  manifest.record("parsimony", config.hash(),
                  {config.data_path, config.schema_path, config.out_dir / kSplits, config.out_dir / kImputation, ranking_path},
                  result.outputs, result.warnings);
  manifest.save();
  return result;
}

CommandResult cmd_build(const PipelineConfig& config) { return build_impl(config, std::nullopt, "build"); }

CommandResult cmd_finetune(const PipelineConfig& config, const std::optional<fs::path>& overrides) {
  auto path = overrides ? overrides : config.cutoff_overrides;
  if (!path) throw ValidationError("finetune needs a cut-off override file (--overrides or cutoff_overrides in config)");
  return build_impl(config, path, "finetune");
}

CommandResult cmd_evaluate(const PipelineConfig& config, bool with_pom, bool with_forest) {
  Prepared prep = prepare(config);
  const auto card_path = require_artifact(config, kCardJson, "build");
  const ScoreCard card = ScoreCard::load(card_path.string());
  std::vector<std::string> variables;
  for (const auto& v : card.variables) variables.push_back(v.name);

  const DataTable test = prep.test.select_columns(variables);
  const CategorizedTable test_cat = categorize(test, card.cutoffs());
  const auto& outcomes = test.outcome().values;
  const int J = test.outcome().categories();
  EvalOptions options{config.bootstrap_resamples, config.bootstrap_alpha, config.effective_bootstrap_seed()};

  std::vector<EvalReport> reports;
  const auto totals = total_scores(card, test_cat);
  const std::vector<double> scores(totals.begin(), totals.end());
  reports.push_back(evaluate_scores("AutoScore-Ordinal", variables.size(), scores, scores, outcomes, J, options));

  std::vector<fs::path> inputs{config.data_path, config.schema_path, config.out_dir / kSplits, config.out_dir / kImputation,
                               card_path};
  if (with_pom) {
    const auto fit_path = require_artifact(config, kFit, "build");
    inputs.push_back(fit_path);
    const PomFit fit = PomFit::from_json(json::parse(read_text_file(fit_path.string())));
    const auto eta = linear_predictors(fit, test_cat);
    reports.push_back(evaluate_scores("POM", fit.variables.size(), eta, eta, outcomes, J, options));
  }
  if (with_forest) {
    ForestParams params = config.forest;
    params.seed = config.effective_forest_seed();
    const Forest forest = train_forest(prep.train.select_columns(variables), params);
    const auto votes = forest_vote_fractions(forest, test);
    const auto predicted = forest_predict(forest, test);
    std::vector<double> expected(test.rows(), 0.0), labels(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) {
      for (int j = 0; j < J; ++j) expected[i] += (j + 1) * votes[i * static_cast<std::size_t>(J) + static_cast<std::size_t>(j)];
      labels[i] = predicted[i];
    }
    reports.push_back(evaluate_scores("RF", variables.size(), expected, labels, outcomes, J, options));
  }

  CommandResult result;
  json doc = {{"split", "test"}, {"reports", json::array()}};
  for (const auto& r : reports) {
    doc["reports"].push_back(r.to_json());
    for (const auto& w : r.mauc.warnings) result.warnings.push_back(r.model + " mAUC: " + w);
    for (const auto& w : r.c_index.warnings) result.warnings.push_back(r.model + " c-index: " + w);
  }
  write_text_file((config.out_dir / kReportJson).string(), dump(doc));
  write_report_csv((config.out_dir / kReportCsv).string(), reports);
  result.outputs = {config.out_dir / kReportJson, config.out_dir / kReportCsv};
  RunManifest manifest(config.out_dir);
  manifest.record("evaluate", config.hash(), inputs, result.outputs, result.warnings);
  manifest.save();
  return result;
}

CommandResult cmd_predict(const PredictRequest& request) {
  const ScoreCard card = ScoreCard::load(request.card.string());
  const LookupTable lookup = LookupTable::read_csv(request.lookup.string());
  if (lookup.bins.back().upper != card.max_total) throw ValidationError("lookup table does not cover the scorecard's score range");
  if (!card.outcome_labels.empty() && static_cast<std::size_t>(lookup.categories()) != card.outcome_labels.size()) {
    throw ValidationError("lookup table and scorecard disagree on the number of outcome categories");
  }
  std::optional<ImputationPlan> plan;
  if (request.imputation_plan) {
    plan = ImputationPlan::from_json(json::parse(read_text_file(request.imputation_plan->string())));
  }

  const auto doc = csv::read_file(request.input.string());
  std::vector<std::size_t> column_of(card.variables.size(), doc.header.size());
  for (std::size_t k = 0; k < doc.header.size(); ++k) {
    bool known = false;
    for (std::size_t v = 0; v < card.variables.size(); ++v) {
      if (card.variables[v].name == doc.header[k]) {
        column_of[v] = k;
        known = true;
      }
    }
    if (!known) throw ValidationError("column '" + doc.header[k] + "' is not a scorecard variable");
  }
  for (std::size_t v = 0; v < card.variables.size(); ++v) {
    if (column_of[v] == doc.header.size()) throw ValidationError("input is missing scorecard variable '" + card.variables[v].name + "'");
  }

  std::ostringstream out;
  csv::Record header = doc.header;
  header.push_back("total_score");
  for (int j = 1; j <= lookup.categories(); ++j) header.push_back("p_" + std::to_string(j));
  csv::write_record(out, header);
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto& rec = doc.rows[i];
    if (rec.size() != doc.header.size()) throw ValidationError("row " + std::to_string(i + 1) + " has the wrong number of fields");
    int total = 0;
    for (std::size_t v = 0; v < card.variables.size(); ++v) {
      const auto& var = card.variables[v];
      std::string cell = rec[column_of[v]];
      if (cell.empty()) {
        if (var.source_kind != ColumnKind::continuous || !plan || !plan->fill.count(var.name)) {
          throw ValidationError("row " + std::to_string(i + 1) + ": missing value for '" + var.name + "' and no imputation value");
        }
        total += var.points[var.level_for(plan->fill.at(var.name))];
      } else {
        total += var.points[var.level_for(cell)];
      }
    }
    csv::Record row = rec;
    row.push_back(std::to_string(total));
    for (double p : predict_probs(lookup, total)) row.push_back(csv::format_double(p));
    csv::write_record(out, row);
  }
  write_text_file(request.output.string(), out.str());
  return {{request.output}, {}};
}

CommandResult cmd_simulate(const fs::path& spec_path, const fs::path& output, const std::optional<fs::path>& schema_output) {
  json doc;
  try {
    doc = json::parse(read_text_file(spec_path.string()));
  } catch (const json::parse_error& e) {
    throw ValidationError("simulation spec is not valid JSON: " + std::string(e.what()));
  }
  const SyntheticSpec spec = SyntheticSpec::from_json(doc);
  const DataTable table = generate_synthetic(spec);
  write_csv(output.string(), table);
  CommandResult result{{output}, {}};
  if (schema_output) {
    write_text_file(schema_output->string(), dump(table.schema().to_json()));
    result.outputs.push_back(*schema_output);
  }
  return result;
}

}  // namespace autoscore
