#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"
#include "autoscore/pipeline.hpp"
#include "test_util.hpp"

using namespace autoscore;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kSpec = R"({
  "n": 1500, "theta": [-0.8, 1.2], "seed": 21, "noise_variables": 2,
  "predictors": [
    {"name": "age", "distribution": "normal", "mean": 60, "sd": 12, "beta": 0.06},
    {"name": "pulse", "distribution": "uniform", "min": 50, "max": 130, "beta": 0.02},
    {"name": "cancer", "distribution": "categorical", "categories": ["No", "Yes"],
     "probabilities": [0.8, 0.2], "effects": [0, 1.0]}]})";

// Simulated data plus a config in a fresh directory.
fs::path make_project(const std::string& name, json extra = json::object()) {
  auto dir = autoscore::testing::temp_dir(name);
  write_text_file((dir / "spec.json").string(), kSpec);
  cmd_simulate(dir / "spec.json", dir / "data.csv", dir / "schema.json");
  // Age is offset so its percentile cut-offs sit well inside the data.
  json config = {{"data", "data.csv"}, {"schema", "schema.json"}, {"out_dir", "out"}, {"seed", 3},
                 {"forest", {{"n_trees", 30}}}, {"bootstrap", {{"B", 20}}}, {"top_k", 3}};
  for (auto& [k, v] : extra.items()) config[k] = v;
  write_text_file((dir / "config.json").string(), config.dump(2));
  return dir;
}

PipelineConfig load(const fs::path& dir) { return PipelineConfig::load(dir / "config.json"); }

void run_all(const PipelineConfig& c) {
  cmd_split(c);
  cmd_rank(c);
  cmd_parsimony(c);
  cmd_build(c);
  cmd_evaluate(c, true, true);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AUTOSCORE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAndDerivedSeeds) {
  auto dir = make_project("config_defaults");
  auto c = load(dir);
  EXPECT_EQ(c.ratios.train, 0.70);
  EXPECT_EQ(c.bootstrap_resamples, 20u);
  EXPECT_EQ(c.out_dir, dir / "out");
  EXPECT_NE(c.effective_split_seed(), c.effective_forest_seed());
  const auto h = c.hash();
  c.override_seed(4);
  EXPECT_NE(c.hash(), h);
}

TEST(Config, ValidationErrors) {
  EXPECT_THROW(load(make_project("cfg_b0", {{"bootstrap", {{"B", 0}}}})), ValidationError);
  EXPECT_THROW(load(make_project("cfg_bca", {{"bootstrap", {{"B", 10}, {"method", "bca"}}}})), ValidationError);
  EXPECT_THROW(load(make_project("cfg_ratio", {{"split", {{"ratios", {0.5, 0.2, 0.2}}}}})), ValidationError);
  EXPECT_THROW(load(make_project("cfg_var", {{"selected_variables", {"age", "weight"}}})), ValidationError);
  EXPECT_THROW(load(make_project("cfg_pct", {{"percentiles", {20, 5}}})), ValidationError);
  EXPECT_THROW(load(make_project("cfg_data", {{"data", "nope.csv"}})), ValidationError);
}

TEST(Pipeline, StagesProduceArtifactsAndManifest) {
  auto dir = make_project("stages");
  auto c = load(dir);
  EXPECT_THROW(cmd_rank(c), ValidationError);  // split has not run
  run_all(c);
  for (const char* f : {"splits.csv", "imputation.json", "ranking.csv", "parsimony.csv", "parsimony.svg", "cutoffs.json",
                        "pom_fit.json", "scorecard.json", "scorecard.csv", "lookup.csv", "report.json", "report.csv",
                        "manifest.json"}) {
    EXPECT_TRUE(fs::exists(c.out_dir / f)) << f;
  }
  auto manifest = json::parse(read_text_file((c.out_dir / "manifest.json").string()));
  EXPECT_EQ(manifest.at("tool_version"), tool_version());
  for (const char* stage : {"split", "rank", "parsimony", "build", "evaluate"}) {
    ASSERT_TRUE(manifest.at("stages").contains(stage)) << stage;
    EXPECT_EQ(manifest["stages"][stage]["config_hash"], c.hash());
  }
  EXPECT_EQ(manifest["stages"]["build"]["outputs"]["scorecard.json"], sha256_file((c.out_dir / "scorecard.json").string()));

  auto card = json::parse(read_text_file((c.out_dir / "scorecard.json").string()));
  EXPECT_EQ(card["provenance"]["fit_digest"], sha256_file((c.out_dir / "pom_fit.json").string()));
  auto report = json::parse(read_text_file((c.out_dir / "report.json").string()));
  ASSERT_EQ(report["reports"].size(), 3u);
  EXPECT_EQ(report["reports"][1]["model"], "POM");
  EXPECT_EQ(report["reports"][2]["model"], "RF");
  auto rows = csv::read_file((c.out_dir / "report.csv").string());
  EXPECT_EQ(rows.rows.size(), 3u);
}

TEST(Pipeline, RerunIsByteIdentical) {
  auto a = load(make_project("rerun_a"));
  auto b = load(make_project("rerun_b"));
  run_all(a);
  run_all(b);
  EXPECT_EQ(RunManifest(a.out_dir).artifact_digests(), RunManifest(b.out_dir).artifact_digests());
  const auto first = RunManifest(a.out_dir).artifact_digests();
  cmd_build(a);
  EXPECT_EQ(RunManifest(a.out_dir).artifact_digests(), first);
}

TEST(Pipeline, ExplicitVariableListHonoured) {
  auto dir = make_project("explicit", {{"selected_variables", {"pulse", "cancer"}}});
  auto c = load(dir);
  cmd_split(c);
  cmd_build(c);  // no ranking needed
  auto card = ScoreCard::load((c.out_dir / "scorecard.json").string());
  ASSERT_EQ(card.variables.size(), 2u);
  EXPECT_EQ(card.variables[0].name, "pulse");
  EXPECT_EQ(card.variables[1].name, "cancer");
}

TEST(Pipeline, FinetuneOverrides) {
  auto dir = make_project("finetune", {{"selected_variables", {"age", "pulse", "cancer"}}});
  auto c = load(dir);
  cmd_split(c);
  cmd_build(c);
  const auto built = RunManifest(c.out_dir).artifact_digests();

  write_text_file((dir / "empty.json").string(), "{}");
  cmd_finetune(c, dir / "empty.json");
  auto tuned = RunManifest(c.out_dir).artifact_digests();
  for (const char* f : {"scorecard.json", "scorecard.csv", "lookup.csv", "pom_fit.json", "cutoffs.json"}) {
    EXPECT_EQ(tuned.at(f), built.at(f)) << f;
  }

  write_text_file((dir / "age.json").string(), R"({"age": [45, 55, 65, 75]})");
  cmd_finetune(c, dir / "age.json");
  auto card = ScoreCard::load((c.out_dir / "scorecard.json").string());
  EXPECT_EQ(card.variable("age").cutoffs, (std::vector<double>{45, 55, 65, 75}));
  EXPECT_EQ(card.variable("age").levels.front(), "<45");

  write_text_file((dir / "bad.json").string(), R"({"age": [50, 40]})");
  try {
    cmd_finetune(c, dir / "bad.json");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("age"), std::string::npos);
  }
}

TEST(Predict, ImputesWithPlanAndRejectsUnknownColumns) {
  auto dir = make_project("predict", {{"selected_variables", {"age", "pulse", "cancer"}}});
  auto c = load(dir);
  cmd_split(c);
  cmd_build(c);
  write_text_file((dir / "rows.csv").string(), "age,pulse,cancer\n70,,Yes\n30,60,No\n");
  PredictRequest req{c.out_dir / "scorecard.json", c.out_dir / "lookup.csv", dir / "rows.csv", dir / "scored.csv",
                     std::nullopt};
  EXPECT_THROW(cmd_predict(req), ValidationError);
  req.imputation_plan = c.out_dir / "imputation.json";
  cmd_predict(req);
  auto out = csv::read_file((dir / "scored.csv").string());
  EXPECT_EQ(out.header, (csv::Record{"age", "pulse", "cancer", "total_score", "p_1", "p_2", "p_3"}));
  ASSERT_EQ(out.rows.size(), 2u);

  auto card = ScoreCard::load((c.out_dir / "scorecard.json").string());
  auto plan = ImputationPlan::from_json(json::parse(read_text_file((c.out_dir / "imputation.json").string())));
  const int expected = total_score(card, {{"age", "70"}, {"pulse", csv::format_double(plan.fill.at("pulse"))}, {"cancer", "Yes"}});
  EXPECT_EQ(out.rows[0][3], std::to_string(expected));

  write_text_file((dir / "extra.csv").string(), "age,pulse,cancer,weight\n70,80,Yes,3\n");
  req.input = dir / "extra.csv";
  EXPECT_THROW(cmd_predict(req), ValidationError);
}

TEST(Predict, Figure3Walkthrough) {
  auto dir = autoscore::testing::temp_dir("figure3_predict");
  PredictRequest req{autoscore::testing::fixture("figure3_card.json"), autoscore::testing::fixture("figure3_lookup.csv"),
                     autoscore::testing::fixture("figure3_patient.csv"), dir / "out.csv", std::nullopt};
  cmd_predict(req);
  auto out = csv::read_file((dir / "out.csv").string());
  ASSERT_EQ(out.rows.size(), 1u);
  const auto& r = out.rows[0];
  EXPECT_EQ(r[8], "48");
  EXPECT_EQ(r[9], "0.545");
  EXPECT_EQ(r[10], "0.289");
  EXPECT_EQ(r[11], "0.166");
}

TEST(Simulate, DeterministicAndMalformedSpec) {
  auto dir = autoscore::testing::temp_dir("simulate");
  write_text_file((dir / "spec.json").string(), kSpec);
  cmd_simulate(dir / "spec.json", dir / "a.csv", std::nullopt);
  cmd_simulate(dir / "spec.json", dir / "b.csv", std::nullopt);
  EXPECT_EQ(sha256_file((dir / "a.csv").string()), sha256_file((dir / "b.csv").string()));
  write_text_file((dir / "bad.json").string(), R"({"n": 10, "theta": [2, 1]})");
  EXPECT_THROW(cmd_simulate(dir / "bad.json", dir / "c.csv", std::nullopt), ValidationError);
  write_text_file((dir / "junk.json").string(), "{not json");
  EXPECT_THROW(cmd_simulate(dir / "junk.json", dir / "c.csv", std::nullopt), ValidationError);
}

TEST(Cli, ExitCodes) {
  auto dir = make_project("cli");
  const std::string cfg = "--config " + (dir / "config.json").string();
  EXPECT_EQ(run_cli("split " + cfg), 0);
  EXPECT_EQ(run_cli("rank " + cfg + " --seed 5"), 0);
  EXPECT_EQ(run_cli("bogus"), 1);
  EXPECT_EQ(run_cli("build --config " + (dir / "missing.json").string()), 1);
  EXPECT_EQ(run_cli("predict --card " + autoscore::testing::fixture("figure3_card.json") + " --lookup " +
                    autoscore::testing::fixture("figure3_lookup.csv") + " --input " +
                    autoscore::testing::fixture("figure3_patient.csv") + " --output " + (dir / "p.csv").string()),
            0);

  // A build whose fit cannot converge within one iteration is a runtime failure.
  auto slow = make_project("cli_slow");
  auto cfg_json = json::parse(read_text_file((slow / "config.json").string()));
  EXPECT_EQ(run_cli("split --config " + (slow / "config.json").string()), 0);
  EXPECT_EQ(run_cli("rank --config " + (slow / "config.json").string()), 0);
  cfg_json["max_iter"] = 1;
  write_text_file((slow / "config.json").string(), cfg_json.dump());
  EXPECT_EQ(run_cli("build --config " + (slow / "config.json").string()), 2);
}
