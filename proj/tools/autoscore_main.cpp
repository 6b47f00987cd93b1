// autoscore: command-line front end for the scorecard pipeline.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "autoscore/error.hpp"
#include "autoscore/pipeline.hpp"

namespace fs = std::filesystem;
using namespace autoscore;

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

void report(const CommandResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& p : result.outputs) std::cout << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer point scorecards for ordinal outcomes", "autoscore"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool svg = true, pom = false, forest = false;
  std::string overrides;
  PredictRequest predict;
  std::string plan_path;
  std::string spec_path, sim_output, schema_out;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Pipeline config JSON")->required();
    sub->add_option("--out-dir", out_dir, "Artifact directory (overrides config)");
    sub->add_option("--seed", seed, "Master seed (overrides config and stage seeds)");
  };

  auto* split = app.add_subcommand("split", "Stratified train/validation/test split and imputation plan");
  auto* rank = app.add_subcommand("rank", "Random-forest variable ranking");
  auto* parsimony = app.add_subcommand("parsimony", "Validation mAUC against number of variables");
  auto* build = app.add_subcommand("build", "Scorecard and lookup table from the selected variables");
  auto* finetune = app.add_subcommand("finetune", "Rebuild with user cut-offs");
  auto* evaluate = app.add_subcommand("evaluate", "Test-set mAUC and c-index with bootstrap intervals");
  for (auto* sub : {split, rank, parsimony, build, finetune, evaluate}) add_config(sub);
  parsimony->add_flag("--svg,!--no-svg", svg, "Also write parsimony.svg");
  finetune->add_option("--overrides", overrides, "Cut-off override JSON");
  evaluate->add_flag("--pom", pom, "Add a row for the unrounded proportional odds model");
  evaluate->add_flag("--forest", forest, "Add a random-forest comparator row");

  auto* predict_cmd = app.add_subcommand("predict", "Score new rows with a scorecard and lookup table");
  predict_cmd->add_option("--card", predict.card, "scorecard.json")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--lookup", predict.lookup, "lookup.csv")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--input", predict.input, "Rows to score (CSV)")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--output", predict.output, "Scored CSV")->required();
  predict_cmd->add_option("--plan", plan_path, "imputation.json for missing continuous cells")->check(CLI::ExistingFile);

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("--spec", spec_path, "Simulation spec JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--output", sim_output, "Data CSV")->required();
  simulate->add_option("--schema-out", schema_out, "Also write the matching schema JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    auto config = [&] {
      PipelineConfig c = PipelineConfig::load(config_path);
      if (!out_dir.empty()) c.out_dir = out_dir;
      if (seed) c.override_seed(*seed);
      return c;
    };
    CommandResult result;
    if (*split) {
      result = cmd_split(config());
    } else if (*rank) {
      result = cmd_rank(config());
    } else if (*parsimony) {
      result = cmd_parsimony(config(), svg);
    } else if (*build) {
      result = cmd_build(config());
    } else if (*finetune) {
      result = cmd_finetune(config(), overrides.empty() ? std::nullopt : std::optional<fs::path>(overrides));
    } else if (*evaluate) {
      result = cmd_evaluate(config(), pom, forest);
    } else if (*predict_cmd) {
      if (!plan_path.empty()) predict.imputation_plan = plan_path;
      result = cmd_predict(predict);
    } else if (*simulate) {
      result = cmd_simulate(spec_path, sim_output,
                            schema_out.empty() ? std::nullopt : std::optional<fs::path>(schema_out));
    }
    report(result);
    return kOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
