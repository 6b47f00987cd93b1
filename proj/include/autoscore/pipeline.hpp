#pragma once

// Stage commands behind the `autoscore` CLI. Each command reads the config
// plus the artifacts of earlier stages from the output directory, writes its
// own artifacts there, and records their digests in manifest.json.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/data.hpp"
#include "autoscore/forest.hpp"
#include "autoscore/parsimony.hpp"

namespace autoscore {

struct PipelineConfig {
  std::filesystem::path data_path;
  std::filesystem::path schema_path;
  std::filesystem::path out_dir;
  std::uint64_t seed = 42;

  SplitRatios ratios;
  std::optional<std::uint64_t> split_seed;
  SplitPart imputation_reference = SplitPart::train;

  ForestParams forest;
  std::optional<std::uint64_t> forest_seed;

  ScoringSettings scoring;
  std::size_t parsimony_max_variables = 0;
  std::vector<std::string> selected_variables;
  std::size_t top_k = 0;
  std::optional<std::filesystem::path> cutoff_overrides;

  LookupOptions lookup;

  std::size_t bootstrap_resamples = 100;
  double bootstrap_alpha = 0.05;
  std::optional<std::uint64_t> bootstrap_seed;

  // Relative paths resolve against `base_dir`. Validates everything that can
  // be checked before any work starts.
  static PipelineConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  // Replaces the master seed; per-stage seeds are then derived from it.
  void override_seed(std::uint64_t seed);

  std::uint64_t effective_split_seed() const;
  std::uint64_t effective_forest_seed() const;
  std::uint64_t effective_bootstrap_seed() const;
  std::string hash() const;
};

std::string tool_version();

class RunManifest {
 public:
  explicit RunManifest(std::filesystem::path out_dir);

  void record(const std::string& stage, const std::string& config_hash, const std::vector<std::filesystem::path>& inputs,
              const std::vector<std::filesystem::path>& outputs, const std::vector<std::string>& warnings = {});
  const nlohmann::json& document() const { return doc_; }
  // Output file name -> digest across all recorded stages.
  std::map<std::string, std::string> artifact_digests() const;
  void save() const;

 private:
  std::filesystem::path path_;
  nlohmann::json doc_;
};

struct CommandResult {
  std::vector<std::filesystem::path> outputs;
  std::vector<std::string> warnings;
};

CommandResult cmd_split(const PipelineConfig& config);
CommandResult cmd_rank(const PipelineConfig& config);
CommandResult cmd_parsimony(const PipelineConfig& config, bool svg = true);
CommandResult cmd_build(const PipelineConfig& config);
CommandResult cmd_finetune(const PipelineConfig& config, const std::optional<std::filesystem::path>& overrides);
CommandResult cmd_evaluate(const PipelineConfig& config, bool with_pom, bool with_forest);

struct PredictRequest {
  std::filesystem::path card;
  std::filesystem::path lookup;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::filesystem::path> imputation_plan;
};
CommandResult cmd_predict(const PredictRequest& request);

CommandResult cmd_simulate(const std::filesystem::path& spec, const std::filesystem::path& output,
                           const std::optional<std::filesystem::path>& schema_output);

}  // namespace autoscore
