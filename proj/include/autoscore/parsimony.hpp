#pragma once

// Growing scoring models over the variable ranking (the parsimony curve) and
// the evaluation report for a finished model.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/data.hpp"
#include "autoscore/forest.hpp"
#include "autoscore/metrics.hpp"
#include "autoscore/pom.hpp"
#include "autoscore/scorecard.hpp"
#include "autoscore/transform.hpp"

namespace autoscore {

struct ScoringSettings {
  std::vector<double> percentiles = default_percentiles();
  double min_bin_fraction = 0.01;
  LinkFunction link;
  std::optional<double> max_total_target = 100.0;
  double grad_tol = 1e-8;
  int max_iter = 100;
};

struct ScoringModel {
  CutoffSpec cutoffs;
  PomFit initial_fit;
  PomFit fit;  // positive-reference refit
  ScoreCard card;
  bool converged() const { return initial_fit.converged && fit.converged; }
};

// Cut-offs from the (imputed) training data: percentiles, then pruning.
CutoffSpec training_cutoffs(const DataTable& train, const ScoringSettings& settings);

// categorize -> fit -> positive refit -> integer scorecard, on `variables`.
ScoringModel train_scoring_model(const DataTable& train, const std::vector<std::string>& variables,
                                 const CutoffSpec& cutoffs, const ScoringSettings& settings);

struct ParsimonyPoint {
  std::size_t k = 0;
  std::string variable;
  double mauc = 0.0;
  bool converged = true;
};

struct ParsimonyCurve {
  std::vector<ParsimonyPoint> points;

  void write_csv(const std::string& path) const;
  void write_svg(const std::string& path) const;
  static ParsimonyCurve read_csv(const std::string& path);
};

// For k = 1..max_variables (0 = all ranked variables): validation mAUC of
// the integer scorecard built from the top-k ranked variables.
ParsimonyCurve parsimony_curve(const ImportanceRanking& ranking, const DataTable& train, const DataTable& validation,
                               const ScoringSettings& settings, std::size_t max_variables = 0);

struct EvalReport {
  std::string model;
  std::size_t n_variables = 0;
  std::size_t n = 0;
  BootstrapCI mauc;
  BootstrapCI c_index;
  std::vector<double> split_aucs;

  nlohmann::json to_json() const;
};

struct EvalOptions {
  std::size_t resamples = 100;
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

// mAUC scores and c-index scores may differ (e.g. forest: vote-weighted
// expected category vs predicted category).
EvalReport evaluate_scores(const std::string& model, std::size_t n_variables, std::span<const double> mauc_scores,
                           std::span<const double> cindex_scores, std::span<const int> outcomes, int categories,
                           const EvalOptions& options);

void write_report_csv(const std::string& path, const std::vector<EvalReport>& reports);

}  // namespace autoscore
