#pragma once

// Integer point scorecards derived from a non-negative POM fit, and the
// total-score -> outcome-probability lookup table.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/data.hpp"
#include "autoscore/pom.hpp"
#include "autoscore/transform.hpp"

namespace autoscore {

struct ScoreVariable {
  std::string name;
  ColumnKind source_kind = ColumnKind::categorical;
  std::vector<double> cutoffs;      // continuous source only
  std::vector<std::string> levels;  // interval or category labels
  std::vector<int> points;          // partial score per level
  std::vector<double> raw_points;   // partial score before rounding
  int reference = 0;

  int max_points() const;
  // Level for a raw cell: a number for continuous variables, a category
  // label for categorical ones.
  std::size_t level_for(const std::string& cell) const;
  std::size_t level_for(double value) const;
};

struct ScoreCard {
  std::vector<ScoreVariable> variables;
  double scale_factor = 1.0;  // pre-rounding points = scale_factor * beta
  int max_total = 0;
  std::vector<std::string> outcome_labels;
  std::string fit_digest;

  const ScoreVariable& variable(const std::string& name) const;
  CutoffSpec cutoffs() const;

  nlohmann::json to_json() const;
  static ScoreCard from_json(const nlohmann::json& doc);
  static ScoreCard load(const std::string& path);
  // One row per (variable, interval): the printable checklist.
  void write_csv(const std::string& path) const;
};

// max_total_target = nullopt keeps the min-normalised scale.
// `sources` (optional) supplies each variable's cut-offs and source kind.
ScoreCard derive_scorecard(const PomFit& fit, std::optional<double> max_total_target = 100.0,
                           std::span<const CategorizedVariable> sources = {});

// Row given as level indices aligned with card.variables.
int total_score(const ScoreCard& card, std::span<const int> levels);
// Row given as variable -> raw cell text.
int total_score(const ScoreCard& card, const std::map<std::string, std::string>& row);
// Every row of a categorized table (variables matched by name).
std::vector<int> total_scores(const ScoreCard& card, const CategorizedTable& data);
// Pre-rounding totals, sum of raw_points.
std::vector<double> raw_totals(const ScoreCard& card, const CategorizedTable& data);

struct LookupBin {
  int lower = 0;  // first bin is [lower, upper], later bins (lower, upper]
  int upper = 0;
  std::vector<double> probabilities;
  std::size_t count = 0;
};

struct LookupTable {
  std::vector<LookupBin> bins;

  int categories() const { return bins.empty() ? 0 : static_cast<int>(bins.front().probabilities.size()); }
  const LookupBin& bin_for(int score) const;

  void write_csv(const std::string& path) const;
  static LookupTable read_csv(const std::string& path);
};

struct LookupOptions {
  int bin_width = 5;
  std::size_t min_bin_count = 20;
};

LookupTable build_lookup(const ScoreCard& card, std::span<const int> scores, const OrdinalOutcome& outcome,
                         const LookupOptions& options = {});

std::vector<double> predict_probs(const ScoreCard& card, const LookupTable& lookup, std::span<const int> levels);
std::vector<double> predict_probs(const LookupTable& lookup, int total);

}  // namespace autoscore
