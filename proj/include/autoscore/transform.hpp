#pragma once

// Percentile-based discretization of continuous predictors and user
// overrides of the resulting cut-offs.

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/data.hpp"

namespace autoscore {

// Continuous variable name -> strictly increasing cut-offs. Categorical
// variables are passed through and have no entry.
struct CutoffSpec {
  std::map<std::string, std::vector<double>> cutoffs;

  bool covers(const std::string& name) const { return cutoffs.count(name) > 0; }
  // Variables whose cut-off list is empty collapse to a single interval.
  std::vector<std::string> single_category_variables() const;

  nlohmann::json to_json() const;
  static CutoffSpec from_json(const nlohmann::json& doc);
  static CutoffSpec load(const std::string& path);

  friend bool operator==(const CutoffSpec&, const CutoffSpec&) = default;
};

// Linear interpolation between order statistics at h = (n-1) p + 1
// (1-based), p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

std::vector<double> default_percentiles();

CutoffSpec derive_cutoffs(const DataTable& train, std::span<const double> percentiles);

// Repeatedly merges the sparsest interval (fraction < min_bin_fraction) into
// its smaller neighbour by dropping the cut-off between them.
CutoffSpec prune_cutoffs(const CutoffSpec& spec, const DataTable& train, double min_bin_fraction = 0.01);

CutoffSpec apply_overrides(const CutoffSpec& spec, const CutoffSpec& overrides);

// Interval index of `value`: 0 for "< c1", k for ">= ck".
std::size_t interval_index(std::span<const double> cutoffs, double value);
std::vector<std::string> interval_labels(std::span<const double> cutoffs);

struct CategorizedVariable {
  std::string name;
  ColumnKind source_kind = ColumnKind::continuous;
  std::vector<double> cutoffs;          // continuous source only
  std::vector<std::string> levels;      // interval labels or category labels
  std::vector<int> codes;               // per row, index into levels

  bool single_level() const { return levels.size() < 2; }
};

struct CategorizedTable {
  std::vector<CategorizedVariable> variables;
  OrdinalOutcome outcome;

  std::size_t rows() const { return outcome.size(); }
  const CategorizedVariable& variable(const std::string& name) const;
};

CategorizedTable categorize(const DataTable& table, const CutoffSpec& spec);

}  // namespace autoscore
