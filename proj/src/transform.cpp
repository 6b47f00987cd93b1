#include "autoscore/transform.hpp"

#include <algorithm>
#include <cmath>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"

namespace autoscore {

using nlohmann::json;

namespace {

void check_increasing(const std::string& name, const std::vector<double>& cuts) {
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (!std::isfinite(cuts[k])) throw ValidationError("non-finite cut-off for variable '" + name + "'");
    if (k > 0 && !(cuts[k] > cuts[k - 1])) {
      throw ValidationError("cut-offs for variable '" + name + "' are not strictly increasing");
    }
  }
}

std::vector<double> interval_fractions(const std::vector<double>& cuts, const std::vector<double>& column) {
  std::vector<double> counts(cuts.size() + 1, 0.0);
  for (double v : column) counts[interval_index(cuts, v)] += 1.0;
  for (double& c : counts) c /= static_cast<double>(column.size());
  return counts;
}

}  // namespace

std::vector<std::string> CutoffSpec::single_category_variables() const {
  std::vector<std::string> out;
  for (const auto& [name, cuts] : cutoffs) {
    if (cuts.empty()) out.push_back(name);
  }
  return out;
}

json CutoffSpec::to_json() const {
  json doc = json::object();
  for (const auto& [name, cuts] : cutoffs) doc[name] = cuts;
  return doc;
}

CutoffSpec CutoffSpec::from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("cut-off document must be a JSON object");
  CutoffSpec spec;
  for (const auto& [name, cuts] : doc.items()) {
    if (!cuts.is_array()) throw ValidationError("cut-offs for variable '" + name + "' must be an array");
    std::vector<double> values;
    for (const auto& c : cuts) {
      if (!c.is_number()) throw ValidationError("cut-offs for variable '" + name + "' must be numbers");
      values.push_back(c.get<double>());
    }
    check_increasing(name, values);
    spec.cutoffs[name] = std::move(values);
  }
  return spec;
}

CutoffSpec CutoffSpec::load(const std::string& path) {
  try {
    return from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error& e) {
    throw ValidationError("cut-off file " + path + " is not valid JSON: " + e.what());
  }
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ValidationError("quantile of empty column");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> default_percentiles() { return {5.0, 20.0, 80.0, 95.0}; }

CutoffSpec derive_cutoffs(const DataTable& train, std::span<const double> percentiles) {
  for (std::size_t k = 0; k < percentiles.size(); ++k) {
    if (!(percentiles[k] > 0.0 && percentiles[k] < 100.0)) throw ValidationError("percentiles must lie in (0, 100)");
    if (k > 0 && !(percentiles[k] > percentiles[k - 1])) throw ValidationError("percentiles must be strictly increasing");
  }
  CutoffSpec spec;
  for (std::size_t j = 0; j < train.cols(); ++j) {
    const auto& col = train.schema().columns[j];
    if (col.kind != ColumnKind::continuous) continue;
    std::vector<double> values = train.column(j);
    if (values.empty()) throw ValidationError("cannot derive cut-offs for empty column '" + col.name + "'");
    if (std::any_of(values.begin(), values.end(), [](double v) { return is_missing(v); })) {
      throw ValidationError("column '" + col.name + "' has missing values; impute before deriving cut-offs");
    }
    std::sort(values.begin(), values.end());
    std::vector<double> cuts;
    for (double p : percentiles) {
      double q = quantile_sorted(values, p / 100.0);
      if (cuts.empty() || q > cuts.back()) cuts.push_back(q);
    }
    // A cut-off at the column minimum (or a constant column) leaves an empty
    // lower interval; those collapse here or in pruning.
    if (values.front() == values.back()) cuts.clear();
    spec.cutoffs[col.name] = std::move(cuts);
  }
  return spec;
}

CutoffSpec prune_cutoffs(const CutoffSpec& spec, const DataTable& train, double min_bin_fraction) {
  if (min_bin_fraction < 0.0 || min_bin_fraction >= 1.0) throw ValidationError("min_bin_fraction must lie in [0, 1)");
  CutoffSpec out = spec;
  if (min_bin_fraction == 0.0 || train.rows() == 0) return out;
  for (auto& [name, cuts] : out.cutoffs) {
    const auto& column = train.column(name);
    while (!cuts.empty()) {
      auto frac = interval_fractions(cuts, column);
      auto sparsest = static_cast<std::size_t>(std::min_element(frac.begin(), frac.end()) - frac.begin());
      if (frac[sparsest] >= min_bin_fraction) break;
      // Interval i lies between cut-offs i-1 and i.
      std::size_t drop;
      if (sparsest == 0) {
        drop = 0;
      } else if (sparsest == frac.size() - 1) {
        drop = sparsest - 1;
      } else {
        drop = frac[sparsest - 1] <= frac[sparsest + 1] ? sparsest - 1 : sparsest;
      }
      cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  }
  return out;
}

CutoffSpec apply_overrides(const CutoffSpec& spec, const CutoffSpec& overrides) {
  CutoffSpec out = spec;
  for (const auto& [name, cuts] : overrides.cutoffs) {
    if (!spec.covers(name)) throw ValidationError("cut-off override for unknown continuous variable '" + name + "'");
    check_increasing(name, cuts);
    out.cutoffs[name] = cuts;
  }
  return out;
}

std::size_t interval_index(std::span<const double> cutoffs, double value) {
  // Left-closed intervals: a value equal to c_i belongs to [c_i, c_{i+1}).
  return static_cast<std::size_t>(std::upper_bound(cutoffs.begin(), cutoffs.end(), value) - cutoffs.begin());
}

std::vector<std::string> interval_labels(std::span<const double> cutoffs) {
  if (cutoffs.empty()) return {"all"};
  std::vector<std::string> out;
  out.push_back("<" + csv::format_double(cutoffs.front()));
  for (std::size_t k = 0; k + 1 < cutoffs.size(); ++k) {
    out.push_back("[" + csv::format_double(cutoffs[k]) + "," + csv::format_double(cutoffs[k + 1]) + ")");
  }
  out.push_back(">=" + csv::format_double(cutoffs.back()));
  return out;
}

const CategorizedVariable& CategorizedTable::variable(const std::string& name) const {
  for (const auto& v : variables) {
    if (v.name == name) return v;
  }
  throw ValidationError("unknown variable: " + name);
}

CategorizedTable categorize(const DataTable& table, const CutoffSpec& spec) {
  CategorizedTable out;
  out.outcome = table.outcome();
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const auto& col = table.schema().columns[j];
    CategorizedVariable var;
    var.name = col.name;
    var.source_kind = col.kind;
    const auto& values = table.column(j);
    var.codes.resize(values.size());
    if (col.kind == ColumnKind::continuous) {
      auto it = spec.cutoffs.find(col.name);
      if (it == spec.cutoffs.end()) throw ValidationError("no cut-offs for continuous column '" + col.name + "'");
      var.cutoffs = it->second;
      var.levels = interval_labels(var.cutoffs);
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (is_missing(values[i])) throw ValidationError("column '" + col.name + "' has missing values; impute first");
        var.codes[i] = static_cast<int>(interval_index(var.cutoffs, values[i]));
      }
    } else {
      var.levels = col.categories;
      for (std::size_t i = 0; i < values.size(); ++i) var.codes[i] = static_cast<int>(values[i]);
    }
    out.variables.push_back(std::move(var));
  }
  return out;
}

}  // namespace autoscore
