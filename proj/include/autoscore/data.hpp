#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/link.hpp"

namespace autoscore {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
bool is_missing(double value);

enum class ColumnKind { continuous, categorical };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  std::vector<std::string> categories;  // categorical only, in declared order

  int category_code(const std::string& label) const;  // -1 if unknown
};

struct Schema {
  std::vector<ColumnSpec> columns;
  std::string outcome_name;
  std::vector<std::string> outcome_labels;  // ordered, lowest category first

  int categories() const { return static_cast<int>(outcome_labels.size()); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws ValidationError

  // Names unique, categorical lists non-empty and duplicate-free, J >= 2.
  void validate() const;

  static Schema from_json(const nlohmann::json& doc);
  static Schema load(const std::string& path);
  nlohmann::json to_json() const;
};

struct OrdinalOutcome {
  std::vector<std::string> labels;
  std::vector<int> values;  // 1..J

  int categories() const { return static_cast<int>(labels.size()); }
  std::size_t size() const { return values.size(); }
  std::vector<std::size_t> counts() const;  // index j-1 holds count of category j
};

// Column-major table. Continuous cells hold the value or kMissing;
// categorical cells hold the 0-based category code as a double.
class DataTable {
 public:
  DataTable() = default;
  DataTable(Schema schema, std::vector<std::vector<double>> columns, OrdinalOutcome outcome);

  const Schema& schema() const { return schema_; }
  std::size_t rows() const { return outcome_.size(); }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<double>& column(std::size_t j) const { return columns_[j]; }
  const std::vector<double>& column(const std::string& name) const;
  std::vector<double>& mutable_column(std::size_t j) { return columns_[j]; }
  const OrdinalOutcome& outcome() const { return outcome_; }

  DataTable select_rows(std::span<const std::size_t> rows) const;
  // Keeps the listed predictor columns (in the given order) and the outcome.
  DataTable select_columns(std::span<const std::string> names) const;
  bool has_missing() const;

  friend bool operator==(const DataTable& a, const DataTable& b);

 private:
  Schema schema_;
  std::vector<std::vector<double>> columns_;
  OrdinalOutcome outcome_;
};

DataTable load_csv(const std::string& path, const Schema& schema);
DataTable parse_csv(const std::string& text, const Schema& schema);
void write_csv(const std::string& path, const DataTable& table);

enum class SplitPart { train, validation, test };
std::string to_string(SplitPart part);
SplitPart parse_split_part(const std::string& name);

struct SplitRatios {
  double train = 0.70;
  double validation = 0.10;
  double test = 0.20;
  void validate() const;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;

  const std::vector<std::size_t>& part(SplitPart p) const;
  std::size_t total() const { return train.size() + validation.size() + test.size(); }
};

SplitIndices stratified_split(const DataTable& table, const SplitRatios& ratios, std::uint64_t seed);
void write_splits_csv(const std::string& path, const SplitIndices& split);
SplitIndices read_splits_csv(const std::string& path);

struct ImputationPlan {
  SplitPart reference = SplitPart::train;
  std::map<std::string, double> fill;

  nlohmann::json to_json() const;
  static ImputationPlan from_json(const nlohmann::json& doc);
};

double median(std::vector<double> values);
ImputationPlan plan_imputation(const DataTable& table, const SplitIndices& split, SplitPart reference);
DataTable impute(const DataTable& table, const ImputationPlan& plan);

struct SyntheticPredictor {
  enum class Distribution { normal, uniform, categorical };

  std::string name;
  Distribution distribution = Distribution::normal;
  double a = 0.0;  // normal: mean, uniform: lower bound
  double b = 1.0;  // normal: sd, uniform: upper bound
  double beta = 0.0;
  std::vector<std::string> categories;
  std::vector<double> probabilities;
  std::vector<double> effects;  // per category, first category conventionally 0
};

struct SyntheticSpec {
  std::size_t n = 1000;
  std::vector<double> theta;
  std::vector<SyntheticPredictor> predictors;
  std::size_t noise_variables = 0;  // extra N(0,1) columns with beta = 0
  LinkFunction link;
  std::uint64_t seed = 0;
  std::vector<std::string> outcome_labels;  // defaults to "1".."J"

  void validate() const;
  Schema schema() const;
  // Linear predictor x'beta for a generated row (values in schema column order).
  double linear_predictor(std::span<const double> row) const;

  static SyntheticSpec from_json(const nlohmann::json& doc);
};

DataTable generate_synthetic(const SyntheticSpec& spec);
// Draws a category in 1..J from F(theta_j - eta) given a uniform variate.
int draw_category(const LinkFunction& link, std::span<const double> theta, double eta, double u);

}  // namespace autoscore
