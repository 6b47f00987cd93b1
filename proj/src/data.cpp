#include "autoscore/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"
#include "autoscore/rng.hpp"

namespace autoscore {

using nlohmann::json;

bool is_missing(double value) { return std::isnan(value); }

int ColumnSpec::category_code(const std::string& label) const {
  auto it = std::find(categories.begin(), categories.end(), label);
  return it == categories.end() ? -1 : static_cast<int>(it - categories.begin());
}

std::optional<std::size_t> Schema::find(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].name == name) return j;
  }
  return std::nullopt;
}

std::size_t Schema::index_of(const std::string& name) const {
  auto j = find(name);
  if (!j) throw ValidationError("unknown column: " + name);
  return *j;
}

void Schema::validate() const {
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw ValidationError("schema column with empty name");
    if (!seen.insert(c.name).second) throw ValidationError("duplicate column name: " + c.name);
    if (c.kind == ColumnKind::categorical) {
      if (c.categories.empty()) throw ValidationError("categorical column without categories: " + c.name);
      std::set<std::string> cats(c.categories.begin(), c.categories.end());
      if (cats.size() != c.categories.size()) throw ValidationError("duplicate category in column: " + c.name);
    }
  }
  if (outcome_name.empty()) throw ValidationError("schema has no outcome column");
  if (seen.count(outcome_name)) throw ValidationError("outcome column also declared as predictor: " + outcome_name);
  if (outcome_labels.size() < 2) throw ValidationError("ordinal outcome needs at least 2 categories");
  std::set<std::string> labels(outcome_labels.begin(), outcome_labels.end());
  if (labels.size() != outcome_labels.size()) throw ValidationError("duplicate outcome label");
}

Schema Schema::from_json(const json& doc) {
  Schema s;
  try {
    for (const auto& c : doc.at("columns")) {
      ColumnSpec spec;
      spec.name = c.at("name").get<std::string>();
      auto kind = c.at("kind").get<std::string>();
      if (kind == "continuous") {
        spec.kind = ColumnKind::continuous;
      } else if (kind == "categorical") {
        spec.kind = ColumnKind::categorical;
        spec.categories = c.at("categories").get<std::vector<std::string>>();
      } else {
        throw ValidationError("unknown column kind '" + kind + "' for column " + spec.name);
      }
      s.columns.push_back(std::move(spec));
    }
    const auto& outcome = doc.at("outcome");
    s.outcome_name = outcome.at("name").get<std::string>();
    s.outcome_labels = outcome.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed schema: ") + e.what());
  }
  s.validate();
  return s;
}

Schema Schema::load(const std::string& path) {
  try {
    return from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error& e) {
    throw ValidationError("schema " + path + " is not valid JSON: " + e.what());
  }
}

json Schema::to_json() const {
  json cols = json::array();
  for (const auto& c : columns) {
    json entry = {{"name", c.name}, {"kind", c.kind == ColumnKind::continuous ? "continuous" : "categorical"}};
    if (c.kind == ColumnKind::categorical) entry["categories"] = c.categories;
    cols.push_back(std::move(entry));
  }
  return {{"columns", cols}, {"outcome", {{"name", outcome_name}, {"labels", outcome_labels}}}};
}

std::vector<std::size_t> OrdinalOutcome::counts() const {
  std::vector<std::size_t> out(labels.size(), 0);
  for (int v : values) ++out[static_cast<std::size_t>(v - 1)];
  return out;
}

DataTable::DataTable(Schema schema, std::vector<std::vector<double>> columns, OrdinalOutcome outcome)
    : schema_(std::move(schema)), columns_(std::move(columns)), outcome_(std::move(outcome)) {
  if (columns_.size() != schema_.columns.size()) throw ValidationError("column count does not match schema");
  for (const auto& c : columns_) {
    if (c.size() != outcome_.size()) throw ValidationError("column length does not match outcome length");
  }
  const int J = schema_.categories();
  for (int v : outcome_.values) {
    if (v < 1 || v > J) throw ValidationError("outcome value outside 1..J");
  }
}

const std::vector<double>& DataTable::column(const std::string& name) const {
  return columns_[schema_.index_of(name)];
}

DataTable DataTable::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    cols[j].reserve(rows.size());
    for (auto r : rows) cols[j].push_back(columns_[j].at(r));
  }
  OrdinalOutcome out{outcome_.labels, {}};
  out.values.reserve(rows.size());
  for (auto r : rows) out.values.push_back(outcome_.values.at(r));
  return DataTable(schema_, std::move(cols), std::move(out));
}

DataTable DataTable::select_columns(std::span<const std::string> names) const {
  Schema s;
  s.outcome_name = schema_.outcome_name;
  s.outcome_labels = schema_.outcome_labels;
  std::vector<std::vector<double>> cols;
  for (const auto& name : names) {
    auto j = schema_.index_of(name);
    s.columns.push_back(schema_.columns[j]);
    cols.push_back(columns_[j]);
  }
  s.validate();
  return DataTable(std::move(s), std::move(cols), outcome_);
}

bool DataTable::has_missing() const {
  for (const auto& c : columns_) {
    if (std::any_of(c.begin(), c.end(), [](double v) { return is_missing(v); })) return true;
  }
  return false;
}

bool operator==(const DataTable& a, const DataTable& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.outcome_.values != b.outcome_.values) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a.schema_.columns[j].name != b.schema_.columns[j].name) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double x = a.columns_[j][i], y = b.columns_[j][i];
      if (is_missing(x) != is_missing(y)) return false;
      if (!is_missing(x) && x != y) return false;
    }
  }
  return true;
}

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string where(std::size_t row, const std::string& column) {
  return "row " + std::to_string(row + 1) + ", column '" + column + "'";
}

DataTable from_document(const csv::Document& doc, const Schema& schema) {
  schema.validate();
  std::vector<int> col_of_schema(schema.columns.size(), -1);
  int outcome_col = -1;
  for (std::size_t k = 0; k < doc.header.size(); ++k) {
    const std::string name = trim(doc.header[k]);
    if (name == schema.outcome_name) {
      outcome_col = static_cast<int>(k);
      continue;
    }
    auto j = schema.find(name);
    if (!j) throw ValidationError("unknown column in CSV header: " + name);
    if (col_of_schema[*j] != -1) throw ValidationError("duplicate column in CSV header: " + name);
    col_of_schema[*j] = static_cast<int>(k);
  }
  for (std::size_t j = 0; j < schema.columns.size(); ++j) {
    if (col_of_schema[j] < 0) throw ValidationError("CSV is missing schema column: " + schema.columns[j].name);
  }
  if (outcome_col < 0) throw ValidationError("CSV is missing outcome column: " + schema.outcome_name);

  const int J = schema.categories();
  std::vector<std::vector<double>> cols(schema.columns.size());
  OrdinalOutcome outcome{schema.outcome_labels, {}};
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto& rec = doc.rows[i];
    if (rec.size() != doc.header.size()) {
      throw ValidationError("row " + std::to_string(i + 1) + " has " + std::to_string(rec.size()) +
                            " fields, header has " + std::to_string(doc.header.size()));
    }
    for (std::size_t j = 0; j < schema.columns.size(); ++j) {
      const auto& spec = schema.columns[j];
      const std::string cell = trim(rec[static_cast<std::size_t>(col_of_schema[j])]);
      if (spec.kind == ColumnKind::continuous) {
        double v = kMissing;
        if (!cell.empty() && !parse_number(cell, v)) {
          throw ValidationError("cannot parse number '" + cell + "' at " + where(i, spec.name));
        }
        cols[j].push_back(v);
      } else {
        if (cell.empty()) throw ValidationError("missing categorical value at " + where(i, spec.name));
        int code = spec.category_code(cell);
        if (code < 0) throw ValidationError("value '" + cell + "' not among declared categories at " + where(i, spec.name));
        cols[j].push_back(code);
      }
    }
    const std::string cell = trim(rec[static_cast<std::size_t>(outcome_col)]);
    auto it = std::find(schema.outcome_labels.begin(), schema.outcome_labels.end(), cell);
    int value = 0;
    if (it != schema.outcome_labels.end()) {
      value = static_cast<int>(it - schema.outcome_labels.begin()) + 1;
    } else {
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || value < 1 || value > J) {
        throw ValidationError("unparseable outcome value '" + cell + "' at " + where(i, schema.outcome_name));
      }
    }
    outcome.values.push_back(value);
  }
  return DataTable(schema, std::move(cols), std::move(outcome));
}

}  // namespace

DataTable load_csv(const std::string& path, const Schema& schema) {
  return from_document(csv::read_file(path), schema);
}

DataTable parse_csv(const std::string& text, const Schema& schema) { return from_document(csv::parse(text), schema); }

void write_csv(const std::string& path, const DataTable& table) {
  std::ostringstream out;
  csv::Record header;
  for (const auto& c : table.schema().columns) header.push_back(c.name);
  header.push_back(table.schema().outcome_name);
  csv::write_record(out, header);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    csv::Record rec;
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const auto& spec = table.schema().columns[j];
      double v = table.column(j)[i];
      if (is_missing(v)) rec.emplace_back();
      else if (spec.kind == ColumnKind::categorical) rec.push_back(spec.categories[static_cast<std::size_t>(v)]);
      else rec.push_back(csv::format_double(v));
    }
    rec.push_back(table.outcome().labels[static_cast<std::size_t>(table.outcome().values[i] - 1)]);
    csv::write_record(out, rec);
  }
  write_text_file(path, out.str());
}

std::string to_string(SplitPart part) {
  switch (part) {
    case SplitPart::train: return "train";
    case SplitPart::validation: return "validation";
    case SplitPart::test: return "test";
  }
  return "train";
}

SplitPart parse_split_part(const std::string& name) {
  if (name == "train") return SplitPart::train;
  if (name == "validation") return SplitPart::validation;
  if (name == "test") return SplitPart::test;
  throw ValidationError("unknown split name: " + name);
}

void SplitRatios::validate() const {
  if (!(train > 0 && validation > 0 && test > 0)) throw ValidationError("split ratios must be positive");
  if (std::abs(train + validation + test - 1.0) > 1e-9) throw ValidationError("split ratios must sum to 1");
}

const std::vector<std::size_t>& SplitIndices::part(SplitPart p) const {
  switch (p) {
    case SplitPart::train: return train;
    case SplitPart::validation: return validation;
    case SplitPart::test: return test;
  }
  return train;
}

SplitIndices stratified_split(const DataTable& table, const SplitRatios& ratios, std::uint64_t seed) {
  ratios.validate();
  const int J = table.outcome().categories();
  std::vector<std::vector<std::size_t>> strata(static_cast<std::size_t>(J));
  for (std::size_t i = 0; i < table.rows(); ++i) {
    strata[static_cast<std::size_t>(table.outcome().values[i] - 1)].push_back(i);
  }
  const std::array<double, 3> r{ratios.train, ratios.validation, ratios.test};
  SplitIndices out;
  out.seed = seed;
  std::array<std::vector<std::size_t>*, 3> parts{&out.train, &out.validation, &out.test};

  for (int c = 0; c < J; ++c) {
    auto& rows = strata[static_cast<std::size_t>(c)];
    if (rows.size() < 3) {
      throw ValidationError("outcome category '" + table.outcome().labels[static_cast<std::size_t>(c)] + "' has " +
                            std::to_string(rows.size()) + " rows; stratified split needs at least 3");
    }
    // Largest-remainder apportionment; ties go to the earlier split.
    const double n = static_cast<double>(rows.size());
    std::array<std::size_t, 3> take{};
    std::array<double, 3> rem{};
    std::size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
      double quota = r[s] * n;
      double fl = std::floor(quota + 1e-9);
      take[s] = static_cast<std::size_t>(fl);
      rem[s] = quota - fl;
      assigned += take[s];
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b] + 1e-12; });
    for (std::size_t k = 0; assigned < rows.size(); ++k, ++assigned) ++take[order[k % 3]];

    Rng rng(seed, static_cast<std::uint64_t>(c));
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
    std::size_t pos = 0;
    for (int s = 0; s < 3; ++s) {
      parts[s]->insert(parts[s]->end(), rows.begin() + pos, rows.begin() + pos + take[s]);
      pos += take[s];
    }
  }
  for (auto* p : parts) std::sort(p->begin(), p->end());
  return out;
}

void write_splits_csv(const std::string& path, const SplitIndices& split) {
  std::vector<std::pair<std::size_t, SplitPart>> rows;
  for (auto p : {SplitPart::train, SplitPart::validation, SplitPart::test}) {
    for (auto i : split.part(p)) rows.emplace_back(i, p);
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  csv::write_record(out, {"row_id", "split"});
  for (const auto& [i, p] : rows) csv::write_record(out, {std::to_string(i), to_string(p)});
  write_text_file(path, out.str());
}

SplitIndices read_splits_csv(const std::string& path) {
  auto doc = csv::read_file(path);
  if (doc.header != csv::Record{"row_id", "split"}) throw ValidationError("malformed splits file: " + path);
  SplitIndices out;
  for (const auto& rec : doc.rows) {
    if (rec.size() != 2) throw ValidationError("malformed splits file: " + path);
    std::size_t id = 0;
    auto [ptr, ec] = std::from_chars(rec[0].data(), rec[0].data() + rec[0].size(), id);
    if (ec != std::errc()) throw ValidationError("malformed row id in " + path);
    switch (parse_split_part(rec[1])) {
      case SplitPart::train: out.train.push_back(id); break;
      case SplitPart::validation: out.validation.push_back(id); break;
      case SplitPart::test: out.test.push_back(id); break;
    }
  }
  return out;
}

json ImputationPlan::to_json() const {
  json fills = json::object();
  for (const auto& [name, v] : fill) fills[name] = v;
  return {{"reference_split", to_string(reference)}, {"fill", fills}};
}

ImputationPlan ImputationPlan::from_json(const json& doc) {
  ImputationPlan plan;
  try {
    plan.reference = parse_split_part(doc.at("reference_split").get<std::string>());
    for (const auto& [name, v] : doc.at("fill").items()) plan.fill[name] = v.get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed imputation plan: ") + e.what());
  }
  return plan;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of empty sequence");
  const std::size_t n = values.size();
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  double upper = *mid;
  if (n % 2 == 1) return upper;
  double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

ImputationPlan plan_imputation(const DataTable& table, const SplitIndices& split, SplitPart reference) {
  const auto& rows = split.part(reference);
  if (rows.empty()) throw ValidationError("imputation reference split '" + to_string(reference) + "' is empty");
  ImputationPlan plan;
  plan.reference = reference;
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const auto& spec = table.schema().columns[j];
    if (spec.kind != ColumnKind::continuous) continue;
    std::vector<double> observed;
    for (auto i : rows) {
      double v = table.column(j).at(i);
      if (!is_missing(v)) observed.push_back(v);
    }
    if (observed.empty()) {
      throw ValidationError("column '" + spec.name + "' has no observed values in the " + to_string(reference) + " split");
    }
    plan.fill[spec.name] = median(std::move(observed));
  }
  return plan;
}

DataTable impute(const DataTable& table, const ImputationPlan& plan) {
  std::vector<std::vector<double>> cols;
  cols.reserve(table.cols());
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const auto& spec = table.schema().columns[j];
    std::vector<double> col = table.column(j);
    auto it = plan.fill.find(spec.name);
    for (double& v : col) {
      if (!is_missing(v)) continue;
      if (spec.kind == ColumnKind::categorical) {
        throw ValidationError("missing categorical value in column '" + spec.name + "'; categorical imputation is unsupported");
      }
      if (it == plan.fill.end()) throw ValidationError("no imputation value for column '" + spec.name + "'");
      v = it->second;
    }
    cols.push_back(std::move(col));
  }
  return DataTable(table.schema(), std::move(cols), table.outcome());
}

void SyntheticSpec::validate() const {
  if (n < 1) throw ValidationError("synthetic spec: n must be >= 1");
  if (theta.empty()) throw ValidationError("synthetic spec: theta must have at least one entry");
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (!std::isfinite(theta[j])) throw ValidationError("synthetic spec: theta must be finite");
    if (j > 0 && !(theta[j] > theta[j - 1])) throw ValidationError("synthetic spec: theta must be strictly increasing");
  }
  if (!outcome_labels.empty() && outcome_labels.size() != theta.size() + 1) {
    throw ValidationError("synthetic spec: outcome_labels must have len(theta)+1 entries");
  }
  for (const auto& p : predictors) {
    if (p.distribution == SyntheticPredictor::Distribution::normal && !(p.b > 0)) {
      throw ValidationError("synthetic spec: predictor " + p.name + " needs sd > 0");
    }
    if (p.distribution == SyntheticPredictor::Distribution::uniform && !(p.b > p.a)) {
      throw ValidationError("synthetic spec: predictor " + p.name + " needs max > min");
    }
    if (p.distribution == SyntheticPredictor::Distribution::categorical) {
      if (p.categories.empty() || p.probabilities.size() != p.categories.size() || p.effects.size() != p.categories.size()) {
        throw ValidationError("synthetic spec: categorical predictor " + p.name + " needs matching categories/probabilities/effects");
      }
      double total = 0;
      for (double q : p.probabilities) {
        if (q < 0) throw ValidationError("synthetic spec: negative probability in " + p.name);
        total += q;
      }
      if (std::abs(total - 1.0) > 1e-9) throw ValidationError("synthetic spec: probabilities of " + p.name + " must sum to 1");
    }
  }
  schema().validate();
}

Schema SyntheticSpec::schema() const {
  Schema s;
  for (const auto& p : predictors) {
    ColumnSpec c{p.name, ColumnKind::continuous, {}};
    if (p.distribution == SyntheticPredictor::Distribution::categorical) {
      c.kind = ColumnKind::categorical;
      c.categories = p.categories;
    }
    s.columns.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < noise_variables; ++k) {
    s.columns.push_back({"noise" + std::to_string(k + 1), ColumnKind::continuous, {}});
  }
  s.outcome_name = "y";
  if (!outcome_labels.empty()) {
    s.outcome_labels = outcome_labels;
  } else {
    for (std::size_t j = 0; j <= theta.size(); ++j) s.outcome_labels.push_back(std::to_string(j + 1));
  }
  return s;
}

double SyntheticSpec::linear_predictor(std::span<const double> row) const {
  double eta = 0.0;
  for (std::size_t k = 0; k < predictors.size(); ++k) {
    const auto& p = predictors[k];
    if (p.distribution == SyntheticPredictor::Distribution::categorical) eta += p.effects[static_cast<std::size_t>(row[k])];
    else eta += p.beta * row[k];
  }
  return eta;
}

SyntheticSpec SyntheticSpec::from_json(const json& doc) {
  SyntheticSpec spec;
  try {
    spec.n = doc.at("n").get<std::size_t>();
    spec.theta = doc.at("theta").get<std::vector<double>>();
    spec.noise_variables = doc.value("noise_variables", std::size_t{0});
    spec.link = LinkFunction::parse(doc.value("link", std::string("logit")));
    spec.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("outcome_labels")) spec.outcome_labels = doc.at("outcome_labels").get<std::vector<std::string>>();
    for (const auto& p : doc.value("predictors", json::array())) {
      SyntheticPredictor sp;
      sp.name = p.at("name").get<std::string>();
      auto dist = p.at("distribution").get<std::string>();
      if (dist == "normal") {
        sp.distribution = SyntheticPredictor::Distribution::normal;
        sp.a = p.value("mean", 0.0);
        sp.b = p.value("sd", 1.0);
        sp.beta = p.at("beta").get<double>();
      } else if (dist == "uniform") {
        sp.distribution = SyntheticPredictor::Distribution::uniform;
        sp.a = p.at("min").get<double>();
        sp.b = p.at("max").get<double>();
        sp.beta = p.at("beta").get<double>();
      } else if (dist == "categorical") {
        sp.distribution = SyntheticPredictor::Distribution::categorical;
        sp.categories = p.at("categories").get<std::vector<std::string>>();
        sp.probabilities = p.at("probabilities").get<std::vector<double>>();
        sp.effects = p.at("effects").get<std::vector<double>>();
      } else {
        throw ValidationError("synthetic spec: unknown distribution '" + dist + "'");
      }
      spec.predictors.push_back(std::move(sp));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed synthetic spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

int draw_category(const LinkFunction& link, std::span<const double> theta, double eta, double u) {
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (u < link.cdf(theta[j] - eta)) return static_cast<int>(j) + 1;
  }
  return static_cast<int>(theta.size()) + 1;
}

DataTable generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Schema schema = spec.schema();
  const std::size_t p = schema.columns.size();
  std::vector<std::vector<double>> cols(p, std::vector<double>(spec.n));
  OrdinalOutcome outcome{schema.outcome_labels, std::vector<int>(spec.n)};
  std::vector<double> row(p);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Rng rng(spec.seed, i);
    for (std::size_t k = 0; k < spec.predictors.size(); ++k) {
      const auto& pr = spec.predictors[k];
      switch (pr.distribution) {
        case SyntheticPredictor::Distribution::normal: row[k] = pr.a + pr.b * rng.normal(); break;
        case SyntheticPredictor::Distribution::uniform: row[k] = pr.a + (pr.b - pr.a) * rng.uniform(); break;
        case SyntheticPredictor::Distribution::categorical: {
          double u = rng.uniform();
          std::size_t c = 0;
          double acc = pr.probabilities[0];
          while (c + 1 < pr.categories.size() && u >= acc) acc += pr.probabilities[++c];
          row[k] = static_cast<double>(c);
          break;
        }
      }
    }
    for (std::size_t k = spec.predictors.size(); k < p; ++k) row[k] = rng.normal();
    for (std::size_t k = 0; k < p; ++k) cols[k][i] = row[k];
    outcome.values[i] = draw_category(spec.link, spec.theta, spec.linear_predictor(row), rng.uniform());
  }
  return DataTable(std::move(schema), std::move(cols), std::move(outcome));
}

}  // namespace autoscore
