#include "autoscore/scorecard.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"

namespace autoscore {

using nlohmann::json;

namespace {

constexpr double kLoadedProbabilityTolerance = 5e-3;

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ValidationError("cannot parse integer " + what + ": '" + text + "'");
  return v;
}

double parse_real(const std::string& text, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ValidationError("cannot parse number " + what + ": '" + text + "'");
  return v;
}

}  // namespace

int ScoreVariable::max_points() const { return points.empty() ? 0 : *std::max_element(points.begin(), points.end()); }

std::size_t ScoreVariable::level_for(double value) const {
  if (source_kind != ColumnKind::continuous) throw ValidationError("variable '" + name + "' is categorical");
  if (!std::isfinite(value)) throw ValidationError("non-finite value for variable '" + name + "'");
  return interval_index(cutoffs, value);
}

std::size_t ScoreVariable::level_for(const std::string& cell) const {
  if (source_kind == ColumnKind::continuous) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (cell.empty() || ec != std::errc() || ptr != end) {
      throw ValidationError("cannot parse value '" + cell + "' for variable '" + name + "'");
    }
    return level_for(v);
  }
  auto it = std::find(levels.begin(), levels.end(), cell);
  if (it == levels.end()) throw ValidationError("unseen category '" + cell + "' for variable '" + name + "'");
  return static_cast<std::size_t>(it - levels.begin());
}

const ScoreVariable& ScoreCard::variable(const std::string& name) const {
  for (const auto& v : variables) {
    if (v.name == name) return v;
  }
  throw ValidationError("variable not in scorecard: " + name);
}

CutoffSpec ScoreCard::cutoffs() const {
  CutoffSpec spec;
  for (const auto& v : variables) {
    if (v.source_kind == ColumnKind::continuous) spec.cutoffs[v.name] = v.cutoffs;
  }
  return spec;
}

json ScoreCard::to_json() const {
  json vars = json::array();
  for (const auto& v : variables) {
    json entry = {{"name", v.name},
                  {"kind", v.source_kind == ColumnKind::continuous ? "continuous" : "categorical"},
                  {"levels", v.levels},
                  {"points", v.points},
                  {"reference", v.levels[static_cast<std::size_t>(v.reference)]}};
    if (v.source_kind == ColumnKind::continuous) entry["cutoffs"] = v.cutoffs;
    if (!v.raw_points.empty()) entry["raw_points"] = v.raw_points;
    vars.push_back(std::move(entry));
  }
  return {{"variables", vars},
          {"scale_factor", scale_factor},
          {"max_total", max_total},
          {"outcome_labels", outcome_labels},
          {"provenance", {{"cutoffs", cutoffs().to_json()}, {"fit_digest", fit_digest}}}};
}

ScoreCard ScoreCard::from_json(const json& doc) {
  ScoreCard card;
  try {
    for (const auto& v : doc.at("variables")) {
      ScoreVariable sv;
      sv.name = v.at("name").get<std::string>();
      auto kind = v.at("kind").get<std::string>();
      if (kind == "continuous") {
        sv.source_kind = ColumnKind::continuous;
        sv.cutoffs = v.at("cutoffs").get<std::vector<double>>();
        for (std::size_t k = 1; k < sv.cutoffs.size(); ++k) {
          if (!(sv.cutoffs[k] > sv.cutoffs[k - 1])) throw ValidationError("scorecard cut-offs for '" + sv.name + "' are not increasing");
        }
      } else if (kind == "categorical") {
        sv.source_kind = ColumnKind::categorical;
      } else {
        throw ValidationError("unknown variable kind '" + kind + "' in scorecard");
      }
      sv.levels = v.at("levels").get<std::vector<std::string>>();
      sv.points = v.at("points").get<std::vector<int>>();
      if (sv.points.size() != sv.levels.size()) throw ValidationError("scorecard variable '" + sv.name + "' has mismatched levels/points");
      if (sv.source_kind == ColumnKind::continuous && sv.levels.size() != sv.cutoffs.size() + 1) {
        throw ValidationError("scorecard variable '" + sv.name + "' needs one more level than cut-offs");
      }
      if (std::any_of(sv.points.begin(), sv.points.end(), [](int p) { return p < 0; })) {
        throw ValidationError("scorecard variable '" + sv.name + "' has negative points");
      }
      auto ref = v.at("reference").get<std::string>();
      auto it = std::find(sv.levels.begin(), sv.levels.end(), ref);
      if (it == sv.levels.end()) throw ValidationError("unknown reference level for '" + sv.name + "'");
      sv.reference = static_cast<int>(it - sv.levels.begin());
      if (v.contains("raw_points")) sv.raw_points = v.at("raw_points").get<std::vector<double>>();
      card.variables.push_back(std::move(sv));
    }
    card.scale_factor = doc.value("scale_factor", 1.0);
    card.max_total = doc.at("max_total").get<int>();
    card.outcome_labels = doc.at("outcome_labels").get<std::vector<std::string>>();
    if (doc.contains("provenance")) card.fit_digest = doc.at("provenance").value("fit_digest", std::string());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scorecard: ") + e.what());
  }
  int attainable = 0;
  for (const auto& v : card.variables) attainable += v.max_points();
  if (attainable != card.max_total) throw ValidationError("scorecard max_total does not equal the sum of per-variable maxima");
  return card;
}

ScoreCard ScoreCard::load(const std::string& path) {
  try {
    return from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error& e) {
    throw ValidationError("scorecard " + path + " is not valid JSON: " + e.what());
  }
}

void ScoreCard::write_csv(const std::string& path) const {
  std::ostringstream out;
  csv::write_record(out, {"variable", "interval", "partial_score"});
  for (const auto& v : variables) {
    for (std::size_t l = 0; l < v.levels.size(); ++l) csv::write_record(out, {v.name, v.levels[l], std::to_string(v.points[l])});
  }
  write_text_file(path, out.str());
}

ScoreCard derive_scorecard(const PomFit& fit, std::optional<double> max_total_target,
                           std::span<const CategorizedVariable> sources) {
  if (max_total_target && !(*max_total_target > 0.0)) throw ValidationError("max_total_target must be positive");
  double min_positive = std::numeric_limits<double>::infinity();
  for (const auto& v : fit.variables) {
    for (double e : v.effects) {
      if (e < 0.0) throw ValidationError("scorecard needs non-negative coefficients; refit with positive references first");
      if (e > 0.0) min_positive = std::min(min_positive, e);
    }
  }
  if (!std::isfinite(min_positive)) throw ValidationError("all coefficients are zero; no scorecard can be derived");

  double attainable = 0.0;
  for (const auto& v : fit.variables) attainable += *std::max_element(v.effects.begin(), v.effects.end()) / min_positive;
  const double rescale = max_total_target ? *max_total_target / attainable : 1.0;

  ScoreCard card;
  card.scale_factor = rescale / min_positive;
  for (const auto& v : fit.variables) {
    ScoreVariable sv;
    sv.name = v.name;
    sv.levels = v.levels;
    sv.reference = v.reference;
    for (const auto& src : sources) {
      if (src.name != v.name) continue;
      if (src.levels != v.levels) throw ValidationError("categorization of '" + v.name + "' does not match the fit");
      sv.source_kind = src.source_kind;
      sv.cutoffs = src.cutoffs;
    }
    for (double e : v.effects) {
      const double raw = (e / min_positive) * rescale;
      sv.raw_points.push_back(raw);
      sv.points.push_back(static_cast<int>(std::round(raw)));  // half away from zero
    }
    card.max_total += sv.max_points();
    card.variables.push_back(std::move(sv));
  }
  return card;
}

int total_score(const ScoreCard& card, std::span<const int> levels) {
  if (levels.size() != card.variables.size()) throw ValidationError("row does not match the scorecard's variables");
  int total = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& v = card.variables[k];
    if (levels[k] < 0 || static_cast<std::size_t>(levels[k]) >= v.points.size()) {
      throw ComputationError("row falls outside every interval of '" + v.name + "'");
    }
    total += v.points[static_cast<std::size_t>(levels[k])];
  }
  return total;
}

int total_score(const ScoreCard& card, const std::map<std::string, std::string>& row) {
  int total = 0;
  for (const auto& v : card.variables) {
    auto it = row.find(v.name);
    if (it == row.end()) throw ValidationError("row is missing scorecard variable '" + v.name + "'");
    total += v.points[v.level_for(it->second)];
  }
  return total;
}

std::vector<int> total_scores(const ScoreCard& card, const CategorizedTable& data) {
  std::vector<int> out(data.rows(), 0);
  for (const auto& v : card.variables) {
    const auto& var = data.variable(v.name);
    if (var.levels != v.levels) throw ValidationError("categories of '" + v.name + "' differ from the scorecard's");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v.points[static_cast<std::size_t>(var.codes[i])];
  }
  return out;
}

std::vector<double> raw_totals(const ScoreCard& card, const CategorizedTable& data) {
  std::vector<double> out(data.rows(), 0.0);
  for (const auto& v : card.variables) {
    if (v.raw_points.size() != v.levels.size()) throw ValidationError("scorecard has no pre-rounding points");
    const auto& var = data.variable(v.name);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v.raw_points[static_cast<std::size_t>(var.codes[i])];
  }
  return out;
}

const LookupBin& LookupTable::bin_for(int score) const {
  if (bins.empty()) throw ComputationError("empty lookup table");
  if (score < bins.front().lower || score > bins.back().upper) {
    throw ComputationError("score " + std::to_string(score) + " lies outside the lookup table");
  }
  if (score <= bins.front().upper) return bins.front();
  // Later bins are (lower, upper].
  auto it = std::lower_bound(bins.begin(), bins.end(), score, [](const LookupBin& b, int s) { return b.upper < s; });
  return *it;
}

void LookupTable::write_csv(const std::string& path) const {
  std::ostringstream out;
  csv::Record header{"bin_lower", "bin_upper"};
  for (int j = 1; j <= categories(); ++j) header.push_back("p_" + std::to_string(j));
  header.push_back("n");
  csv::write_record(out, header);
  for (const auto& b : bins) {
    csv::Record rec{std::to_string(b.lower), std::to_string(b.upper)};
    for (double p : b.probabilities) rec.push_back(csv::format_double(p));
    rec.push_back(std::to_string(b.count));
    csv::write_record(out, rec);
  }
  write_text_file(path, out.str());
}

LookupTable LookupTable::read_csv(const std::string& path) {
  auto doc = csv::read_file(path);
  const auto& h = doc.header;
  if (h.size() < 5 || h[0] != "bin_lower" || h[1] != "bin_upper" || h.back() != "n") {
    throw ValidationError("malformed lookup table header in " + path);
  }
  const std::size_t J = h.size() - 3;
  for (std::size_t j = 0; j < J; ++j) {
    if (h[2 + j] != "p_" + std::to_string(j + 1)) throw ValidationError("malformed lookup table header in " + path);
  }
  LookupTable table;
  for (const auto& rec : doc.rows) {
    if (rec.size() != h.size()) throw ValidationError("malformed lookup row in " + path);
    LookupBin b;
    b.lower = parse_int(rec[0], "bin_lower");
    b.upper = parse_int(rec[1], "bin_upper");
    double total = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      double p = parse_real(rec[2 + j], "probability");
      if (p < 0.0 || p > 1.0) throw ValidationError("lookup probability outside [0, 1] in " + path);
      b.probabilities.push_back(p);
      total += p;
    }
    if (std::abs(total - 1.0) > kLoadedProbabilityTolerance) throw ValidationError("lookup probabilities do not sum to 1 in " + path);
    b.count = static_cast<std::size_t>(parse_int(rec[2 + J], "n"));
    if (b.upper < b.lower) throw ValidationError("lookup bin with upper < lower in " + path);
    if (!table.bins.empty() && b.lower != table.bins.back().upper) throw ValidationError("lookup bins are not contiguous in " + path);
    table.bins.push_back(std::move(b));
  }
  if (table.bins.empty() || table.bins.front().lower != 0) throw ValidationError("lookup table must start at 0 in " + path);
  return table;
}

LookupTable build_lookup(const ScoreCard& card, std::span<const int> scores, const OrdinalOutcome& outcome,
                         const LookupOptions& options) {
  if (scores.empty()) throw ValidationError("cannot build a lookup table from an empty training set");
  if (scores.size() != outcome.size()) throw ValidationError("scores and outcomes differ in length");
  if (options.bin_width < 1) throw ValidationError("lookup bin width must be >= 1");
  if (options.min_bin_count < 1) throw ValidationError("lookup min_bin_count must be >= 1");
  const int w = options.bin_width;
  const int top = card.max_total;
  const auto J = static_cast<std::size_t>(outcome.categories());

  // Base bins [0,w], (w,2w], ... with the last clipped at max_total.
  const int n_base = std::max(1, (top + w - 1) / w);
  std::vector<std::vector<std::size_t>> counts(static_cast<std::size_t>(n_base), std::vector<std::size_t>(J, 0));
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int s = scores[i];
    if (s < 0 || s > top) throw ComputationError("training score outside [0, max_total]");
    const int k = s <= w ? 0 : (s + w - 1) / w - 1;
    ++counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(outcome.values[i] - 1)];
  }

  // Sweep upwards closing a bin once it holds enough rows; a sparse
  // remainder at the top joins the last closed bin.
  struct Group {
    int first, last;
    std::vector<std::size_t> counts;
    std::size_t n = 0;
  };
  std::vector<Group> groups;
  Group open{0, 0, std::vector<std::size_t>(J, 0), 0};
  for (int k = 0; k < n_base; ++k) {
    open.last = k;
    for (std::size_t j = 0; j < J; ++j) open.counts[j] += counts[static_cast<std::size_t>(k)][j];
    open.n = std::accumulate(open.counts.begin(), open.counts.end(), std::size_t{0});
    if (open.n >= options.min_bin_count) {
      groups.push_back(open);
      open = Group{k + 1, k + 1, std::vector<std::size_t>(J, 0), 0};
    }
  }
  if (open.first < n_base) {
    if (groups.empty()) {
      groups.push_back(open);
    } else {
      auto& last = groups.back();
      last.last = open.last;
      for (std::size_t j = 0; j < J; ++j) last.counts[j] += open.counts[j];
      last.n += open.n;
    }
  }

  LookupTable table;
  for (const auto& g : groups) {
    LookupBin b;
    b.lower = g.first == 0 ? 0 : g.first * w;
    b.upper = std::min(top, (g.last + 1) * w);
    b.count = g.n;
    for (auto c : g.counts) b.probabilities.push_back(static_cast<double>(c) / static_cast<double>(g.n));
    table.bins.push_back(std::move(b));
  }
  table.bins.back().upper = top;
  return table;
}

std::vector<double> predict_probs(const LookupTable& lookup, int total) { return lookup.bin_for(total).probabilities; }

std::vector<double> predict_probs(const ScoreCard& card, const LookupTable& lookup, std::span<const int> levels) {
  return predict_probs(lookup, total_score(card, levels));
}

}  // namespace autoscore
