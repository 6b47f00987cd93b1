#include "autoscore/parsimony.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"

namespace autoscore {

using nlohmann::json;

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

CutoffSpec training_cutoffs(const DataTable& train, const ScoringSettings& settings) {
  return prune_cutoffs(derive_cutoffs(train, settings.percentiles), train, settings.min_bin_fraction);
}

ScoringModel train_scoring_model(const DataTable& train, const std::vector<std::string>& variables,
                                 const CutoffSpec& cutoffs, const ScoringSettings& settings) {
  if (variables.empty()) throw ValidationError("a scoring model needs at least one variable");
  ScoringModel model;
  const DataTable subset = train.select_columns(variables);
  for (const auto& name : variables) {
    if (auto it = cutoffs.cutoffs.find(name); it != cutoffs.cutoffs.end()) model.cutoffs.cutoffs[name] = it->second;
  }
  const CategorizedTable cat = categorize(subset, model.cutoffs);

  PomOptions options;
  options.link = settings.link;
  options.grad_tol = settings.grad_tol;
  options.max_iter = settings.max_iter;
  model.initial_fit = fit_pom(cat, options);
  if (model.initial_fit.variables.empty()) throw ValidationError("no variable with more than one category remains");
  model.fit = refit_positive(model.initial_fit, cat, settings.grad_tol, settings.max_iter);
  model.card = derive_scorecard(model.fit, settings.max_total_target, cat.variables);
  model.card.outcome_labels = train.outcome().labels;
  return model;
}

ParsimonyCurve parsimony_curve(const ImportanceRanking& ranking, const DataTable& train, const DataTable& validation,
                               const ScoringSettings& settings, std::size_t max_variables) {
  if (ranking.empty()) throw ValidationError("parsimony curve needs a non-empty ranking");
  const std::size_t K = max_variables == 0 ? ranking.size() : std::min(max_variables, ranking.size());
  const CutoffSpec cutoffs = training_cutoffs(train, settings);

  ParsimonyCurve curve;
  std::vector<std::string> variables;
  for (std::size_t k = 1; k <= K; ++k) {
    variables.push_back(ranking[k - 1].variable);
    ParsimonyPoint point;
    point.k = k;
    point.variable = variables.back();
    try {
      ScoringModel model = train_scoring_model(train, variables, cutoffs, settings);
      const DataTable val = validation.select_columns(variables);
      const auto scores = total_scores(model.card, categorize(val, model.cutoffs));
      std::vector<double> s(scores.begin(), scores.end());
      point.mauc = mean_auc(s, val.outcome().values, val.outcome().categories()).value;
      point.converged = model.converged();
    } catch (const ValidationError&) {
      // e.g. every selected variable collapsed to one category: no score
      // discriminates, so the curve records chance level.
      point.mauc = 0.5;
      point.converged = false;
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

void ParsimonyCurve::write_csv(const std::string& path) const {
  std::ostringstream out;
  csv::write_record(out, {"k", "variable", "mAUC"});
  for (const auto& p : points) csv::write_record(out, {std::to_string(p.k), p.variable, csv::format_double(p.mauc)});
  write_text_file(path, out.str());
}

ParsimonyCurve ParsimonyCurve::read_csv(const std::string& path) {
  auto doc = csv::read_file(path);
  if (doc.header != csv::Record{"k", "variable", "mAUC"}) throw ValidationError("malformed parsimony file: " + path);
  ParsimonyCurve curve;
  for (const auto& rec : doc.rows) {
    if (rec.size() != 3) throw ValidationError("malformed parsimony file: " + path);
    ParsimonyPoint p;
    std::from_chars(rec[0].data(), rec[0].data() + rec[0].size(), p.k);
    p.variable = rec[1];
    std::from_chars(rec[2].data(), rec[2].data() + rec[2].size(), p.mauc);
    curve.points.push_back(std::move(p));
  }
  return curve;
}

void ParsimonyCurve::write_svg(const std::string& path) const {
  constexpr double W = 640, H = 400, L = 60, R = 20, T = 20, B = 120;
  double lo = 1.0, hi = 0.0;
  for (const auto& p : points) {
    lo = std::min(lo, p.mauc);
    hi = std::max(hi, p.mauc);
  }
  lo = std::floor(lo * 20.0) / 20.0;
  hi = std::ceil(hi * 20.0) / 20.0;
  if (hi <= lo) hi = lo + 0.05;
  const double n = static_cast<double>(std::max<std::size_t>(points.size(), 1));
  auto px = [&](std::size_t k) { return L + (W - L - R) * (static_cast<double>(k) - 0.5) / n; };
  auto py = [&](double m) { return T + (H - T - B) * (hi - m) / (hi - lo); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"12\" y=\"" << T + 10 << "\" font-size=\"12\">mAUC</text>\n";
  out << "<text x=\"" << L - 40 << "\" y=\"" << py(hi) + 4 << "\" font-size=\"10\">" << csv::format_double(hi) << "</text>\n";
  out << "<text x=\"" << L - 40 << "\" y=\"" << py(lo) + 4 << "\" font-size=\"10\">" << csv::format_double(lo) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& p : points) out << px(p.k) << ',' << py(p.mauc) << ' ';
  out << "\"/>\n";
  for (const auto& p : points) {
    out << "<circle cx=\"" << px(p.k) << "\" cy=\"" << py(p.mauc) << "\" r=\"3\" fill=\"" << (p.converged ? "steelblue" : "red")
        << "\"/>\n";
    out << "<text transform=\"translate(" << px(p.k) + 3 << ',' << H - B + 8 << ") rotate(60)\" font-size=\"10\">"
        << xml_escape(p.variable) << "</text>\n";
  }
  out << "</svg>\n";
  write_text_file(path, out.str());
}

json EvalReport::to_json() const {
  return {{"model", model},       {"n_variables", n_variables}, {"n", n},
          {"mAUC", mauc.to_json()}, {"c_index", c_index.to_json()}, {"split_aucs", split_aucs}};
}

EvalReport evaluate_scores(const std::string& model, std::size_t n_variables, std::span<const double> mauc_scores,
                           std::span<const double> cindex_scores, std::span<const int> outcomes, int categories,
                           const EvalOptions& options) {
  EvalReport report;
  report.model = model;
  report.n_variables = n_variables;
  report.n = outcomes.size();
  auto mauc = [categories](std::span<const double> s, std::span<const int> y) { return mean_auc(s, y, categories).value; };
  report.mauc = bootstrap_ci(mauc, mauc_scores, outcomes, options.resamples, options.alpha, options.seed);
  report.c_index = bootstrap_ci(generalized_c_index, cindex_scores, outcomes, options.resamples, options.alpha, options.seed);
  report.split_aucs = mean_auc(mauc_scores, outcomes, categories).per_split;
  return report;
}

void write_report_csv(const std::string& path, const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  csv::write_record(out, {"model", "n_variables", "mAUC", "mAUC_lower", "mAUC_upper", "c_index", "c_index_lower", "c_index_upper"});
  for (const auto& r : reports) {
    csv::write_record(out, {r.model, std::to_string(r.n_variables), csv::format_double(r.mauc.point),
                            csv::format_double(r.mauc.lower), csv::format_double(r.mauc.upper),
                            csv::format_double(r.c_index.point), csv::format_double(r.c_index.lower),
                            csv::format_double(r.c_index.upper)});
  }
  write_text_file(path, out.str());
}

}  // namespace autoscore
