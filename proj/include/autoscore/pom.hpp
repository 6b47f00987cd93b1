#pragma once

// Proportional odds (cumulative link) model on dummy-coded categorical
// predictors:
//
//   P(Y <= j | x) = F(theta_j - x'beta),  j = 1..J-1,  theta_1 < ... < theta_{J-1}
//
// A positive coefficient shifts mass towards higher outcome categories.
// Fitting maximises the log-likelihood by Newton's method on
// (theta_1, log(theta_2 - theta_1), ..., beta), which keeps the intercepts
// ordered at every step.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoscore/link.hpp"
#include "autoscore/transform.hpp"

namespace autoscore {

struct PomVariable {
  std::string name;
  std::vector<std::string> levels;
  int reference = 0;
  std::vector<double> effects;  // per level; effects[reference] == 0
  std::vector<char> observed;   // level has at least one training row

  std::size_t level_index(const std::string& label) const;  // throws on unseen label
};

struct PomFit {
  LinkFunction link;
  std::vector<double> theta;
  std::vector<PomVariable> variables;
  double log_likelihood = 0.0;
  bool converged = false;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool separation = false;
  std::vector<std::string> warnings;

  int categories() const { return static_cast<int>(theta.size()) + 1; }
  const PomVariable& variable(const std::string& name) const;

  nlohmann::json to_json() const;
  static PomFit from_json(const nlohmann::json& doc);
};

struct PomOptions {
  LinkFunction link;
  double grad_tol = 1e-8;
  int max_iter = 100;
  // Reference level per variable; defaults to the first observed level.
  std::map<std::string, int> references;
};

// Dense dummy-coded design: one column per observed non-reference level.
struct PomDesign {
  struct Column {
    std::size_t variable;
    std::size_t level;
  };
  std::vector<PomVariable> variables;  // effects zero-initialised
  std::vector<Column> columns;
  std::vector<double> x;  // rows x columns.size(), row-major
  std::vector<int> y;     // 1..J
  int categories = 2;

  std::size_t rows() const { return y.size(); }
  std::size_t cols() const { return columns.size(); }
  std::vector<std::string> warnings;
};

PomDesign build_design(const CategorizedTable& data, const std::map<std::string, int>& references);

// Log-likelihood in natural parameters (theta_1..theta_{J-1}, beta_1..beta_p).
class PomObjective {
 public:
  PomObjective(const PomDesign& design, LinkFunction link);

  std::size_t dimension() const;
  double value(std::span<const double> params) const;
  std::vector<double> gradient(std::span<const double> params) const;
  // Full symmetric Hessian, row-major.
  std::vector<double> hessian(std::span<const double> params) const;

  // Value, gradient and Hessian in one pass. Hessian is skipped when null.
  double evaluate(std::span<const double> params, std::vector<double>* grad, std::vector<double>* hess) const;

 private:
  const PomDesign& design_;
  LinkFunction link_;
};

PomFit fit_pom(const CategorizedTable& data, const PomOptions& options = {});

// Re-chooses each variable's reference as its lowest-effect level so every
// coefficient is non-negative, then refits once from the shifted solution.
PomFit refit_positive(const PomFit& fit, const CategorizedTable& data, double grad_tol = 1e-8, int max_iter = 100);

// x'beta for a row given as level indices aligned with fit.variables.
double linear_predictor(const PomFit& fit, std::span<const int> levels);
// x'beta for a row given as variable -> level label.
double linear_predictor(const PomFit& fit, const std::map<std::string, std::string>& row);
// x'beta for every row of a categorized table (variables matched by name).
std::vector<double> linear_predictors(const PomFit& fit, const CategorizedTable& data);

struct OrdinalProbabilities {
  std::vector<double> cumulative;  // P(Y <= j), last entry 1
  std::vector<double> category;    // P(Y = j)
};

OrdinalProbabilities cumulative_probs(const PomFit& fit, double eta);
OrdinalProbabilities cumulative_probs(const PomFit& fit, std::span<const int> levels);

double log_likelihood(const PomFit& fit, const CategorizedTable& data);

}  // namespace autoscore
