#include "autoscore/pom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "autoscore/error.hpp"
#include "autoscore/kernels.hpp"

namespace autoscore {

using nlohmann::json;

namespace {

constexpr double kProbabilityFloor = 1e-300;
constexpr double kSeparationMagnitude = 30.0;

// In-place Cholesky of a symmetric positive-definite matrix (lower factor).
bool cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * n + k] * b[k];
    b[i] /= l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= l[k * n + i] * b[k];
    b[i] /= l[i * n + i];
  }
  return b;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Natural parameters <-> (theta_1, log gaps, beta).
std::vector<double> to_working(std::span<const double> natural, std::size_t j1) {
  std::vector<double> psi(natural.begin(), natural.end());
  for (std::size_t k = 1; k < j1; ++k) psi[k] = std::log(natural[k] - natural[k - 1]);
  return psi;
}

std::vector<double> to_natural(std::span<const double> psi, std::size_t j1) {
  std::vector<double> nat(psi.begin(), psi.end());
  for (std::size_t k = 1; k < j1; ++k) nat[k] = nat[k - 1] + std::exp(psi[k]);
  return nat;
}

struct Working {
  std::vector<double> grad;
  std::vector<double> hess;
};

// Chain rule from natural-parameter derivatives to working parameters.
Working to_working_derivatives(std::span<const double> psi, std::size_t j1, const std::vector<double>& g,
                               const std::vector<double>& h) {
  const std::size_t d = g.size();
  // T[j][k] = d theta_j / d psi_k for the intercept block.
  std::vector<double> t(j1 * j1, 0.0);
  for (std::size_t j = 0; j < j1; ++j) {
    t[j * j1] = 1.0;
    for (std::size_t k = 1; k <= j; ++k) t[j * j1 + k] = std::exp(psi[k]);
  }
  Working w;
  w.grad = g;
  w.hess = h;
  for (std::size_t k = 0; k < j1; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < j1; ++j) s += g[j] * t[j * j1 + k];
    w.grad[k] = s;
  }
  for (std::size_t k = 0; k < j1; ++k) {
    for (std::size_t l = 0; l < j1; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < j1; ++j) {
        if (t[j * j1 + k] == 0.0) continue;
        for (std::size_t m = 0; m < j1; ++m) s += t[j * j1 + k] * h[j * d + m] * t[m * j1 + l];
      }
      if (k == l && k >= 1) {
        double tail = 0.0;
        for (std::size_t j = k; j < j1; ++j) tail += g[j];
        s += std::exp(psi[k]) * tail;
      }
      w.hess[k * d + l] = s;
    }
    for (std::size_t c = j1; c < d; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < j1; ++j) s += t[j * j1 + k] * h[j * d + c];
      w.hess[k * d + c] = s;
      w.hess[c * d + k] = s;
    }
  }
  return w;
}

PomFit assemble_fit(const PomDesign& design, const LinkFunction& link, std::span<const double> natural) {
  const std::size_t j1 = static_cast<std::size_t>(design.categories - 1);
  PomFit fit;
  fit.link = link;
  fit.theta.assign(natural.begin(), natural.begin() + static_cast<std::ptrdiff_t>(j1));
  fit.variables = design.variables;
  for (std::size_t c = 0; c < design.cols(); ++c) {
    const auto& col = design.columns[c];
    fit.variables[col.variable].effects[col.level] = natural[j1 + c];
  }
  fit.warnings = design.warnings;
  return fit;
}

std::vector<double> initial_parameters(const PomDesign& design, const LinkFunction& link) {
  const std::size_t j1 = static_cast<std::size_t>(design.categories - 1);
  std::vector<double> counts(static_cast<std::size_t>(design.categories), 0.0);
  for (int y : design.y) counts[static_cast<std::size_t>(y - 1)] += 1.0;
  std::vector<double> params(j1 + design.cols(), 0.0);
  double cum = 0.0;
  const double n = static_cast<double>(design.rows());
  for (std::size_t j = 0; j < j1; ++j) {
    cum += counts[j];
    params[j] = link.quantile(cum / n);
  }
  return params;
}

PomFit fit_design(const PomDesign& design, const LinkFunction& link, double grad_tol, int max_iter,
                  std::vector<double> natural) {
  if (grad_tol <= 0.0) throw ValidationError("grad_tol must be positive");
  if (max_iter < 0) throw ValidationError("max_iter must be non-negative");
  const std::size_t j1 = static_cast<std::size_t>(design.categories - 1);
  const std::size_t d = j1 + design.cols();
  PomObjective objective(design, link);

  std::vector<double> psi = to_working(natural, j1);
  std::vector<double> g, h;
  double ll = objective.evaluate(natural, &g, &h);
  int iter = 0;
  bool stalled = false;
  for (; iter < max_iter; ++iter) {
    if (inf_norm(g) < grad_tol) break;
    Working w = to_working_derivatives(psi, j1, g, h);

    // Newton direction on -H; Levenberg damping if it is not positive definite.
    std::vector<double> a(d * d);
    for (std::size_t k = 0; k < d * d; ++k) a[k] = -w.hess[k];
    double scale = 0.0;
    for (std::size_t k = 0; k < d; ++k) scale = std::max(scale, std::abs(a[k * d + k]));
    std::vector<double> step;
    double lambda = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::vector<double> l = a;
      for (std::size_t k = 0; k < d; ++k) l[k * d + k] += lambda;
      if (cholesky(l, d)) {
        step = cholesky_solve(l, d, w.grad);
        break;
      }
      lambda = lambda == 0.0 ? 1e-8 * std::max(scale, 1.0) : lambda * 10.0;
    }
    if (step.empty()) {
      // Gradient ascent fallback.
      const double gn = std::max(1.0, inf_norm(w.grad));
      step = w.grad;
      for (double& s : step) s /= gn;
    }

    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 50; ++halving, t *= 0.5) {
      std::vector<double> trial(d);
      for (std::size_t k = 0; k < d; ++k) trial[k] = psi[k] + t * step[k];
      std::vector<double> trial_nat = to_natural(trial, j1);
      double trial_ll = objective.evaluate(trial_nat, nullptr, nullptr);
      if (std::isfinite(trial_ll) && trial_ll >= ll - 1e-12 * (1.0 + std::abs(ll))) {
        psi = std::move(trial);
        natural = std::move(trial_nat);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    ll = objective.evaluate(natural, &g, &h);
  }

  PomFit fit = assemble_fit(design, link, natural);
  fit.log_likelihood = ll;
  fit.iterations = iter;
  fit.gradient_norm = inf_norm(g);
  fit.converged = fit.gradient_norm < grad_tol;
  if (!fit.converged) {
    fit.warnings.push_back(stalled ? "line search stalled before the gradient tolerance was reached"
                                   : "maximum iterations reached before convergence");
  }
  for (std::size_t k = j1; k < d; ++k) {
    if (std::abs(natural[k]) > kSeparationMagnitude) fit.separation = true;
  }
  if (fit.separation) fit.warnings.push_back("coefficient magnitude exceeds 30; data may be separated");
  // A level whose rows all sit in an extreme category drives its effect to
  // infinity; the gradient test stops the drift well short of 30.
  for (std::size_t c = 0; c < design.cols(); ++c) {
    bool any = false, all_low = true, all_high = true;
    for (std::size_t i = 0; i < design.rows(); ++i) {
      if (design.x[i * design.cols() + c] == 0.0) continue;
      any = true;
      all_low = all_low && design.y[i] == 1;
      all_high = all_high && design.y[i] == design.categories;
    }
    if (any && (all_low || all_high)) {
      const auto& col = design.columns[c];
      const auto& var = design.variables[col.variable];
      fit.separation = true;
      fit.warnings.push_back("level '" + var.levels[col.level] + "' of '" + var.name + "' has every row in category " +
                             std::to_string(all_low ? 1 : design.categories) + "; its effect is not identified");
    }
  }
  return fit;
}

}  // namespace

std::size_t PomVariable::level_index(const std::string& label) const {
  auto it = std::find(levels.begin(), levels.end(), label);
  if (it == levels.end()) throw ValidationError("unseen category '" + label + "' for variable '" + name + "'");
  return static_cast<std::size_t>(it - levels.begin());
}

const PomVariable& PomFit::variable(const std::string& name) const {
  for (const auto& v : variables) {
    if (v.name == name) return v;
  }
  throw ValidationError("variable not in model: " + name);
}

PomDesign build_design(const CategorizedTable& data, const std::map<std::string, int>& references) {
  PomDesign design;
  design.categories = data.outcome.categories();
  if (design.categories < 2) throw ValidationError("ordinal outcome needs at least 2 categories");
  design.y = data.outcome.values;
  const auto counts = data.outcome.counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) {
      throw ValidationError("outcome category '" + data.outcome.labels[j] + "' is absent from the fitting data");
    }
  }
  for (const auto& [name, ref] : references) {
    (void)ref;
    data.variable(name);
  }

  for (const auto& var : data.variables) {
    std::vector<std::size_t> level_n(var.levels.size(), 0);
    for (int c : var.codes) ++level_n.at(static_cast<std::size_t>(c));
    const auto n_observed = std::count_if(level_n.begin(), level_n.end(), [](std::size_t c) { return c > 0; });
    if (var.single_level() || n_observed < 2) {
      design.warnings.push_back("variable '" + var.name + "' has a single category and was dropped");
      continue;
    }
    PomVariable pv;
    pv.name = var.name;
    pv.levels = var.levels;
    pv.effects.assign(var.levels.size(), 0.0);
    pv.observed.resize(var.levels.size());
    for (std::size_t l = 0; l < var.levels.size(); ++l) {
      pv.observed[l] = level_n[l] > 0;
      if (!pv.observed[l]) {
        design.warnings.push_back("level '" + var.levels[l] + "' of variable '" + var.name +
                                  "' has no rows; its effect is fixed at 0");
      }
    }
    auto ref = references.find(var.name);
    if (ref != references.end()) {
      if (ref->second < 0 || static_cast<std::size_t>(ref->second) >= var.levels.size() ||
          !pv.observed[static_cast<std::size_t>(ref->second)]) {
        throw ValidationError("invalid reference level for variable '" + var.name + "'");
      }
      pv.reference = ref->second;
    } else {
      pv.reference = static_cast<int>(std::find(pv.observed.begin(), pv.observed.end(), 1) - pv.observed.begin());
    }
    const std::size_t vi = design.variables.size();
    for (std::size_t l = 0; l < var.levels.size(); ++l) {
      if (pv.observed[l] && static_cast<int>(l) != pv.reference) design.columns.push_back({vi, l});
    }
    design.variables.push_back(std::move(pv));
  }

  const std::size_t n = data.rows(), p = design.cols();
  design.x.assign(n * p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    const auto& col = design.columns[c];
    const auto& codes = data.variable(design.variables[col.variable].name).codes;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(codes[i]) == col.level) design.x[i * p + c] = 1.0;
    }
  }
  return design;
}

PomObjective::PomObjective(const PomDesign& design, LinkFunction link) : design_(design), link_(link) {}

std::size_t PomObjective::dimension() const { return static_cast<std::size_t>(design_.categories - 1) + design_.cols(); }

double PomObjective::value(std::span<const double> params) const { return evaluate(params, nullptr, nullptr); }

std::vector<double> PomObjective::gradient(std::span<const double> params) const {
  std::vector<double> g;
  evaluate(params, &g, nullptr);
  return g;
}

std::vector<double> PomObjective::hessian(std::span<const double> params) const {
  std::vector<double> g, h;
  evaluate(params, &g, &h);
  return h;
}

double PomObjective::evaluate(std::span<const double> params, std::vector<double>* grad, std::vector<double>* hess) const {
  const std::size_t j1 = static_cast<std::size_t>(design_.categories - 1);
  const std::size_t p = design_.cols();
  const std::size_t n = design_.rows();
  const std::size_t d = j1 + p;
  if (params.size() != d) throw std::invalid_argument("POM parameter vector has the wrong length");
  const kernels::MatrixView x{design_.x.data(), n, p};

  std::vector<double> eta(n, 0.0);
  if (p > 0) kernels::gemv(x, params.subspan(j1), eta);

  const bool want_grad = grad != nullptr;
  const bool want_hess = hess != nullptr;
  std::vector<double> g_eta, w_beta, v_theta;
  if (want_grad) {
    grad->assign(d, 0.0);
    g_eta.assign(n, 0.0);
  }
  if (want_hess) {
    hess->assign(d * d, 0.0);
    w_beta.assign(n, 0.0);
    v_theta.assign(j1 * n, 0.0);
  }

  const double inf = std::numeric_limits<double>::infinity();
  double ll = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::size_t>(design_.y[i]);
    const bool has_upper = y <= j1;  // theta_y exists
    const bool has_lower = y >= 2;   // theta_{y-1} exists
    const double upper = has_upper ? params[y - 1] - eta[i] : inf;
    const double lower = has_lower ? params[y - 2] - eta[i] : -inf;
    const double prob = link_.interval_probability(lower, upper);
    const double pr = std::max(prob, kProbabilityFloor);
    ll += std::log(pr);
    if (!want_grad) continue;

    const double fu = has_upper ? link_.density(upper) : 0.0;
    const double fl = has_lower ? link_.density(lower) : 0.0;
    const double la = fu / pr;
    const double lb = -fl / pr;
    if (has_upper) (*grad)[y - 1] += la;
    if (has_lower) (*grad)[y - 2] += lb;
    g_eta[i] = -(la + lb);
    if (!want_hess) continue;

    const double laa = (has_upper ? link_.density_derivative(upper) / pr : 0.0) - la * la;
    const double lbb = (has_lower ? -link_.density_derivative(lower) / pr : 0.0) - lb * lb;
    const double lab = -la * lb;
    if (has_upper) (*hess)[(y - 1) * d + (y - 1)] += laa;
    if (has_lower) (*hess)[(y - 2) * d + (y - 2)] += lbb;
    if (has_upper && has_lower) {
      (*hess)[(y - 1) * d + (y - 2)] += lab;
      (*hess)[(y - 2) * d + (y - 1)] += lab;
    }
    w_beta[i] = laa + 2.0 * lab + lbb;
    if (has_upper) v_theta[(y - 1) * n + i] = -(laa + lab);
    if (has_lower) v_theta[(y - 2) * n + i] = -(lab + lbb);
  }

  if (want_grad && p > 0) kernels::gemv_transposed(x, g_eta, std::span<double>(*grad).subspan(j1));
  if (want_hess && p > 0) {
    std::vector<double> gram(p * p, 0.0);
    kernels::weighted_gram(x, w_beta, gram);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < p; ++b) (*hess)[(j1 + a) * d + j1 + b] = gram[a * p + b];
    }
    std::vector<double> cross(p);
    for (std::size_t j = 0; j < j1; ++j) {
      std::fill(cross.begin(), cross.end(), 0.0);
      kernels::gemv_transposed(x, std::span<const double>(v_theta).subspan(j * n, n), cross);
      for (std::size_t c = 0; c < p; ++c) {
        (*hess)[j * d + j1 + c] = cross[c];
        (*hess)[(j1 + c) * d + j] = cross[c];
      }
    }
  }
  return ll;
}

PomFit fit_pom(const CategorizedTable& data, const PomOptions& options) {
  PomDesign design = build_design(data, options.references);
  return fit_design(design, options.link, options.grad_tol, options.max_iter, initial_parameters(design, options.link));
}

PomFit refit_positive(const PomFit& fit, const CategorizedTable& data, double grad_tol, int max_iter) {
  std::map<std::string, int> references;
  double shift = 0.0;
  std::vector<std::vector<double>> shifted;
  for (const auto& v : fit.variables) {
    // Lowest effect among observed levels; ties keep the current reference,
    // then the lowest level index.
    int best = v.reference;
    for (std::size_t l = 0; l < v.levels.size(); ++l) {
      if (!v.observed[l]) continue;
      if (v.effects[l] < v.effects[static_cast<std::size_t>(best)]) best = static_cast<int>(l);
    }
    const double base = v.effects[static_cast<std::size_t>(best)];
    references[v.name] = best;
    shift += base;
    std::vector<double> e = v.effects;
    for (std::size_t l = 0; l < e.size(); ++l) e[l] = v.observed[l] ? e[l] - base : 0.0;
    shifted.push_back(std::move(e));
  }

  // Only the fitted variables take part in the refit.
  CategorizedTable subset;
  subset.outcome = data.outcome;
  for (const auto& v : fit.variables) subset.variables.push_back(data.variable(v.name));
  PomDesign design = build_design(subset, references);

  // Start from the exact reparameterisation of the current optimum:
  // x'beta drops by `shift`, so every intercept drops by the same amount.
  const std::size_t j1 = fit.theta.size();
  std::vector<double> start(j1 + design.cols());
  for (std::size_t j = 0; j < j1; ++j) start[j] = fit.theta[j] - shift;
  for (std::size_t c = 0; c < design.cols(); ++c) {
    start[j1 + c] = shifted[design.columns[c].variable][design.columns[c].level];
  }
  PomFit out = fit_design(design, fit.link, grad_tol, max_iter, std::move(start));

  for (auto& v : out.variables) {
    for (std::size_t l = 0; l < v.effects.size(); ++l) {
      if (v.effects[l] < 0.0) {
        out.warnings.push_back("clamped coefficient " + std::to_string(v.effects[l]) + " of " + v.name + "=" +
                               v.levels[l] + " to 0");
        v.effects[l] = 0.0;
      }
    }
  }
  return out;
}

double linear_predictor(const PomFit& fit, std::span<const int> levels) {
  if (levels.size() != fit.variables.size()) throw ValidationError("row does not match the model's variables");
  double eta = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& v = fit.variables[k];
    if (levels[k] < 0 || static_cast<std::size_t>(levels[k]) >= v.levels.size()) {
      throw ValidationError("unseen category index for variable '" + v.name + "'");
    }
    eta += v.effects[static_cast<std::size_t>(levels[k])];
  }
  return eta;
}

double linear_predictor(const PomFit& fit, const std::map<std::string, std::string>& row) {
  double eta = 0.0;
  for (const auto& v : fit.variables) {
    auto it = row.find(v.name);
    if (it == row.end()) throw ValidationError("row is missing model variable '" + v.name + "'");
    eta += v.effects[v.level_index(it->second)];
  }
  return eta;
}

std::vector<double> linear_predictors(const PomFit& fit, const CategorizedTable& data) {
  std::vector<double> eta(data.rows(), 0.0);
  for (const auto& v : fit.variables) {
    const auto& var = data.variable(v.name);
    if (var.levels != v.levels) throw ValidationError("categories of '" + v.name + "' differ from the model's");
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] += v.effects[static_cast<std::size_t>(var.codes[i])];
  }
  return eta;
}

OrdinalProbabilities cumulative_probs(const PomFit& fit, double eta) {
  OrdinalProbabilities out;
  const std::size_t J = fit.theta.size() + 1;
  out.cumulative.resize(J);
  out.category.resize(J);
  for (std::size_t j = 0; j + 1 < J; ++j) out.cumulative[j] = fit.link.cdf(fit.theta[j] - eta);
  out.cumulative[J - 1] = 1.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < J; ++j) {
    const double upper = j + 1 < J ? fit.theta[j] - eta : inf;
    const double lower = j > 0 ? fit.theta[j - 1] - eta : -inf;
    out.category[j] = std::max(0.0, fit.link.interval_probability(lower, upper));
  }
  return out;
}

OrdinalProbabilities cumulative_probs(const PomFit& fit, std::span<const int> levels) {
  return cumulative_probs(fit, linear_predictor(fit, levels));
}

double log_likelihood(const PomFit& fit, const CategorizedTable& data) {
  const auto eta = linear_predictors(fit, data);
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t j1 = fit.theta.size();
  double ll = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const auto y = static_cast<std::size_t>(data.outcome.values[i]);
    const double upper = y <= j1 ? fit.theta[y - 1] - eta[i] : inf;
    const double lower = y >= 2 ? fit.theta[y - 2] - eta[i] : -inf;
    ll += std::log(std::max(fit.link.interval_probability(lower, upper), kProbabilityFloor));
  }
  return ll;
}

json PomFit::to_json() const {
  json vars = json::array();
  for (const auto& v : variables) {
    json coefs = json::object();
    for (std::size_t l = 0; l < v.levels.size(); ++l) {
      if (static_cast<int>(l) != v.reference) coefs[v.levels[l]] = v.effects[l];
    }
    std::vector<bool> observed(v.observed.begin(), v.observed.end());
    vars.push_back({{"name", v.name},
                    {"levels", v.levels},
                    {"reference", v.levels[static_cast<std::size_t>(v.reference)]},
                    {"coefficients", coefs},
                    {"observed", observed}});
  }
  return {{"link", link.name()},
          {"theta", theta},
          {"variables", vars},
          {"diagnostics",
           {{"log_likelihood", log_likelihood},
            {"converged", converged},
            {"gradient_norm", gradient_norm},
            {"iterations", iterations},
            {"separation", separation},
            {"warnings", warnings}}}};
}

PomFit PomFit::from_json(const json& doc) {
  PomFit fit;
  try {
    fit.link = LinkFunction::parse(doc.at("link").get<std::string>());
    fit.theta = doc.at("theta").get<std::vector<double>>();
    for (const auto& v : doc.at("variables")) {
      PomVariable pv;
      pv.name = v.at("name").get<std::string>();
      pv.levels = v.at("levels").get<std::vector<std::string>>();
      pv.reference = static_cast<int>(pv.level_index(v.at("reference").get<std::string>()));
      pv.effects.assign(pv.levels.size(), 0.0);
      for (const auto& [label, coef] : v.at("coefficients").items()) pv.effects[pv.level_index(label)] = coef.get<double>();
      auto observed = v.value("observed", std::vector<bool>(pv.levels.size(), true));
      pv.observed.assign(observed.begin(), observed.end());
      fit.variables.push_back(std::move(pv));
    }
    const auto& diag = doc.at("diagnostics");
    fit.log_likelihood = diag.at("log_likelihood").get<double>();
    fit.converged = diag.at("converged").get<bool>();
    fit.gradient_norm = diag.at("gradient_norm").get<double>();
    fit.iterations = diag.at("iterations").get<int>();
    fit.separation = diag.value("separation", false);
    fit.warnings = diag.value("warnings", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
  return fit;
}

}  // namespace autoscore
