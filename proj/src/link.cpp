#include "autoscore/link.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "autoscore/error.hpp"

namespace autoscore {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

LinkFunction LinkFunction::parse(std::string_view name) {
  if (name == "logit") return LinkFunction(LinkKind::logit);
  if (name == "probit") return LinkFunction(LinkKind::probit);
  if (name == "cloglog") return LinkFunction(LinkKind::cloglog);
  throw ValidationError("unknown link function: " + std::string(name));
}

std::string LinkFunction::name() const {
  switch (kind_) {
    case LinkKind::logit: return "logit";
    case LinkKind::probit: return "probit";
    case LinkKind::cloglog: return "cloglog";
  }
  return "logit";
}

double LinkFunction::cdf(double x) const {
  switch (kind_) {
    case LinkKind::logit:
      if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
      else {
        double e = std::exp(x);
        return e / (1.0 + e);
      }
    case LinkKind::probit: return normal_cdf(x);
    case LinkKind::cloglog: return -std::expm1(-std::exp(x));
  }
  return 0.0;
}

double LinkFunction::survival(double x) const {
  switch (kind_) {
    case LinkKind::logit: return LinkFunction(LinkKind::logit).cdf(-x);
    case LinkKind::probit: return normal_cdf(-x);
    case LinkKind::cloglog: return std::exp(-std::exp(x));
  }
  return 0.0;
}

double LinkFunction::density(double x) const {
  switch (kind_) {
    case LinkKind::logit: {
      double e = std::exp(-std::abs(x));
      double d = 1.0 + e;
      return e / (d * d);
    }
    case LinkKind::probit: return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    case LinkKind::cloglog: {
      if (x > 700.0) return 0.0;
      return std::exp(x - std::exp(x));
    }
  }
  return 0.0;
}

double LinkFunction::density_derivative(double x) const {
  switch (kind_) {
    case LinkKind::logit: {
      // f' = f (1 - 2F), with 1 - 2F = tanh(-x/2)
      return density(x) * std::tanh(-0.5 * x);
    }
    case LinkKind::probit: return -x * density(x);
    case LinkKind::cloglog: {
      if (x > 700.0) return 0.0;
      return density(x) * (-std::expm1(x));
    }
  }
  return 0.0;
}

double LinkFunction::quantile(double p) const {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  switch (kind_) {
    case LinkKind::logit: return std::log(p / (1.0 - p));
    case LinkKind::probit: return normal_quantile(p);
    case LinkKind::cloglog: return std::log(-std::log1p(-p));
  }
  return 0.0;
}

double LinkFunction::interval_probability(double lower, double upper) const {
  // Difference of survivals is more accurate when both bounds sit in the
  // upper tail.
  if (lower > 0.0) return survival(lower) - survival(upper);
  return cdf(upper) - cdf(lower);
}

}  // namespace autoscore
