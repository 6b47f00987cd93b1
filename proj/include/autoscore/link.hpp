#pragma once

#include <string>
#include <string_view>

namespace autoscore {

enum class LinkKind { logit, probit, cloglog };

// Cumulative link: P(Y <= j) = F(theta_j - x'beta).
class LinkFunction {
 public:
  constexpr LinkFunction() = default;
  constexpr explicit LinkFunction(LinkKind kind) : kind_(kind) {}

  static LinkFunction parse(std::string_view name);

  LinkKind kind() const { return kind_; }
  std::string name() const;

  double cdf(double x) const;
  // 1 - F(x), evaluated without cancellation in the upper tail.
  double survival(double x) const;
  double density(double x) const;
  // f'(x), needed for the observed-information Hessian.
  double density_derivative(double x) const;
  double quantile(double p) const;

  // F(upper) - F(lower) with lower < upper; either bound may be infinite.
  double interval_probability(double lower, double upper) const;

  friend bool operator==(LinkFunction a, LinkFunction b) { return a.kind_ == b.kind_; }

 private:
  LinkKind kind_ = LinkKind::logit;
};

// Standard normal helpers shared by the probit link and the bootstrap.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace autoscore
