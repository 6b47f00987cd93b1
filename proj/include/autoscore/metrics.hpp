#pragma once

// Discrimination metrics for ordinal predictions and bias-corrected
// bootstrap intervals.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace autoscore {

// Mann-Whitney AUC; ties count one half. labels are 0/1.
double binary_auc(std::span<const double> scores, std::span<const int> labels);

struct MeanAuc {
  double value = 0.0;
  std::vector<double> per_split;   // AUC of Y > j, j = 1..J-1 (NaN when skipped)
  std::vector<std::string> warnings;
};

// Mean over j of AUC(scores, Y > j). Splits lacking one class are skipped.
// `categories` = 0 takes J from the largest observed outcome.
MeanAuc mean_auc(std::span<const double> scores, std::span<const int> outcomes, int categories = 0);

// Pairs with different outcomes: (concordant + ties/2) / pairs.
double generalized_c_index(std::span<const double> scores, std::span<const int> outcomes);

using Metric = std::function<double(std::span<const double>, std::span<const int>)>;
double mean_auc_metric(std::span<const double> scores, std::span<const int> outcomes);

struct BootstrapCI {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t resamples = 0;  // requested B
  std::size_t used = 0;       // non-degenerate resamples
  double alpha = 0.05;
  double z0 = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

// Row indices of resample `b`, attempt `attempt` (degenerate draws are
// redrawn with the next attempt number).
std::vector<std::size_t> bootstrap_resample(std::size_t n, std::uint64_t seed, std::size_t b, std::size_t attempt);

// BC interval (acceleration 0): z0 = Phi^-1(#{theta* < theta_hat} / B), with
// proportions 0 and 1 clipped to 0.5/B and 1 - 0.5/B; endpoints are the
// type-7 quantiles of theta* at Phi(2 z0 -/+ z_{1-alpha/2}).
BootstrapCI bootstrap_ci(const Metric& metric, std::span<const double> scores, std::span<const int> outcomes,
                         std::size_t resamples = 100, double alpha = 0.05, std::uint64_t seed = 0);

// The interval computation alone, given the replicates.
BootstrapCI bc_interval(double point, std::vector<double> replicates, double alpha);

}  // namespace autoscore
