#include "autoscore/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "autoscore/error.hpp"
#include "autoscore/link.hpp"
#include "autoscore/rng.hpp"
#include "autoscore/transform.hpp"

namespace autoscore {

namespace {

constexpr std::size_t kMaxRedraws = 10;

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw ValidationError("scores and outcomes differ in length");
}

}  // namespace

double binary_auc(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores.size(), labels.size());
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Rank-sum of the positives with mid-ranks for ties.
  double rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        rank_sum += mid_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw ValidationError("AUC needs both classes present");
  const double np = static_cast<double>(positives);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(negatives));
}

MeanAuc mean_auc(std::span<const double> scores, std::span<const int> outcomes, int categories) {
  check_lengths(scores.size(), outcomes.size());
  MeanAuc out;
  if (outcomes.empty()) throw ValidationError("mAUC of an empty sample");
  const int J = categories > 0 ? categories : *std::max_element(outcomes.begin(), outcomes.end());
  std::vector<int> labels(outcomes.size());
  double sum = 0.0;
  int valid = 0;
  for (int j = 1; j < J; ++j) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      labels[i] = outcomes[i] > j ? 1 : 0;
      pos += static_cast<std::size_t>(labels[i]);
    }
    if (pos == 0 || pos == outcomes.size()) {
      out.per_split.push_back(std::numeric_limits<double>::quiet_NaN());
      out.warnings.push_back("split Y > " + std::to_string(j) + " has a single class and was skipped");
      continue;
    }
    const double auc = binary_auc(scores, labels);
    out.per_split.push_back(auc);
    sum += auc;
    ++valid;
  }
  if (valid == 0) throw ValidationError("mAUC has no split with both classes present");
  out.value = sum / valid;
  return out;
}

double mean_auc_metric(std::span<const double> scores, std::span<const int> outcomes) {
  return mean_auc(scores, outcomes).value;
}

double generalized_c_index(std::span<const double> scores, std::span<const int> outcomes) {
  check_lengths(scores.size(), outcomes.size());
  const std::size_t n = scores.size();
  if (n == 0) throw ValidationError("c-index of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(outcomes.begin(), outcomes.end());
  if (*lo_it == *hi_it) throw ValidationError("c-index needs at least two distinct outcome categories");
  const int lo = *lo_it;
  const auto K = static_cast<std::size_t>(*hi_it - lo + 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Walk score groups upwards; `below[k]` counts earlier (strictly lower
  // score) rows with outcome lo + k.
  std::vector<double> below(K, 0.0), group(K, 0.0);
  double concordant = 0.0, discordant = 0.0, tied = 0.0, seen = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    std::fill(group.begin(), group.end(), 0.0);
    for (std::size_t k = i; k < j; ++k) group[static_cast<std::size_t>(outcomes[order[k]] - lo)] += 1.0;

    double lower_cum = 0.0;  // earlier rows with outcome < current
    for (std::size_t c = 0; c < K; ++c) {
      if (group[c] > 0.0) {
        const double higher = seen - lower_cum - below[c];
        concordant += group[c] * lower_cum;
        discordant += group[c] * higher;
      }
      lower_cum += below[c];
    }
    double g_total = static_cast<double>(j - i), same = 0.0;
    for (double g : group) same += g * (g - 1.0) / 2.0;
    tied += g_total * (g_total - 1.0) / 2.0 - same;

    for (std::size_t c = 0; c < K; ++c) below[c] += group[c];
    seen += g_total;
    i = j;
  }
  return (concordant + 0.5 * tied) / (concordant + discordant + tied);
}

nlohmann::json BootstrapCI::to_json() const {
  return {{"estimate", point}, {"lower", lower},  {"upper", upper}, {"B", resamples},
          {"used", used},      {"alpha", alpha},  {"z0", z0},       {"seed", seed},
          {"warnings", warnings}};
}

std::vector<std::size_t> bootstrap_resample(std::size_t n, std::uint64_t seed, std::size_t b, std::size_t attempt) {
  Rng rng(derive_seed(seed, b), attempt);
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = rng.below(n);
  return idx;
}

BootstrapCI bc_interval(double point, std::vector<double> replicates, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (replicates.empty()) throw ComputationError("all bootstrap resamples were degenerate");
  BootstrapCI ci;
  ci.point = point;
  ci.alpha = alpha;
  ci.used = replicates.size();
  const double B = static_cast<double>(replicates.size());
  double below = static_cast<double>(std::count_if(replicates.begin(), replicates.end(), [&](double t) { return t < point; }));
  double prop = below / B;
  prop = std::clamp(prop, 0.5 / B, 1.0 - 0.5 / B);
  ci.z0 = normal_quantile(prop);

  std::sort(replicates.begin(), replicates.end());
  double p_lo = alpha / 2.0, p_hi = 1.0 - alpha / 2.0;
  if (ci.z0 != 0.0) {
    const double z = normal_quantile(1.0 - alpha / 2.0);
    p_lo = normal_cdf(2.0 * ci.z0 - z);
    p_hi = normal_cdf(2.0 * ci.z0 + z);
  }
  ci.lower = quantile_sorted(replicates, p_lo);
  ci.upper = quantile_sorted(replicates, p_hi);
  return ci;
}

BootstrapCI bootstrap_ci(const Metric& metric, std::span<const double> scores, std::span<const int> outcomes,
                         std::size_t resamples, double alpha, std::uint64_t seed) {
  check_lengths(scores.size(), outcomes.size());
  if (resamples < 2) throw ValidationError("bootstrap needs B >= 2");
  const double point = metric(scores, outcomes);
  const std::size_t n = scores.size();
  std::vector<double> replicates;
  replicates.reserve(resamples);
  std::vector<double> s(n);
  std::vector<int> y(n);
  std::size_t skipped = 0;
  for (std::size_t b = 0; b < resamples; ++b) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt <= kMaxRedraws && !ok; ++attempt) {
      auto idx = bootstrap_resample(n, seed, b, attempt);
      for (std::size_t k = 0; k < n; ++k) {
        s[k] = scores[idx[k]];
        y[k] = outcomes[idx[k]];
      }
      try {
        replicates.push_back(metric(s, y));
        ok = true;
      } catch (const ValidationError&) {
      }
    }
    if (!ok) ++skipped;
  }
  BootstrapCI ci = bc_interval(point, std::move(replicates), alpha);
  ci.resamples = resamples;
  ci.seed = seed;
  if (skipped > 0) ci.warnings.push_back(std::to_string(skipped) + " degenerate bootstrap resamples skipped");
  return ci;
}

}  // namespace autoscore
