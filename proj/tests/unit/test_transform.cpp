#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "autoscore/error.hpp"
#include "autoscore/transform.hpp"
#include "test_util.hpp"

using namespace autoscore;
using autoscore::testing::continuous_table;

namespace {

DataTable one_column(std::vector<double> x) {
  std::vector<int> y(x.size(), 1);
  for (std::size_t i = 0; i < y.size(); i += 2) y[i] = 2;
  return continuous_table({std::move(x)}, y, 2);
}

std::vector<double> interval_fractions(const std::vector<double>& x, const std::vector<double>& cuts) {
  std::vector<double> f(cuts.size() + 1, 0.0);
  for (double v : x) f[interval_index(cuts, v)] += 1.0 / static_cast<double>(x.size());
  return f;
}

}  // namespace

TEST(Quantile, TypeSevenInterpolation) {
  std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
}

TEST(DeriveCutoffs, ZeroToHundred) {
  std::vector<double> x;
  for (int i = 0; i <= 100; ++i) x.push_back(i);
  auto spec = derive_cutoffs(one_column(x), default_percentiles());
  EXPECT_EQ(spec.cutoffs.at("x1"), (std::vector<double>{5, 20, 80, 95}));
}

TEST(DeriveCutoffs, ConstantColumnCollapses) {
  auto spec = derive_cutoffs(one_column(std::vector<double>(50, 3.0)), default_percentiles());
  EXPECT_TRUE(spec.cutoffs.at("x1").empty());
  EXPECT_EQ(spec.single_category_variables(), std::vector<std::string>{"x1"});
}

TEST(DeriveCutoffs, CoincidingQuantilesDeduplicated) {
  std::vector<double> x(25, 0.0);
  for (int i = 1; i <= 75; ++i) x.push_back(i);
  auto cuts = derive_cutoffs(one_column(x), default_percentiles()).cutoffs.at("x1");
  ASSERT_EQ(cuts.size(), 3u);
  EXPECT_EQ(cuts[0], 0.0);
  EXPECT_NEAR(cuts[1], 55.2, 1e-12);
  EXPECT_NEAR(cuts[2], 70.05, 1e-12);
}

TEST(DeriveCutoffs, CategoricalColumnsHaveNoEntry) {
  Schema s;
  s.columns = {{"g", ColumnKind::categorical, {"a", "b"}}};
  s.outcome_name = "y";
  s.outcome_labels = {"1", "2"};
  DataTable t(s, {{0, 1, 0}}, {{"1", "2"}, {1, 2, 1}});
  EXPECT_FALSE(derive_cutoffs(t, default_percentiles()).covers("g"));
  EXPECT_THROW(derive_cutoffs(t, std::vector<double>{20, 5}), ValidationError);
}

TEST(PruneCutoffs, GreedyMergeTrace) {
  std::vector<double> x;
  const std::vector<std::pair<int, double>> bins{{5, 0.5}, {195, 1.5}, {600, 2.5}, {150, 3.5}, {50, 4.5}};
  for (auto [count, value] : bins) x.insert(x.end(), static_cast<std::size_t>(count), value);
  auto t = one_column(x);
  CutoffSpec spec;
  spec.cutoffs["x1"] = {1, 2, 3, 4};
  auto pruned = prune_cutoffs(spec, t, 0.01);
  EXPECT_EQ(pruned.cutoffs.at("x1"), (std::vector<double>{2, 3, 4}));
  EXPECT_EQ(prune_cutoffs(spec, t, 0.0), spec);
  EXPECT_EQ(prune_cutoffs(spec, t, 0.004), spec);
}

TEST(PruneCutoffs, EveryIntervalMeetsThresholdProperty) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x;
    const std::size_t n = 50 + rng.below(500);
    for (std::size_t i = 0; i < n; ++i) x.push_back(std::exp(3 * rng.normal()));
    auto t = one_column(x);
    const double threshold = 0.01 + 0.2 * rng.uniform();
    auto spec = prune_cutoffs(derive_cutoffs(t, std::vector<double>{2, 5, 10, 20, 50, 80, 95, 99}), t, threshold);
    const auto& cuts = spec.cutoffs.at("x1");
    if (cuts.empty()) continue;
    for (double f : interval_fractions(x, cuts)) EXPECT_GE(f + 1e-12, threshold);
  }
}

TEST(IntervalIndex, LeftClosedPartition) {
  const std::vector<double> cuts{40, 80, 240, 360};
  EXPECT_EQ(interval_index(cuts, 39.999), 0u);
  EXPECT_EQ(interval_index(cuts, 40), 1u);
  EXPECT_EQ(interval_index(cuts, 50), 1u);
  EXPECT_EQ(interval_index(cuts, 360), 4u);
  EXPECT_EQ(interval_labels(cuts)[1], "[40,80)");
  EXPECT_EQ(interval_labels(cuts).front(), "<40");
  EXPECT_EQ(interval_labels(cuts).back(), ">=360");
  EXPECT_EQ(interval_labels(std::vector<double>{}), std::vector<std::string>{"all"});
}

TEST(IntervalIndex, MonotoneInValueProperty) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> cuts;
    for (std::size_t k = 0; k < 1 + rng.below(6); ++k) cuts.push_back(rng.normal() * 10);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double a = rng.normal() * 15, b = rng.normal() * 15;
    if (a > b) std::swap(a, b);
    EXPECT_LE(interval_index(cuts, a), interval_index(cuts, b));
    // An order-preserving re-encoding of value and cut-offs keeps the interval.
    std::vector<double> warped;
    for (double c : cuts) warped.push_back(std::exp(c / 10));
    EXPECT_EQ(interval_index(cuts, a), interval_index(warped, std::exp(a / 10)));
  }
}

TEST(Categorize, LabelsAndPassthrough) {
  Schema s;
  s.columns = {{"los", ColumnKind::continuous, {}}, {"g", ColumnKind::categorical, {"no", "yes"}}};
  s.outcome_name = "y";
  s.outcome_labels = {"1", "2"};
  DataTable t(s, {{50, 40, 500}, {1, 0, 1}}, {{"1", "2"}, {1, 2, 2}});
  CutoffSpec spec;
  spec.cutoffs["los"] = {40, 80, 240, 360};
  auto c = categorize(t, spec);
  const auto& los = c.variable("los");
  EXPECT_EQ(los.levels[static_cast<std::size_t>(los.codes[0])], "[40,80)");
  EXPECT_EQ(los.codes[1], 1);
  EXPECT_EQ(los.codes[2], 4);
  EXPECT_EQ(c.variable("g").codes, (std::vector<int>{1, 0, 1}));
  EXPECT_THROW(categorize(t, CutoffSpec{}), ValidationError);
}

TEST(Overrides, ReplaceVerbatimAndValidate) {
  CutoffSpec spec;
  spec.cutoffs["age"] = {30.5, 50, 70};
  spec.cutoffs["sbp"] = {100, 140};
  CutoffSpec o;
  o.cutoffs["age"] = {25, 45, 75, 85};
  auto out = apply_overrides(spec, o);
  EXPECT_EQ(out.cutoffs.at("age"), (std::vector<double>{25, 45, 75, 85}));
  EXPECT_EQ(out.cutoffs.at("sbp"), spec.cutoffs.at("sbp"));
  EXPECT_EQ(apply_overrides(spec, CutoffSpec{}), spec);
  CutoffSpec unknown;
  unknown.cutoffs["pulse"] = {70};
  EXPECT_THROW(apply_overrides(spec, unknown), ValidationError);
  EXPECT_THROW(CutoffSpec::from_json(nlohmann::json::parse(R"({"age": [10, 10]})")), ValidationError);
  auto round = CutoffSpec::from_json(out.to_json());
  EXPECT_EQ(round, out);
}
