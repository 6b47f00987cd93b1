#pragma once

// Multiclass random forest used to rank candidate predictors by mean
// decrease in Gini impurity, and as a comparator predictor at evaluation.
// Outcome ordering is ignored: categories are plain class labels.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "autoscore/data.hpp"

namespace autoscore {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t mtry = 0;           // 0 means floor(sqrt(p)), at least 1
  std::size_t min_node_size = 1;  // nodes with <= this many samples become leaves
  std::size_t max_depth = 0;      // 0 means unlimited
  bool bootstrap = true;          // false trains every tree on all rows
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct TreeNode {
  int variable = -1;  // -1 for leaves
  double threshold = 0.0;              // continuous: x <= threshold goes left
  std::vector<char> left_categories;   // categorical: indexed by category code
  int left = -1;
  int right = -1;
  double impurity_decrease = 0.0;
  std::vector<std::size_t> class_counts;  // leaves only

  bool is_leaf() const { return variable < 0; }
};

class DecisionTree {
 public:
  std::vector<TreeNode> nodes;

  // Index of the leaf reached by row `i` of `table`.
  std::size_t leaf_for(const DataTable& table, std::size_t i) const;
  // Majority class (0-based) of that leaf, ties to the lower class.
  int predict(const DataTable& table, std::size_t i) const;
  std::size_t in_bag_count() const;
};

struct Forest {
  std::vector<DecisionTree> trees;
  ForestParams params;  // with mtry resolved
  Schema schema;
  std::vector<double> impurity_decrease;  // summed over all trees, per predictor

  int categories() const { return schema.categories(); }
};

struct ImportanceEntry {
  std::string variable;
  double importance = 0.0;
};

using ImportanceRanking = std::vector<ImportanceEntry>;

Forest train_forest(const DataTable& train, ForestParams params);

// Mean decrease in Gini impurity per tree; descending, ties in schema order.
ImportanceRanking variable_importance(const Forest& forest);

// Majority vote over trees (outcome values 1..J); ties go to the lower category.
std::vector<int> forest_predict(const Forest& forest, const DataTable& rows);

// Per row, the fraction of trees voting for each category (row-major n x J).
std::vector<double> forest_vote_fractions(const Forest& forest, const DataTable& rows);

void write_ranking_csv(const std::string& path, const ImportanceRanking& ranking);
ImportanceRanking read_ranking_csv(const std::string& path);

}  // namespace autoscore
