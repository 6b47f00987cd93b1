#include "autoscore/forest.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "autoscore/csv.hpp"
#include "autoscore/digest.hpp"
#include "autoscore/error.hpp"
#include "autoscore/rng.hpp"

namespace autoscore {

namespace {

constexpr std::size_t kExhaustiveCategoryLimit = 10;

// Sum over children of sum_c count_c^2 / n_child. The Gini decrease of a
// split, in count units, is this score minus the parent's.
double gini_score(std::span<const std::size_t> counts, std::size_t n) {
  if (n == 0) return 0.0;
  double s = 0.0;
  for (auto c : counts) s += static_cast<double>(c) * static_cast<double>(c);
  return s / static_cast<double>(n);
}

struct SplitCandidate {
  int variable = -1;
  double score = -1.0;  // children gini score
  double threshold = 0.0;
  std::vector<char> left_categories;
};

class TreeBuilder {
 public:
  TreeBuilder(const DataTable& data, const std::vector<int>& classes, const ForestParams& params, int J)
      : data_(data), classes_(classes), params_(params), J_(static_cast<std::size_t>(J)) {}

  DecisionTree build(std::vector<std::size_t> samples, Rng& rng, std::vector<double>& decrease) {
    DecisionTree tree;
    samples_ = std::move(samples);
    struct Pending {
      int node;
      std::size_t start, end, depth;
    };
    std::vector<Pending> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, 0, samples_.size(), 0});
    std::vector<std::size_t> variables(data_.cols());

    while (!stack.empty()) {
      auto [node, start, end, depth] = stack.back();
      stack.pop_back();
      const std::size_t n = end - start;

      std::vector<std::size_t> counts(J_, 0);
      for (std::size_t k = start; k < end; ++k) ++counts[static_cast<std::size_t>(classes_[samples_[k]])];
      const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
      const bool depth_limited = params_.max_depth > 0 && depth >= params_.max_depth;

      SplitCandidate best;
      if (!pure && n > params_.min_node_size && !depth_limited) {
        std::iota(variables.begin(), variables.end(), std::size_t{0});
        const std::size_t m = std::min(params_.mtry, variables.size());
        for (std::size_t k = 0; k < m; ++k) std::swap(variables[k], variables[k + rng.below(variables.size() - k)]);
        for (std::size_t k = 0; k < m; ++k) {
          const auto v = variables[k];
          if (data_.schema().columns[v].kind == ColumnKind::continuous) {
            find_continuous(v, start, end, best);
          } else {
            find_categorical(v, start, end, counts, best);
          }
        }
      }

      const double parent_score = gini_score(counts, n);
      if (best.variable < 0 || best.score <= parent_score + 1e-12 * static_cast<double>(n)) {
        tree.nodes[static_cast<std::size_t>(node)].class_counts = std::move(counts);
        continue;
      }

      const auto v = static_cast<std::size_t>(best.variable);
      const auto& col = data_.column(v);
      auto goes_left = [&](std::size_t s) {
        if (data_.schema().columns[v].kind == ColumnKind::continuous) return col[s] <= best.threshold;
        return best.left_categories[static_cast<std::size_t>(col[s])] != 0;
      };
      auto mid = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(start),
                                samples_.begin() + static_cast<std::ptrdiff_t>(end), goes_left);
      const auto split = static_cast<std::size_t>(mid - samples_.begin());

      const double gain = best.score - parent_score;
      decrease[v] += gain;
      const int left = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& nd = tree.nodes[static_cast<std::size_t>(node)];
      nd.variable = best.variable;
      nd.threshold = best.threshold;
      nd.left_categories = std::move(best.left_categories);
      nd.left = left;
      nd.right = left + 1;
      nd.impurity_decrease = gain;
      // Right first so the left subtree is expanded first.
      stack.push_back({left + 1, split, end, depth + 1});
      stack.push_back({left, start, split, depth + 1});
    }
    return tree;
  }

 private:
  void find_continuous(std::size_t v, std::size_t start, std::size_t end, SplitCandidate& best) {
    const auto& col = data_.column(v);
    scratch_.clear();
    for (std::size_t k = start; k < end; ++k) {
      auto s = samples_[k];
      scratch_.emplace_back(col[s], classes_[s]);
    }
    std::sort(scratch_.begin(), scratch_.end());
    const std::size_t n = scratch_.size();
    std::vector<std::size_t> left(J_, 0), right(J_, 0);
    for (const auto& [x, c] : scratch_) ++right[static_cast<std::size_t>(c)];
    double left_sq = 0.0, right_sq = 0.0;
    for (auto c : right) right_sq += static_cast<double>(c) * static_cast<double>(c);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto c = static_cast<std::size_t>(scratch_[k].second);
      // Update the running sums of squares incrementally.
      left_sq += 2.0 * static_cast<double>(left[c]) + 1.0;
      right_sq -= 2.0 * static_cast<double>(right[c]) - 1.0;
      ++left[c];
      --right[c];
      const double a = scratch_[k].first, b = scratch_[k + 1].first;
      if (!(a < b)) continue;
      const double nl = static_cast<double>(k + 1), nr = static_cast<double>(n - k - 1);
      const double score = left_sq / nl + right_sq / nr;
      if (score > best.score) {
        double t = 0.5 * (a + b);
        if (!(t < b)) t = a;
        best.variable = static_cast<int>(v);
        best.score = score;
        best.threshold = t;
        best.left_categories.clear();
      }
    }
  }

  void find_categorical(std::size_t v, std::size_t start, std::size_t end, const std::vector<std::size_t>& node_counts,
                        SplitCandidate& best) {
    const auto& col = data_.column(v);
    const std::size_t L = data_.schema().columns[v].categories.size();
    std::vector<std::size_t> per(L * J_, 0), level_n(L, 0);
    for (std::size_t k = start; k < end; ++k) {
      auto s = samples_[k];
      auto code = static_cast<std::size_t>(col[s]);
      ++per[code * J_ + static_cast<std::size_t>(classes_[s])];
      ++level_n[code];
    }
    std::vector<std::size_t> present;
    for (std::size_t l = 0; l < L; ++l) {
      if (level_n[l] > 0) present.push_back(l);
    }
    if (present.size() < 2) return;

    std::vector<std::size_t> left(J_), right(J_);
    auto evaluate = [&](const std::vector<char>& mask) {
      std::fill(left.begin(), left.end(), 0);
      std::size_t nl = 0;
      for (auto l : present) {
        if (!mask[l]) continue;
        nl += level_n[l];
        for (std::size_t c = 0; c < J_; ++c) left[c] += per[l * J_ + c];
      }
      std::size_t n = end - start;
      for (std::size_t c = 0; c < J_; ++c) right[c] = node_counts[c] - left[c];
      double score = gini_score(left, nl) + gini_score(right, n - nl);
      if (score > best.score) {
        best.variable = static_cast<int>(v);
        best.score = score;
        best.threshold = 0.0;
        best.left_categories = mask;
        // Levels absent from this node follow the larger child.
        const bool absent_left = nl >= n - nl;
        for (std::size_t l = 0; l < L; ++l) {
          if (level_n[l] == 0) best.left_categories[l] = absent_left ? 1 : 0;
        }
      }
    };

    std::vector<char> mask(L, 0);
    if (present.size() <= kExhaustiveCategoryLimit) {
      // The last present level always stays right, so each partition is
      // visited once.
      const std::size_t subsets = (std::size_t{1} << (present.size() - 1)) - 1;
      for (std::size_t bits = 1; bits <= subsets; ++bits) {
        std::fill(mask.begin(), mask.end(), 0);
        for (std::size_t k = 0; k + 1 < present.size(); ++k) {
          if (bits & (std::size_t{1} << k)) mask[present[k]] = 1;
        }
        evaluate(mask);
      }
      return;
    }
    // Many levels: order by the share of the node's majority class and scan
    // the ordered prefixes.
    const auto majority = static_cast<std::size_t>(
        std::max_element(node_counts.begin(), node_counts.end()) - node_counts.begin());
    std::stable_sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) {
      return static_cast<double>(per[a * J_ + majority]) / static_cast<double>(level_n[a]) <
             static_cast<double>(per[b * J_ + majority]) / static_cast<double>(level_n[b]);
    });
    std::fill(mask.begin(), mask.end(), 0);
    for (std::size_t k = 0; k + 1 < present.size(); ++k) {
      mask[present[k]] = 1;
      evaluate(mask);
    }
  }

  const DataTable& data_;
  const std::vector<int>& classes_;
  const ForestParams& params_;
  std::size_t J_;
  std::vector<std::size_t> samples_;
  std::vector<std::pair<double, int>> scratch_;
};

void check_conforms(const Schema& expected, const Schema& actual) {
  if (expected.columns.size() != actual.columns.size()) throw ValidationError("rows do not match the forest's training schema");
  for (std::size_t j = 0; j < expected.columns.size(); ++j) {
    const auto& a = expected.columns[j];
    const auto& b = actual.columns[j];
    if (a.name != b.name || a.kind != b.kind || a.categories != b.categories) {
      throw ValidationError("column '" + b.name + "' does not match the forest's training schema");
    }
  }
}

}  // namespace

std::size_t DecisionTree::leaf_for(const DataTable& table, std::size_t i) const {
  std::size_t node = 0;
  while (!nodes[node].is_leaf()) {
    const auto& nd = nodes[node];
    const double x = table.column(static_cast<std::size_t>(nd.variable))[i];
    bool left;
    if (nd.left_categories.empty()) {
      left = x <= nd.threshold;
    } else {
      auto code = static_cast<std::size_t>(x);
      left = code < nd.left_categories.size() && nd.left_categories[code] != 0;
    }
    node = static_cast<std::size_t>(left ? nd.left : nd.right);
  }
  return node;
}

int DecisionTree::predict(const DataTable& table, std::size_t i) const {
  const auto& counts = nodes[leaf_for(table, i)].class_counts;
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::size_t DecisionTree::in_bag_count() const {
  std::size_t total = 0;
  for (const auto& nd : nodes) {
    if (nd.is_leaf()) total += std::accumulate(nd.class_counts.begin(), nd.class_counts.end(), std::size_t{0});
  }
  return total;
}

Forest train_forest(const DataTable& train, ForestParams params) {
  if (train.rows() == 0) throw ValidationError("cannot train a forest on an empty training set");
  if (train.cols() == 0) throw ValidationError("cannot train a forest without predictors");
  if (params.n_trees < 1) throw ValidationError("forest needs at least one tree");
  if (train.has_missing()) throw ValidationError("forest training data contains missing values; impute first");
  const int J = train.outcome().categories();
  auto counts = train.outcome().counts();
  if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2) {
    throw ValidationError("forest training outcome has a single category");
  }
  const std::size_t p = train.cols();
  if (params.mtry == 0) params.mtry = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(p)))));
  params.mtry = std::min(params.mtry, p);

  std::vector<int> classes(train.rows());
  for (std::size_t i = 0; i < train.rows(); ++i) classes[i] = train.outcome().values[i] - 1;

  Forest forest;
  forest.params = params;
  forest.schema = train.schema();
  forest.trees.resize(params.n_trees);
  std::vector<std::vector<double>> per_tree(params.n_trees, std::vector<double>(p, 0.0));

  auto grow = [&](std::size_t t) {
    Rng rng(params.seed, t);
    const std::size_t n = train.rows();
    std::vector<std::size_t> samples(n);
    if (params.bootstrap) {
      for (auto& s : samples) s = rng.below(n);
    } else {
      std::iota(samples.begin(), samples.end(), std::size_t{0});
    }
    TreeBuilder builder(train, classes, params, J);
    forest.trees[t] = builder.build(std::move(samples), rng, per_tree[t]);
  };

  const std::size_t threads = std::clamp<std::size_t>(params.threads, 1, params.n_trees);
  if (threads == 1) {
    for (std::size_t t = 0; t < params.n_trees; ++t) grow(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next++; t < params.n_trees; t = next++) grow(t);
      });
    }
  }

  // Reduce in tree order so the sums do not depend on scheduling.
  forest.impurity_decrease.assign(p, 0.0);
  for (const auto& tree : per_tree) {
    for (std::size_t v = 0; v < p; ++v) forest.impurity_decrease[v] += tree[v];
  }
  return forest;
}

ImportanceRanking variable_importance(const Forest& forest) {
  ImportanceRanking out;
  const double trees = static_cast<double>(forest.trees.size());
  for (std::size_t v = 0; v < forest.schema.columns.size(); ++v) {
    out.push_back({forest.schema.columns[v].name, forest.impurity_decrease[v] / trees});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.importance > b.importance; });
  return out;
}

std::vector<double> forest_vote_fractions(const Forest& forest, const DataTable& rows) {
  check_conforms(forest.schema, rows.schema());
  if (rows.has_missing()) throw ValidationError("forest prediction rows contain missing values");
  const auto J = static_cast<std::size_t>(forest.categories());
  std::vector<double> out(rows.rows() * J, 0.0);
  const double w = 1.0 / static_cast<double>(forest.trees.size());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (const auto& tree : forest.trees) out[i * J + static_cast<std::size_t>(tree.predict(rows, i))] += w;
  }
  return out;
}

std::vector<int> forest_predict(const Forest& forest, const DataTable& rows) {
  check_conforms(forest.schema, rows.schema());
  if (rows.has_missing()) throw ValidationError("forest prediction rows contain missing values");
  const auto J = static_cast<std::size_t>(forest.categories());
  std::vector<int> out(rows.rows());
  std::vector<std::size_t> votes(J);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto& tree : forest.trees) ++votes[static_cast<std::size_t>(tree.predict(rows, i))];
    out[i] = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin()) + 1;
  }
  return out;
}

void write_ranking_csv(const std::string& path, const ImportanceRanking& ranking) {
  std::ostringstream out;
  csv::write_record(out, {"rank", "variable", "importance"});
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    csv::write_record(out, {std::to_string(k + 1), ranking[k].variable, csv::format_double(ranking[k].importance)});
  }
  write_text_file(path, out.str());
}

ImportanceRanking read_ranking_csv(const std::string& path) {
  auto doc = csv::read_file(path);
  if (doc.header != csv::Record{"rank", "variable", "importance"}) throw ValidationError("malformed ranking file: " + path);
  ImportanceRanking out;
  for (const auto& rec : doc.rows) {
    if (rec.size() != 3) throw ValidationError("malformed ranking file: " + path);
    double v = 0;
    auto [ptr, ec] = std::from_chars(rec[2].data(), rec[2].data() + rec[2].size(), v);
    if (ec != std::errc()) throw ValidationError("malformed importance value in " + path);
    out.push_back({rec[1], v});
  }
  return out;
}

}  // namespace autoscore
