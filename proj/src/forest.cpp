#include "botscope/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "botscope/util.hpp"

namespace botscope {

using nlohmann::json;

namespace {

constexpr uint64_t kTreeSeedStride = 0x9e3779b97f4a7c15ull;

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

double gini(int64_t c1, int64_t n) {
  if (n == 0) return 0.0;
  double p = static_cast<double>(c1) / static_cast<double>(n);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

}  // namespace

RandomForest RandomForest::train(const std::vector<std::vector<double>>& features,
                                 const std::vector<int>& labels, uint64_t seed,
                                 const ForestParams& params) {
  if (features.empty() || features.size() != labels.size())
    throw std::invalid_argument("forest: empty or mismatched training data");
  const size_t n_features = features[0].size();
  int64_t class_counts[2] = {0, 0};
  for (size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != n_features)
      throw std::invalid_argument("forest: ragged feature rows");
    for (double v : features[i])
      if (!std::isfinite(v)) throw std::invalid_argument("forest: non-finite feature value");
    if (labels[i] != 0 && labels[i] != 1)
      throw std::invalid_argument("forest: labels must be 0 or 1");
    ++class_counts[labels[i]];
  }
  if (class_counts[0] < 2 || class_counts[1] < 2)
    throw std::invalid_argument("forest: need at least 2 examples of each class");

  RandomForest rf;
  rf.n_features_ = n_features;
  rf.seed_ = seed;
  rf.params_ = params;
  const int mtry = params.mtry > 0
                       ? std::min<int>(params.mtry, static_cast<int>(n_features))
                       : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_features))));

  const size_t n = features.size();
  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(seed + kTreeSeedStride * static_cast<uint64_t>(t + 1));
    std::vector<int> sample(n);
    for (size_t i = 0; i < n; ++i) sample[i] = static_cast<int>(rng.below(n));

    Tree tree;
    std::vector<int> feature_pool(n_features);
    std::iota(feature_pool.begin(), feature_pool.end(), 0);

    // Iterative depth-first build; each frame owns its sample index list.
    struct Frame {
      std::vector<int> rows;
      int depth;
      int node_index;
    };
    auto make_leaf = [&](Node& node, const std::vector<int>& rows) {
      int64_t c1 = 0;
      for (int r : rows) c1 += labels[r];
      node.p1 = rows.empty() ? 0.0 : static_cast<double>(c1) / static_cast<double>(rows.size());
    };

    tree.nodes.emplace_back();
    std::vector<Frame> stack;
    stack.push_back({std::move(sample), 0, 0});
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      const auto& rows = frame.rows;
      int64_t c1 = 0;
      for (int r : rows) c1 += labels[r];
      const int64_t nr = static_cast<int64_t>(rows.size());
      Node& node = tree.nodes[frame.node_index];
      if (frame.depth >= params.max_depth || nr < params.min_samples_split || c1 == 0 ||
          c1 == nr) {
        make_leaf(node, rows);
        continue;
      }

      // Draw mtry distinct features, then scan them in index order so that
      // ties resolve to the lowest feature index.
      for (int i = 0; i < mtry; ++i) {
        size_t j = i + rng.below(n_features - static_cast<size_t>(i));
        std::swap(feature_pool[i], feature_pool[j]);
      }
      std::vector<int> chosen(feature_pool.begin(), feature_pool.begin() + mtry);
      std::sort(chosen.begin(), chosen.end());

      SplitCandidate best;
      std::vector<std::pair<double, int>> order(rows.size());
      for (int f : chosen) {
        for (size_t i = 0; i < rows.size(); ++i)
          order[i] = {features[rows[i]][static_cast<size_t>(f)], labels[rows[i]]};
        std::sort(order.begin(), order.end());
        int64_t left_c1 = 0;
        for (size_t i = 1; i < order.size(); ++i) {
          left_c1 += order[i - 1].second;
          if (order[i].first == order[i - 1].first) continue;
          int64_t nl = static_cast<int64_t>(i);
          int64_t nrr = nr - nl;
          if (nl < params.min_samples_leaf || nrr < params.min_samples_leaf) continue;
          double impurity = (static_cast<double>(nl) * gini(left_c1, nl) +
                             static_cast<double>(nrr) * gini(c1 - left_c1, nrr)) /
                            static_cast<double>(nr);
          if (impurity < best.impurity) {
            best = {f, (order[i - 1].first + order[i].first) / 2.0, impurity};
          }
        }
      }

      if (best.feature < 0 || best.impurity >= gini(c1, nr)) {
        make_leaf(node, rows);
        continue;
      }

      std::vector<int> left_rows, right_rows;
      for (int r : rows) {
        if (features[r][static_cast<size_t>(best.feature)] <= best.threshold)
          left_rows.push_back(r);
        else
          right_rows.push_back(r);
      }
      node.feature = best.feature;
      node.threshold = best.threshold;
      node.left = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      node.right = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      int left_index = tree.nodes[frame.node_index].left;
      int right_index = tree.nodes[frame.node_index].right;
      stack.push_back({std::move(right_rows), frame.depth + 1, right_index});
      stack.push_back({std::move(left_rows), frame.depth + 1, left_index});
    }
    rf.trees_.push_back(std::move(tree));
  }
  return rf;
}

double RandomForest::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features_)
    throw std::invalid_argument("forest: feature vector has wrong dimension");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("forest: non-finite feature value");
  double sum = 0.0;
  for (const Tree& tree : trees_) {
    int idx = 0;
    while (tree.nodes[idx].feature >= 0) {
      const Node& nd = tree.nodes[idx];
      idx = x[static_cast<size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    sum += tree.nodes[idx].p1;
  }
  return trees_.empty() ? 0.0 : sum / static_cast<double>(trees_.size());
}

std::string RandomForest::to_json() const {
  json j;
  j["format"] = "botscope.forest";
  j["version"] = 1;
  j["seed"] = seed_;
  j["n_features"] = n_features_;
  j["params"] = {{"n_trees", params_.n_trees},
                 {"max_depth", params_.max_depth},
                 {"min_samples_leaf", params_.min_samples_leaf},
                 {"min_samples_split", params_.min_samples_split},
                 {"mtry", params_.mtry}};
  json trees = json::array();
  for (const Tree& t : trees_) {
    json nodes = json::array();
    for (const Node& n : t.nodes)
      nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.p1}));
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

RandomForest RandomForest::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || j.value("format", std::string()) != "botscope.forest")
    throw std::runtime_error("not a botscope.forest model file");
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported forest model version");
  RandomForest rf;
  rf.seed_ = j["seed"].get<uint64_t>();
  rf.n_features_ = j["n_features"].get<size_t>();
  const auto& p = j["params"];
  rf.params_.n_trees = p["n_trees"].get<int>();
  rf.params_.max_depth = p["max_depth"].get<int>();
  rf.params_.min_samples_leaf = p["min_samples_leaf"].get<int>();
  rf.params_.min_samples_split = p["min_samples_split"].get<int>();
  rf.params_.mtry = p["mtry"].get<int>();
  for (const auto& tj : j["trees"]) {
    Tree t;
    for (const auto& nj : tj) {
      Node n;
      n.feature = nj[0].get<int>();
      n.threshold = nj[1].get<double>();
      n.left = nj[2].get<int>();
      n.right = nj[3].get<int>();
      n.p1 = nj[4].get<double>();
      t.nodes.push_back(n);
    }
    rf.trees_.push_back(std::move(t));
  }
  return rf;
}

}  // namespace botscope
