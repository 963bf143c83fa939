#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace botscope {

struct ForestParams {
  int n_trees = 100;
  int max_depth = 12;
  int min_samples_leaf = 1;
  int min_samples_split = 2;
  int mtry = 0;  // features tried per split; 0 = ceil(sqrt(n_features))
};

/// Seeded CART ensemble (Gini splits, bootstrap rows, feature subsampling per
/// node). Binary labels {0,1}; predict_proba averages the trees' leaf class
/// fractions. Training twice with the same seed yields identical models.
class RandomForest {
 public:
  static RandomForest train(const std::vector<std::vector<double>>& features,
                            const std::vector<int>& labels, uint64_t seed,
                            const ForestParams& params = {});

  double predict_proba(std::span<const double> x) const;  // P(label == 1)

  std::string to_json() const;
  static RandomForest from_json(const std::string& text);

  size_t n_features() const { return n_features_; }
  uint64_t seed() const { return seed_; }
  const ForestParams& params() const { return params_; }

 private:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p1 = 0.0;  // leaf probability of class 1
  };
  struct Tree {
    std::vector<Node> nodes;
  };

  std::vector<Tree> trees_;
  size_t n_features_ = 0;
  uint64_t seed_ = 0;
  ForestParams params_;
};

}  // namespace botscope
