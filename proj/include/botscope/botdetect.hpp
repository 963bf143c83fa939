#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "botscope/features.hpp"
#include "botscope/forest.hpp"

namespace botscope {

enum class ScoreSource { Imported, BaselineModel };
const char* score_source_name(ScoreSource s);

struct BotScore {
  std::string user_id;
  double p_bot = 0.0;  // in [0,1]
  ScoreSource source = ScoreSource::BaselineModel;
};

struct BotVerdict {
  std::string user_id;
  double p_bot = 0.0;
  bool is_bot = false;
  double threshold_used = 0.0;
};

enum class BotLabel { Human = 0, Bot = 1 };

struct TrainedBotModel {
  RandomForest forest;
  std::string to_json() const;
  static TrainedBotModel from_json(const std::string& text);
  void save(const std::string& path) const;
  static TrainedBotModel load(const std::string& path);
};

/// Seeded decision-tree-ensemble baseline over the documented account
/// features. Throws if either class has fewer than two examples.
TrainedBotModel train_baseline(const std::vector<std::pair<AccountFeatures, BotLabel>>& labeled,
                               uint64_t seed, const ForestParams& params = {});

BotScore score_baseline(const std::string& user_id, const AccountFeatures& features,
                        const TrainedBotModel& model);

struct ScoreImportResult {
  std::vector<BotScore> scores;
  int64_t rejected_rows = 0;
};

// CSV `user_id,p_bot[,source]`, optional header. Rows with p_bot outside
// [0,1] (or unparsable) are rejected and counted; unreadable file throws.
ScoreImportResult import_scores(const std::string& path);
void export_scores(const std::string& path, const std::vector<BotScore>& scores);

/// is_bot iff p_bot >= threshold. Threshold must lie in [0,1].
std::vector<BotVerdict> apply_threshold(const std::vector<BotScore>& scores,
                                        double threshold = 0.70);

inline constexpr double kDefaultBotThreshold = 0.70;

}  // namespace botscope
