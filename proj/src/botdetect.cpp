#include "botscope/botdetect.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

#include "botscope/csvio.hpp"
#include "botscope/util.hpp"

namespace botscope {

const char* score_source_name(ScoreSource s) {
  return s == ScoreSource::Imported ? "imported" : "baseline_model";
}

std::string TrainedBotModel::to_json() const {
  nlohmann::json j;
  j["format"] = "botscope.bot_model";
  j["version"] = 1;
  j["feature_names"] = AccountFeatures::names();
  j["forest"] = nlohmann::json::parse(forest.to_json());
  return j.dump();
}

TrainedBotModel TrainedBotModel::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || j.value("format", std::string()) != "botscope.bot_model")
    throw std::runtime_error("not a botscope.bot_model file");
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported bot model version");
  return TrainedBotModel{RandomForest::from_json(j["forest"].dump())};
}

void TrainedBotModel::save(const std::string& path) const { write_file_bytes(path, to_json() + "\n"); }

TrainedBotModel TrainedBotModel::load(const std::string& path) {
  auto text = read_file(path);
  if (!text) throw std::runtime_error("cannot read bot model: " + path);
  return from_json(*text);
}

TrainedBotModel train_baseline(const std::vector<std::pair<AccountFeatures, BotLabel>>& labeled,
                               uint64_t seed, const ForestParams& params) {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(labeled.size());
  y.reserve(labeled.size());
  for (const auto& [features, label] : labeled) {
    auto v = features.as_vector();
    x.emplace_back(v.begin(), v.end());
    y.push_back(label == BotLabel::Bot ? 1 : 0);
  }
  return TrainedBotModel{RandomForest::train(x, y, seed, params)};
}

BotScore score_baseline(const std::string& user_id, const AccountFeatures& features,
                        const TrainedBotModel& model) {
  auto v = features.as_vector();
  return BotScore{user_id, model.forest.predict_proba(v), ScoreSource::BaselineModel};
}

namespace {

std::optional<double> parse_probability(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
  return v;
}

}  // namespace

ScoreImportResult import_scores(const std::string& path) {
  auto table = csv::read_file(path, /*expect_header=*/false);
  ScoreImportResult res;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (i == 0 && row.size() >= 2 && row[0] == "user_id") continue;  // optional header
    if (row.size() < 2 || row[0].empty()) {
      ++res.rejected_rows;
      continue;
    }
    auto p = parse_probability(row[1]);
    if (!p) {
      ++res.rejected_rows;
      continue;
    }
    res.scores.push_back(BotScore{row[0], *p, ScoreSource::Imported});
  }
  return res;
}

void export_scores(const std::string& path, const std::vector<BotScore>& scores) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(scores.size());
  for (const auto& s : scores)
    rows.push_back({s.user_id, format_double(s.p_bot), score_source_name(s.source)});
  csv::write_file(path, {"user_id", "p_bot", "source"}, rows);
}

std::vector<BotVerdict> apply_threshold(const std::vector<BotScore>& scores, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("bot threshold must lie in [0,1]");
  std::vector<BotVerdict> out;
  out.reserve(scores.size());
  for (const auto& s : scores)
    out.push_back(BotVerdict{s.user_id, s.p_bot, s.p_bot >= threshold, threshold});
  return out;
}

}  // namespace botscope
