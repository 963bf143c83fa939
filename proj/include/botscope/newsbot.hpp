#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "botscope/botdetect.hpp"
#include "botscope/corpus.hpp"
#include "botscope/topics.hpp"

namespace botscope {

/// Seeded multinomial naive-Bayes text classifier over tokenized, lowercased,
/// artifact-stripped text (Laplace-smoothed). Tokens outside the vocabulary
/// are skipped, so fully unseen text falls back to the class priors.
struct HeadlineModel {
  std::unordered_map<std::string, int> vocabulary;  // token -> index
  std::vector<double> log_prob_headline;            // per vocabulary index
  std::vector<double> log_prob_other;
  double log_prior_headline = 0.0;
  double log_prior_other = 0.0;
  uint64_t seed = 0;
  double held_out_accuracy = 0.0;

  std::string to_json() const;
  static HeadlineModel from_json(const std::string& text);
  void save(const std::string& path) const;
  static HeadlineModel load(const std::string& path);
};

enum class NewsTrigger { ProfileSubstring, HeadlineFraction, None };
const char* news_trigger_name(NewsTrigger t);
std::optional<NewsTrigger> news_trigger_from_name(const std::string& s);

struct NewsBotVerdict {
  std::string user_id;
  bool is_news_bot = false;
  NewsTrigger trigger = NewsTrigger::None;
  std::optional<double> headline_fraction;  // absent for users with no tweets
};

/// Case-insensitive substring "news" over display name, screen name and
/// description.
bool profile_substring_match(const UserProfile& user);

/// Trains on a stratified 90/10 split (seeded shuffle) and records held-out
/// accuracy. Either class empty -> std::invalid_argument.
HeadlineModel train_headline_model(const std::vector<std::string>& headlines,
                                   const std::vector<std::string>& non_news, uint64_t seed);

struct HeadlinePrediction {
  bool is_headline = false;
  double p_headline = 0.0;
};
HeadlinePrediction classify_tweet(const HeadlineModel& model, const std::string& text);

struct NewsBotConfig {
  double fraction_threshold = 0.90;  // inclusive boundary
  bool count_retweets = true;        // whether retweeted text counts toward the rule
};

/// headline_fraction = headline tweets / tweets; is_news_bot iff the fraction
/// reaches the threshold. Users with no (counted) tweets get trigger None.
NewsBotVerdict headline_fraction_rule(const std::string& user_id,
                                      const std::vector<const Tweet*>& tweets,
                                      const HeadlineModel& model,
                                      const NewsBotConfig& config = {});

/// Substring rule first, then the headline-fraction rule for the remaining
/// bots. Every input must carry a positive bot verdict and exist in the
/// corpus; output covers every input.
std::vector<NewsBotVerdict> classify_news_bots(const std::vector<BotVerdict>& bots,
                                               const Corpus& corpus, const HeadlineModel& model,
                                               const NewsBotConfig& config = {});

}  // namespace botscope
