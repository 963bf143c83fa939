#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "botscope/corpus.hpp"

namespace botscope {

inline constexpr size_t kNumAccountFeatures = 11;

struct AccountFeatures {
  double account_age_days = 0;         // >= 0
  double followers_friends_ratio = 0;  // friends == 0 -> equals followers
  double tweets_per_day = 0;           // age floored at one day
  double retweet_fraction = 0;         // in [0,1]
  double mention_rate = 0;             // mentions issued per tweet
  double url_rate = 0;                 // urls per tweet
  double screen_name_digit_fraction = 0;  // in [0,1]
  double screen_name_entropy = 0;         // Shannon, bits/char
  bool has_default_profile_image = false;
  double inter_tweet_time_cv = 0;  // coefficient of variation of gaps; 0 if < 3 tweets
  double description_length = 0;   // code points

  std::array<double, kNumAccountFeatures> as_vector() const;
  static const std::array<const char*, kNumAccountFeatures>& names();
};

/// Deterministic per-account feature vector. All tweets must be authored by
/// `user` (throws std::invalid_argument otherwise); every input yields finite
/// features.
AccountFeatures extract_features(const UserProfile& user, const std::vector<Tweet>& tweets,
                                 int64_t now);
AccountFeatures extract_features(const UserProfile& user,
                                 const std::vector<const Tweet*>& tweets, int64_t now);

double shannon_entropy_bits_per_char(const std::string& s);

}  // namespace botscope
