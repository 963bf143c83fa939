#include "botscope/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "botscope/util.hpp"

namespace botscope {

double shannon_entropy_bits_per_char(const std::string& s) {
  if (s.empty()) return 0.0;
  std::unordered_map<char, int> counts;
  for (char c : s) ++counts[c];
  double n = static_cast<double>(s.size());
  double h = 0.0;
  for (const auto& [c, k] : counts) {
    double p = k / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::array<double, kNumAccountFeatures> AccountFeatures::as_vector() const {
  return {account_age_days,
          followers_friends_ratio,
          tweets_per_day,
          retweet_fraction,
          mention_rate,
          url_rate,
          screen_name_digit_fraction,
          screen_name_entropy,
          has_default_profile_image ? 1.0 : 0.0,
          inter_tweet_time_cv,
          description_length};
}

const std::array<const char*, kNumAccountFeatures>& AccountFeatures::names() {
  static const std::array<const char*, kNumAccountFeatures> kNames = {
      "account_age_days",    "followers_friends_ratio",
      "tweets_per_day",      "retweet_fraction",
      "mention_rate",        "url_rate",
      "screen_name_digit_fraction", "screen_name_entropy",
      "has_default_profile_image",  "inter_tweet_time_cv",
      "description_length"};
  return kNames;
}

AccountFeatures extract_features(const UserProfile& user,
                                 const std::vector<const Tweet*>& tweets, int64_t now) {
  for (const Tweet* t : tweets)
    if (t->author_id != user.user_id)
      throw std::invalid_argument("extract_features: tweet " + t->tweet_id +
                                  " not authored by " + user.user_id);

  AccountFeatures f;
  f.account_age_days = std::max(0.0, static_cast<double>(now - user.account_created_at) / 86400.0);
  f.followers_friends_ratio =
      user.friends_count == 0
          ? static_cast<double>(user.followers_count)
          : static_cast<double>(user.followers_count) / static_cast<double>(user.friends_count);

  const double n = static_cast<double>(tweets.size());
  if (!tweets.empty()) {
    f.tweets_per_day = n / std::max(1.0, f.account_age_days);
    int64_t retweets = 0, mentions = 0, urls = 0;
    for (const Tweet* t : tweets) {
      if (t->retweet_of_user) ++retweets;
      mentions += static_cast<int64_t>(t->mentions.size());
      urls += static_cast<int64_t>(t->urls.size());
    }
    f.retweet_fraction = retweets / n;
    f.mention_rate = mentions / n;
    f.url_rate = urls / n;
  }

  const std::string& sn = user.screen_name;
  if (!sn.empty()) {
    int64_t digits = std::count_if(sn.begin(), sn.end(), [](char c) { return c >= '0' && c <= '9'; });
    f.screen_name_digit_fraction = static_cast<double>(digits) / static_cast<double>(sn.size());
    f.screen_name_entropy = shannon_entropy_bits_per_char(sn);
  }

  f.has_default_profile_image = user.has_default_profile_image;

  if (tweets.size() >= 3) {
    std::vector<int64_t> times;
    times.reserve(tweets.size());
    for (const Tweet* t : tweets) times.push_back(t->created_at);
    std::sort(times.begin(), times.end());
    std::vector<double> gaps;
    gaps.reserve(times.size() - 1);
    for (size_t i = 1; i < times.size(); ++i)
      gaps.push_back(static_cast<double>(times[i] - times[i - 1]));
    double mean = 0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    if (mean > 0) {
      double var = 0;
      for (double g : gaps) var += (g - mean) * (g - mean);
      var /= static_cast<double>(gaps.size());
      f.inter_tweet_time_cv = std::sqrt(var) / mean;
    }
  }

  f.description_length = static_cast<double>(utf8_length(user.description));
  return f;
}

AccountFeatures extract_features(const UserProfile& user, const std::vector<Tweet>& tweets,
                                 int64_t now) {
  std::vector<const Tweet*> ptrs;
  ptrs.reserve(tweets.size());
  for (const auto& t : tweets) ptrs.push_back(&t);
  return extract_features(user, ptrs, now);
}

}  // namespace botscope
