#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace botscope {

struct Coordinates {
  double lat = 0.0;
  double lon = 0.0;
};

struct UserProfile {
  std::string user_id;
  std::string screen_name;
  std::string display_name;
  std::string description;
  std::optional<std::string> declared_location;
  std::optional<Coordinates> declared_coordinates;
  int64_t account_created_at = 0;  // epoch seconds, UTC
  int64_t followers_count = 0;
  int64_t friends_count = 0;
  int64_t statuses_count = 0;
  bool has_default_profile_image = false;
};

struct Tweet {
  std::string tweet_id;
  std::string author_id;
  std::string text;
  int64_t created_at = 0;  // epoch seconds, UTC
  std::optional<std::string> retweet_of_user;
  std::optional<std::string> reply_to_user;
  std::optional<std::string> quote_of_user;
  std::vector<std::string> mentions;
  std::vector<std::string> hashtags;  // stored lowercase
  std::vector<std::string> urls;
  int64_t like_count = 0;
  int64_t retweet_count = 0;
  std::optional<std::string> language;  // BCP-47 tag
};

// Immutable after ingestion. Every tweet's author resolves to `users`;
// interaction targets may dangle (partial-corpus tolerance).
struct Corpus {
  std::map<std::string, UserProfile> users;  // ordered for deterministic iteration
  std::vector<Tweet> tweets;
  std::optional<std::string> language_filter;
};

struct SkipReport {
  int64_t lines_total = 0;
  int64_t lines_ok = 0;
  int64_t lines_skipped = 0;
  std::map<std::string, int64_t> reasons;
  std::string to_json() const;
};

struct ValidationReport {
  int64_t users = 0;
  int64_t tweets = 0;
  int64_t dangling_targets = 0;  // interaction references to ids absent from `users`
  int64_t duplicate_ids = 0;
};

struct IngestResult {
  Corpus corpus;
  SkipReport report;
};

/// Reads a JSONL tweet stream: one JSON object per line, either in the
/// normalized schema (user embedded under "user" or resolved via a sidecar
/// users.jsonl) or a raw Twitter V1 status object, detected per line and
/// mapped onto the normalized schema. Malformed lines are skipped and
/// counted, never fatal; an unreadable file throws.
IngestResult ingest_jsonl(const std::string& path,
                          const std::optional<std::string>& language_filter = std::nullopt,
                          const std::optional<std::string>& users_path = std::nullopt);

ValidationReport validate(const Corpus& corpus);

// Canonical serialization (sorted keys, sidecar layout). Same corpus ->
// identical bytes; re-ingesting the pair reproduces the corpus.
std::string serialize_tweets_jsonl(const Corpus& corpus);
std::string serialize_users_jsonl(const Corpus& corpus);

// Maximum accepted tweet text length, in code points.
inline constexpr size_t kMaxTweetChars = 4000;

}  // namespace botscope
