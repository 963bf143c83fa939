#include "botscope/corpus.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "botscope/util.hpp"

namespace botscope {

using nlohmann::json;

namespace {

struct LineError {
  std::string reason;
};

std::string require_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw LineError{std::string("missing_field:") + key};
  if (!it->is_string()) throw LineError{std::string("bad_type:") + key};
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw LineError{std::string("bad_type:") + key};
  std::string s = it->get<std::string>();
  if (s.empty()) return std::nullopt;
  return s;
}

int64_t optional_count(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  if (!it->is_number_integer()) throw LineError{std::string("bad_type:") + key};
  return it->get<int64_t>();
}

std::vector<std::string> optional_string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) throw LineError{std::string("bad_type:") + key};
  for (const auto& e : *it) {
    if (!e.is_string()) throw LineError{std::string("bad_type:") + key};
    out.push_back(e.get<std::string>());
  }
  return out;
}

int64_t require_timestamp(const json& j, const char* key) {
  auto ts = parse_timestamp(require_string(j, key));
  if (!ts) throw LineError{std::string("bad_timestamp:") + key};
  return *ts;
}

UserProfile parse_user(const json& j) {
  UserProfile u;
  u.user_id = require_string(j, "user_id");
  if (u.user_id.empty()) throw LineError{"empty_user_id"};
  u.screen_name = j.value("screen_name", std::string());
  u.display_name = j.value("display_name", std::string());
  u.description = j.value("description", std::string());
  u.declared_location = optional_string(j, "declared_location");
  if (auto it = j.find("declared_coordinates"); it != j.end() && !it->is_null()) {
    if (!it->is_object() || !it->contains("lat") || !it->contains("lon"))
      throw LineError{"bad_type:declared_coordinates"};
    Coordinates c{(*it)["lat"].get<double>(), (*it)["lon"].get<double>()};
    if (c.lat < -90.0 || c.lat > 90.0 || c.lon < -180.0 || c.lon > 180.0)
      throw LineError{"bad_coordinates"};
    u.declared_coordinates = c;
  }
  u.account_created_at = require_timestamp(j, "account_created_at");
  u.followers_count = optional_count(j, "followers_count");
  u.friends_count = optional_count(j, "friends_count");
  u.statuses_count = optional_count(j, "statuses_count");
  if (u.followers_count < 0 || u.friends_count < 0 || u.statuses_count < 0)
    throw LineError{"negative_count"};
  u.has_default_profile_image = j.value("has_default_profile_image", false);
  return u;
}

// Field mapping from a raw Twitter V1 status object (see README for the
// table): id_str, user.id_str, full_text/text, created_at, retweeted_status,
// in_reply_to_user_id_str, quoted_status, entities.*.
UserProfile parse_user_v1(const json& j) {
  UserProfile u;
  u.user_id = require_string(j, "id_str");
  if (u.user_id.empty()) throw LineError{"empty_user_id"};
  u.screen_name = j.value("screen_name", std::string());
  u.display_name = j.value("name", std::string());
  u.description = j.is_object() && j.contains("description") && j["description"].is_string()
                      ? j["description"].get<std::string>()
                      : std::string();
  if (auto loc = j.find("location"); loc != j.end() && loc->is_string() && !loc->get<std::string>().empty())
    u.declared_location = loc->get<std::string>();
  u.account_created_at = require_timestamp(j, "created_at");
  u.followers_count = optional_count(j, "followers_count");
  u.friends_count = optional_count(j, "friends_count");
  u.statuses_count = optional_count(j, "statuses_count");
  u.has_default_profile_image = j.value("default_profile_image", false);
  return u;
}

Tweet parse_tweet_v1(const json& j, std::optional<UserProfile>& embedded) {
  Tweet t;
  t.tweet_id = require_string(j, "id_str");
  t.created_at = require_timestamp(j, "created_at");
  if (auto u = j.find("user"); u != j.end() && u->is_object()) {
    embedded = parse_user_v1(*u);
    t.author_id = embedded->user_id;
  } else {
    throw LineError{"missing_field:user"};
  }
  t.text = j.contains("full_text") ? j.value("full_text", std::string()) : j.value("text", std::string());
  if (auto rs = j.find("retweeted_status"); rs != j.end() && rs->is_object())
    t.retweet_of_user = (*rs)["user"]["id_str"].get<std::string>();
  if (auto qs = j.find("quoted_status"); qs != j.end() && qs->is_object())
    t.quote_of_user = (*qs)["user"]["id_str"].get<std::string>();
  if (auto r = j.find("in_reply_to_user_id_str"); r != j.end() && r->is_string())
    t.reply_to_user = r->get<std::string>();
  if (auto e = j.find("entities"); e != j.end() && e->is_object()) {
    if (auto m = e->find("user_mentions"); m != e->end() && m->is_array())
      for (const auto& um : *m) t.mentions.push_back(um.value("id_str", std::string()));
    if (auto h = e->find("hashtags"); h != e->end() && h->is_array())
      for (const auto& ht : *h) t.hashtags.push_back(lower_ascii(ht.value("text", std::string())));
    if (auto u = e->find("urls"); u != e->end() && u->is_array())
      for (const auto& uu : *u) t.urls.push_back(uu.value("expanded_url", uu.value("url", std::string())));
  }
  t.like_count = optional_count(j, "favorite_count");
  t.retweet_count = optional_count(j, "retweet_count");
  if (auto l = j.find("lang"); l != j.end() && l->is_string()) t.language = l->get<std::string>();
  return t;
}

Tweet parse_tweet(const json& j, std::optional<UserProfile>& embedded) {
  if (!j.contains("tweet_id") && j.contains("id_str")) return parse_tweet_v1(j, embedded);
  Tweet t;
  t.tweet_id = require_string(j, "tweet_id");
  if (t.tweet_id.empty()) throw LineError{"empty_tweet_id"};
  t.author_id = require_string(j, "author_id");
  t.text = require_string(j, "text");
  t.created_at = require_timestamp(j, "created_at");
  t.retweet_of_user = optional_string(j, "retweet_of_user");
  t.reply_to_user = optional_string(j, "reply_to_user");
  t.quote_of_user = optional_string(j, "quote_of_user");
  t.mentions = optional_string_list(j, "mentions");
  t.hashtags = optional_string_list(j, "hashtags");
  for (auto& h : t.hashtags) h = lower_ascii(h);
  t.urls = optional_string_list(j, "urls");
  t.like_count = optional_count(j, "like_count");
  t.retweet_count = optional_count(j, "retweet_count");
  t.language = optional_string(j, "language");
  if (auto u = j.find("user"); u != j.end() && u->is_object()) {
    embedded = parse_user(*u);
    if (embedded->user_id != t.author_id) throw LineError{"author_user_mismatch"};
  }
  return t;
}

void check_tweet_invariants(const Tweet& t) {
  if (utf8_length(t.text) > kMaxTweetChars) throw LineError{"text_too_long"};
  if (t.like_count < 0 || t.retweet_count < 0) throw LineError{"negative_count"};
  if (t.retweet_of_user && t.quote_of_user) throw LineError{"retweet_and_quote"};
}

}  // namespace

IngestResult ingest_jsonl(const std::string& path,
                          const std::optional<std::string>& language_filter,
                          const std::optional<std::string>& users_path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read corpus file: " + path);

  IngestResult res;
  res.corpus.language_filter = language_filter;
  auto& rep = res.report;

  if (users_path) {
    std::ifstream uin(*users_path);
    if (!uin) throw std::runtime_error("cannot read users file: " + *users_path);
    std::string line;
    while (std::getline(uin, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        ++rep.reasons["users_file_skipped"];
        continue;
      }
      try {
        UserProfile u = j.contains("user_id") ? parse_user(j) : parse_user_v1(j);
        res.corpus.users.emplace(u.user_id, std::move(u));  // first occurrence wins
      } catch (const LineError&) {
        ++rep.reasons["users_file_skipped"];
      }
    }
  }

  std::unordered_set<std::string> seen_ids;
  std::string line;
  auto skip = [&rep](const std::string& reason) {
    ++rep.lines_skipped;
    ++rep.reasons[reason];
  };

  while (std::getline(in, line)) {
    ++rep.lines_total;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      skip("empty_line");
      continue;
    }
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      skip("bad_json");
      continue;
    }
    try {
      std::optional<UserProfile> embedded;
      Tweet t = parse_tweet(j, embedded);
      check_tweet_invariants(t);
      if (embedded) res.corpus.users.emplace(embedded->user_id, std::move(*embedded));
      if (!res.corpus.users.count(t.author_id)) {
        skip("unknown_author");
        continue;
      }
      // Missing language matches any filter: absence is not a mismatch.
      if (language_filter && t.language && *t.language != *language_filter) {
        skip("language_filtered");
        continue;
      }
      if (!seen_ids.insert(t.tweet_id).second) {
        skip("duplicate_tweet_id");
        continue;
      }
      res.corpus.tweets.push_back(std::move(t));
      ++rep.lines_ok;
    } catch (const LineError& e) {
      skip(e.reason);
    }
  }
  return res;
}

ValidationReport validate(const Corpus& corpus) {
  ValidationReport r;
  r.users = static_cast<int64_t>(corpus.users.size());
  r.tweets = static_cast<int64_t>(corpus.tweets.size());
  std::unordered_set<std::string> ids;
  for (const auto& t : corpus.tweets) {
    if (!ids.insert(t.tweet_id).second) ++r.duplicate_ids;
    auto dangles = [&](const std::optional<std::string>& u) {
      if (u && !corpus.users.count(*u)) ++r.dangling_targets;
    };
    dangles(t.retweet_of_user);
    dangles(t.reply_to_user);
    dangles(t.quote_of_user);
    for (const auto& m : t.mentions)
      if (!corpus.users.count(m)) ++r.dangling_targets;
  }
  return r;
}

namespace {

json coordinates_json(const Coordinates& c) {
  return json{{"lat", c.lat}, {"lon", c.lon}};
}

json user_json(const UserProfile& u) {
  json j;
  j["user_id"] = u.user_id;
  j["screen_name"] = u.screen_name;
  j["display_name"] = u.display_name;
  j["description"] = u.description;
  j["declared_location"] = u.declared_location ? json(*u.declared_location) : json(nullptr);
  j["declared_coordinates"] =
      u.declared_coordinates ? coordinates_json(*u.declared_coordinates) : json(nullptr);
  j["account_created_at"] = format_timestamp(u.account_created_at);
  j["followers_count"] = u.followers_count;
  j["friends_count"] = u.friends_count;
  j["statuses_count"] = u.statuses_count;
  j["has_default_profile_image"] = u.has_default_profile_image;
  return j;
}

json tweet_json(const Tweet& t) {
  json j;
  j["tweet_id"] = t.tweet_id;
  j["author_id"] = t.author_id;
  j["text"] = t.text;
  j["created_at"] = format_timestamp(t.created_at);
  j["retweet_of_user"] = t.retweet_of_user ? json(*t.retweet_of_user) : json(nullptr);
  j["reply_to_user"] = t.reply_to_user ? json(*t.reply_to_user) : json(nullptr);
  j["quote_of_user"] = t.quote_of_user ? json(*t.quote_of_user) : json(nullptr);
  j["mentions"] = t.mentions;
  j["hashtags"] = t.hashtags;
  j["urls"] = t.urls;
  j["like_count"] = t.like_count;
  j["retweet_count"] = t.retweet_count;
  j["language"] = t.language ? json(*t.language) : json(nullptr);
  return j;
}

}  // namespace

std::string serialize_tweets_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& t : corpus.tweets) out += tweet_json(t).dump() + "\n";
  return out;
}

std::string serialize_users_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& [id, u] : corpus.users) out += user_json(u).dump() + "\n";
  return out;
}

std::string SkipReport::to_json() const {
  json j;
  j["lines_total"] = lines_total;
  j["lines_ok"] = lines_ok;
  j["lines_skipped"] = lines_skipped;
  j["reasons"] = json::object();
  for (const auto& [k, v] : reasons) j["reasons"][k] = v;
  return j.dump(2) + "\n";
}

}  // namespace botscope
