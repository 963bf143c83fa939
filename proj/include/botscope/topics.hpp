#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "botscope/corpus.hpp"

namespace botscope {

struct TokenizerConfig {
  std::unordered_set<std::string> stopwords;  // lowercase, matched per token
  std::vector<std::string> event_phrases;     // normalized multi-word phrases,
                                              // removed before single-token stopwords
  bool strip_urls = true;
  bool strip_mentions = true;
  bool strip_hashtags = true;      // whole `#token` removed
  bool keep_hashtag_body = false;  // keep the bare word when stripping the '#'
  bool strip_rt_marker = true;     // leading "rt"
};

// Plain-text loaders: one entry per line, '#' comments. Throws on unreadable
// files.
std::unordered_set<std::string> load_word_list(const std::string& path);
TokenizerConfig load_tokenizer_config(const std::string& stopwords_path,
                                      const std::string& event_phrases_path);

/// Lowercases, strips tweet artifacts (URLs, @mentions, hashtags, leading
/// retweet marker), removes event phrases then stopwords, tokenizes on
/// non-alphanumeric boundaries and drops tokens shorter than two characters.
std::vector<std::string> preprocess(const std::string& text, const TokenizerConfig& config);

struct TermFrequencies {
  std::string group_id;
  std::vector<std::pair<std::string, int64_t>> terms;  // ordered by (-count, token)
};

TermFrequencies term_frequencies(const std::vector<const Tweet*>& tweets,
                                 const TokenizerConfig& config, int64_t top_k = 500,
                                 const std::string& group_id = "");

struct GroupKey {
  std::string region;  // "US" | "China" | "RestOfWorld"
  std::string type;    // "General" | "News" | "Bridging" | "Human"
  std::string id() const { return region + ":" + type; }
};

/// One term-frequency table per non-empty (region x user-type) group;
/// Unknown-region users are excluded. `user_type` maps user id -> type name
/// ("Human" when absent).
std::vector<TermFrequencies> group_topics(
    const Corpus& corpus, const std::unordered_map<std::string, std::string>& user_region,
    const std::unordered_map<std::string, std::string>& user_type, const TokenizerConfig& config,
    int64_t top_k = 500);

}  // namespace botscope
