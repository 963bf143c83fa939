#include "botscope/topics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "botscope/util.hpp"

namespace botscope {

namespace {

bool is_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_artifact_chunk(const std::string& chunk, const TokenizerConfig& cfg) {
  if (cfg.strip_urls &&
      (chunk.rfind("http://", 0) == 0 || chunk.rfind("https://", 0) == 0 ||
       chunk.rfind("www.", 0) == 0 || chunk.rfind("t.co/", 0) == 0))
    return true;
  if (cfg.strip_mentions && chunk.size() > 1 && chunk[0] == '@') return true;
  return false;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_token_char(c)) {
      cur += static_cast<char>(c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace

std::vector<std::string> preprocess(const std::string& text, const TokenizerConfig& config) {
  std::string lowered = lower_ascii(text);

  // Artifact stripping works on whitespace-separated chunks.
  std::vector<std::string> chunks;
  {
    std::string cur;
    for (char c : lowered) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        if (!cur.empty()) chunks.push_back(std::move(cur)), cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) chunks.push_back(std::move(cur));
  }

  std::string stripped;
  bool first_chunk = true;
  for (auto& chunk : chunks) {
    if (config.strip_rt_marker && first_chunk && chunk == "rt") {
      first_chunk = false;
      continue;
    }
    first_chunk = false;
    if (is_artifact_chunk(chunk, config)) continue;
    if (config.strip_hashtags && chunk.size() > 1 && chunk[0] == '#') {
      if (!config.keep_hashtag_body) continue;
      chunk.erase(0, 1);
    }
    if (!stripped.empty()) stripped += ' ';
    stripped += chunk;
  }

  std::vector<std::string> tokens = tokenize(stripped);

  // Event phrases are removed as token subsequences, longest first, before
  // single-token stopwords.
  if (!config.event_phrases.empty()) {
    std::vector<std::vector<std::string>> phrases;
    for (const auto& p : config.event_phrases) phrases.push_back(tokenize(p));
    std::sort(phrases.begin(), phrases.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    size_t i = 0;
    while (i < tokens.size()) {
      size_t matched = 0;
      for (const auto& phrase : phrases) {
        if (phrase.empty() || i + phrase.size() > tokens.size()) continue;
        if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<long>(i))) {
          matched = phrase.size();
          break;
        }
      }
      if (matched) {
        i += matched;
      } else {
        kept.push_back(std::move(tokens[i]));
        ++i;
      }
    }
    tokens = std::move(kept);
  }

  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& tok : tokens) {
    if (config.stopwords.count(tok)) continue;
    if (utf8_length(tok) < 2) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
  auto content = read_file(path);
  if (!content) throw std::runtime_error("cannot read word list: " + path);
  std::unordered_set<std::string> out;
  std::string line;
  for (size_t i = 0; i <= content->size(); ++i) {
    if (i == content->size() || (*content)[i] == '\n') {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty() && line[0] != '#') out.insert(lower_ascii(line));
      line.clear();
    } else {
      line += (*content)[i];
    }
  }
  return out;
}

TokenizerConfig load_tokenizer_config(const std::string& stopwords_path,
                                      const std::string& event_phrases_path) {
  TokenizerConfig cfg;
  cfg.stopwords = load_word_list(stopwords_path);
  auto phrases = load_word_list(event_phrases_path);
  cfg.event_phrases.assign(phrases.begin(), phrases.end());
  std::sort(cfg.event_phrases.begin(), cfg.event_phrases.end());
  return cfg;
}

TermFrequencies term_frequencies(const std::vector<const Tweet*>& tweets,
                                 const TokenizerConfig& config, int64_t top_k,
                                 const std::string& group_id) {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  std::unordered_map<std::string, int64_t> counts;
  for (const Tweet* t : tweets)
    for (auto& tok : preprocess(t->text, config)) ++counts[tok];

  TermFrequencies tf;
  tf.group_id = group_id;
  tf.terms.assign(counts.begin(), counts.end());
  std::sort(tf.terms.begin(), tf.terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int64_t>(tf.terms.size()) > top_k) tf.terms.resize(static_cast<size_t>(top_k));
  return tf;
}

std::vector<TermFrequencies> group_topics(
    const Corpus& corpus, const std::unordered_map<std::string, std::string>& user_region,
    const std::unordered_map<std::string, std::string>& user_type, const TokenizerConfig& config,
    int64_t top_k) {
  std::map<std::string, std::vector<const Tweet*>> groups;  // ordered by group id
  for (const auto& t : corpus.tweets) {
    auto rit = user_region.find(t.author_id);
    if (rit == user_region.end() || rit->second == "Unknown") continue;
    auto tit = user_type.find(t.author_id);
    const std::string& type = tit == user_type.end() ? "Human" : tit->second;
    groups[GroupKey{rit->second, type}.id()].push_back(&t);
  }
  std::vector<TermFrequencies> out;
  out.reserve(groups.size());
  for (const auto& [gid, tweets] : groups)
    out.push_back(term_frequencies(tweets, config, top_k, gid));
  return out;
}

}  // namespace botscope
