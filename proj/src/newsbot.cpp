#include "botscope/newsbot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "botscope/util.hpp"

namespace botscope {

using nlohmann::json;

namespace {

// Artifact stripping only; stopwords and event phrases stay (the classifier
// learns its own weights for them).
const TokenizerConfig& headline_tokenizer() {
  static const TokenizerConfig cfg;
  return cfg;
}

std::vector<std::string> headline_tokens(const std::string& text) {
  return preprocess(text, headline_tokenizer());
}

}  // namespace

const char* news_trigger_name(NewsTrigger t) {
  switch (t) {
    case NewsTrigger::ProfileSubstring: return "profile_substring";
    case NewsTrigger::HeadlineFraction: return "headline_fraction";
    case NewsTrigger::None: return "none";
  }
  return "none";
}

std::optional<NewsTrigger> news_trigger_from_name(const std::string& s) {
  if (s == "profile_substring") return NewsTrigger::ProfileSubstring;
  if (s == "headline_fraction") return NewsTrigger::HeadlineFraction;
  if (s == "none") return NewsTrigger::None;
  return std::nullopt;
}

bool profile_substring_match(const UserProfile& user) {
  static const std::string needle = "news";
  return contains_icase(user.display_name, needle) || contains_icase(user.screen_name, needle) ||
         contains_icase(user.description, needle);
}

HeadlineModel train_headline_model(const std::vector<std::string>& headlines,
                                   const std::vector<std::string>& non_news, uint64_t seed) {
  if (headlines.empty() || non_news.empty())
    throw std::invalid_argument("headline model: both classes must be non-empty");

  Rng rng(seed);
  auto split = [&rng](size_t n) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    rng.shuffle(idx);
    size_t train_n = std::max<size_t>(1, (n * 9) / 10);
    return std::make_pair(std::vector<size_t>(idx.begin(), idx.begin() + train_n),
                          std::vector<size_t>(idx.begin() + train_n, idx.end()));
  };
  auto [head_train, head_test] = split(headlines.size());
  auto [other_train, other_test] = split(non_news.size());

  HeadlineModel m;
  m.seed = seed;

  std::vector<int64_t> count_headline, count_other;
  int64_t total_headline = 0, total_other = 0;
  auto accumulate = [&m](const std::vector<std::string>& docs, const std::vector<size_t>& idx,
                         std::vector<int64_t>& counts, int64_t& total,
                         std::vector<int64_t>& other_counts) {
    for (size_t i : idx) {
      for (const auto& tok : headline_tokens(docs[i])) {
        auto [it, inserted] = m.vocabulary.emplace(tok, static_cast<int>(m.vocabulary.size()));
        if (inserted) {
          counts.push_back(0);
          other_counts.push_back(0);
        }
        ++counts[static_cast<size_t>(it->second)];
        ++total;
      }
    }
  };
  accumulate(headlines, head_train, count_headline, total_headline, count_other);
  accumulate(non_news, other_train, count_other, total_other, count_headline);

  const double v = static_cast<double>(m.vocabulary.size());
  m.log_prob_headline.resize(count_headline.size());
  m.log_prob_other.resize(count_other.size());
  for (size_t i = 0; i < count_headline.size(); ++i) {
    m.log_prob_headline[i] =
        std::log((static_cast<double>(count_headline[i]) + 1.0) / (static_cast<double>(total_headline) + v));
    m.log_prob_other[i] =
        std::log((static_cast<double>(count_other[i]) + 1.0) / (static_cast<double>(total_other) + v));
  }
  const double n_docs =
      static_cast<double>(head_train.size()) + static_cast<double>(other_train.size());
  m.log_prior_headline = std::log(static_cast<double>(head_train.size()) / n_docs);
  m.log_prior_other = std::log(static_cast<double>(other_train.size()) / n_docs);

  // Held-out accuracy on the 10% split; falls back to the training split for
  // corpora too small to hold anything out.
  int64_t correct = 0, total_eval = 0;
  auto evaluate = [&](const std::vector<std::string>& docs, const std::vector<size_t>& idx,
                      bool expect_headline) {
    for (size_t i : idx) {
      ++total_eval;
      if (classify_tweet(m, docs[i]).is_headline == expect_headline) ++correct;
    }
  };
  if (!head_test.empty() || !other_test.empty()) {
    evaluate(headlines, head_test, true);
    evaluate(non_news, other_test, false);
  } else {
    evaluate(headlines, head_train, true);
    evaluate(non_news, other_train, false);
  }
  m.held_out_accuracy =
      total_eval == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total_eval);
  return m;
}

HeadlinePrediction classify_tweet(const HeadlineModel& model, const std::string& text) {
  double lh = model.log_prior_headline;
  double lo = model.log_prior_other;
  for (const auto& tok : headline_tokens(text)) {
    auto it = model.vocabulary.find(tok);
    if (it == model.vocabulary.end()) continue;  // unseen tokens: priors decide
    lh += model.log_prob_headline[static_cast<size_t>(it->second)];
    lo += model.log_prob_other[static_cast<size_t>(it->second)];
  }
  double p = 1.0 / (1.0 + std::exp(lo - lh));
  return HeadlinePrediction{p > 0.5, p};  // tie resolves to not_headline
}

NewsBotVerdict headline_fraction_rule(const std::string& user_id,
                                      const std::vector<const Tweet*>& tweets,
                                      const HeadlineModel& model, const NewsBotConfig& config) {
  if (!(config.fraction_threshold > 0.0 && config.fraction_threshold <= 1.0))
    throw std::invalid_argument("news fraction threshold must lie in (0,1]");
  NewsBotVerdict v;
  v.user_id = user_id;
  int64_t counted = 0, headline = 0;
  for (const Tweet* t : tweets) {
    if (!config.count_retweets && t->retweet_of_user) continue;
    ++counted;
    if (classify_tweet(model, t->text).is_headline) ++headline;
  }
  if (counted == 0) return v;  // fraction undefined, trigger None
  double fraction = static_cast<double>(headline) / static_cast<double>(counted);
  v.headline_fraction = fraction;
  if (fraction >= config.fraction_threshold) {
    v.is_news_bot = true;
    v.trigger = NewsTrigger::HeadlineFraction;
  }
  return v;
}

std::vector<NewsBotVerdict> classify_news_bots(const std::vector<BotVerdict>& bots,
                                               const Corpus& corpus, const HeadlineModel& model,
                                               const NewsBotConfig& config) {
  std::unordered_map<std::string, std::vector<const Tweet*>> by_author;
  for (const auto& t : corpus.tweets) by_author[t.author_id].push_back(&t);

  std::vector<NewsBotVerdict> out;
  out.reserve(bots.size());
  for (const auto& bot : bots) {
    if (!bot.is_bot)
      throw std::invalid_argument("classify_news_bots: " + bot.user_id + " is not a bot");
    auto uit = corpus.users.find(bot.user_id);
    if (uit == corpus.users.end())
      throw std::invalid_argument("classify_news_bots: unknown user id " + bot.user_id);
    if (profile_substring_match(uit->second)) {
      out.push_back(NewsBotVerdict{bot.user_id, true, NewsTrigger::ProfileSubstring, std::nullopt});
      continue;
    }
    auto tit = by_author.find(bot.user_id);
    static const std::vector<const Tweet*> kNone;
    out.push_back(headline_fraction_rule(bot.user_id, tit == by_author.end() ? kNone : tit->second,
                                         model, config));
  }
  return out;
}

std::string HeadlineModel::to_json() const {
  json j;
  j["format"] = "botscope.headline_model";
  j["version"] = 1;
  j["seed"] = seed;
  j["held_out_accuracy"] = held_out_accuracy;
  j["log_prior_headline"] = log_prior_headline;
  j["log_prior_other"] = log_prior_other;
  // Vocabulary emitted in index order so the file is canonical.
  std::vector<const std::string*> by_index(vocabulary.size());
  for (const auto& [tok, idx] : vocabulary) by_index[static_cast<size_t>(idx)] = &tok;
  json vocab = json::array();
  for (const auto* tok : by_index) vocab.push_back(*tok);
  j["vocabulary"] = std::move(vocab);
  j["log_prob_headline"] = log_prob_headline;
  j["log_prob_other"] = log_prob_other;
  return j.dump();
}

HeadlineModel HeadlineModel::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || j.value("format", std::string()) != "botscope.headline_model")
    throw std::runtime_error("not a botscope.headline_model file");
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported headline model version");
  HeadlineModel m;
  m.seed = j["seed"].get<uint64_t>();
  m.held_out_accuracy = j["held_out_accuracy"].get<double>();
  m.log_prior_headline = j["log_prior_headline"].get<double>();
  m.log_prior_other = j["log_prior_other"].get<double>();
  int idx = 0;
  for (const auto& tok : j["vocabulary"]) m.vocabulary.emplace(tok.get<std::string>(), idx++);
  m.log_prob_headline = j["log_prob_headline"].get<std::vector<double>>();
  m.log_prob_other = j["log_prob_other"].get<std::vector<double>>();
  if (m.log_prob_headline.size() != m.vocabulary.size() ||
      m.log_prob_other.size() != m.vocabulary.size())
    throw std::runtime_error("corrupt headline model: table sizes disagree");
  return m;
}

void HeadlineModel::save(const std::string& path) const { write_file_bytes(path, to_json() + "\n"); }

HeadlineModel HeadlineModel::load(const std::string& path) {
  auto text = read_file(path);
  if (!text) throw std::runtime_error("cannot read headline model: " + path);
  return from_json(*text);
}

}  // namespace botscope
