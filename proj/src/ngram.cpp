#include "shiftbench/ngram.hpp"

#include <cctype>
#include <cmath>

#include "shiftbench/error.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {

std::vector<std::string> NGramModel::tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto& w : word_tokens(text)) tokens.push_back(to_lower(w));
  std::size_t end = text.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (end > 0 && (text[end - 1] == '.' || text[end - 1] == '?' || text[end - 1] == '!')) {
    tokens.emplace_back(1, text[end - 1]);
  }
  return tokens;
}

std::string NGramModel::context_key(std::span<const std::string> context) const {
  std::string key;
  for (const auto& t : context) {
    key += (t == kBos || vocabulary_.contains(t)) ? t : std::string(kUnknown);
    key += '\x1f';
  }
  return key;
}

double NGramModel::probability(std::span<const std::string> context, const std::string& word) const {
  const double denominator_extra = delta_ * static_cast<double>(vocabulary_.size() + 1);
  std::size_t count = 0;
  std::size_t total = 0;
  if (auto it = contexts_.find(context_key(context)); it != contexts_.end()) {
    total = it->second.total;
    if (auto w = it->second.counts.find(word); w != it->second.counts.end()) count = w->second;
  }
  return (static_cast<double>(count) + delta_) / (static_cast<double>(total) + denominator_extra);
}

ScoredSequence NGramModel::score(std::string_view text) const {
  std::vector<std::string> tokens = tokenize(text);
  std::vector<std::string> history(static_cast<std::size_t>(order_ - 1), std::string(kBos));
  std::vector<double> logprobs;
  logprobs.reserve(tokens.size());
  for (const auto& token : tokens) {
    logprobs.push_back(std::log(probability(history, token)));
    if (!history.empty()) {
      history.erase(history.begin());
      history.push_back(token);
    }
  }
  return make_scored(std::string(text), std::move(tokens), std::move(logprobs));
}

std::size_t NGramModel::count_tokens(std::string_view text) const { return tokenize(text).size(); }

NGramModel train_ngram(std::span<const std::string> corpus, int order, double delta, std::string backend_id) {
  if (order < 1 || order > 3) throw ValidationError("n-gram order must be 1, 2 or 3");
  if (!(delta > 0.0)) throw ValidationError("smoothing delta must be positive");
  NGramModel model;
  model.order_ = order;
  model.delta_ = delta;
  model.backend_id_ = backend_id.empty() ? "ngram-o" + std::to_string(order) : std::move(backend_id);

  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : corpus) {
    auto tokens = NGramModel::tokenize(line);
    if (tokens.empty()) continue;
    for (const auto& t : tokens) model.vocabulary_.insert(t);
    sentences.push_back(std::move(tokens));
  }
  if (sentences.empty()) throw ValidationError("cannot train an n-gram model on an empty corpus");

  for (const auto& tokens : sentences) {
    std::vector<std::string> history(static_cast<std::size_t>(order - 1), std::string(NGramModel::kBos));
    for (const auto& token : tokens) {
      auto& stats = model.contexts_[model.context_key(history)];
      ++stats.counts[token];
      ++stats.total;
      if (!history.empty()) {
        history.erase(history.begin());
        history.push_back(token);
      }
    }
  }
  return model;
}

}  // namespace shiftbench
