#include "shiftbench/weights.hpp"

#include <cctype>

#include "shiftbench/error.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {
namespace {

bool is_vowel_at(const std::string& w, std::size_t i) {
  const char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
  return c == 'y' && i > 0;
}

void put_ratio(RatioProfile& out, const std::string& name, double num, double den) {
  if (den <= 0.0) throw ValidationError("zero denominator for " + name + " ratio");
  out.values[name] = num / den;
}

nlohmann::ordered_json profile_json(const WeightProfile& p) {
  nlohmann::ordered_json out;
  out["word"] = p.word_length;
  out["syllable"] = p.syllable_weight;
  nlohmann::ordered_json tokens = nlohmann::ordered_json::object();
  for (const auto& [id, n] : p.token_length) tokens[id] = n;
  out["token"] = std::move(tokens);
  if (p.modifier_weight) out["modifier"] = *p.modifier_weight;
  return out;
}

WeightProfile profile_from_json(const nlohmann::json& j) {
  WeightProfile p;
  p.word_length = j.at("word").get<std::size_t>();
  p.syllable_weight = j.at("syllable").get<std::size_t>();
  if (j.contains("token")) {
    for (const auto& [id, n] : j.at("token").items()) p.token_length[id] = n.get<std::size_t>();
  }
  if (j.contains("modifier")) p.modifier_weight = j.at("modifier").get<int>();
  return p;
}

}  // namespace

std::size_t word_length(std::string_view text) {
  const std::size_t n = word_tokens(text).size();
  if (n == 0) throw ValidationError("constituent '" + std::string(text) + "' has no words");
  return n;
}

int syllable_count(std::string_view raw) {
  std::string w;
  for (char c : raw) {
    if (std::isalpha(static_cast<unsigned char>(c))) w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (w.empty()) return 0;
  int groups = 0;
  bool previous_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool vowel = is_vowel_at(w, i);
    if (vowel && !previous_vowel) ++groups;
    previous_vowel = vowel;
  }
  const std::size_t n = w.size();
  if (n >= 2 && w[n - 1] == 'e' && !is_vowel_at(w, n - 2)) {
    // Silent final e, except consonant + "le" (ta-ble).
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel_at(w, n - 3);
    if (!consonant_le) --groups;
  } else if (n >= 3 && w[n - 2] == 'e' && w[n - 1] == 'd' && !is_vowel_at(w, n - 3) &&
             w[n - 3] != 't' && w[n - 3] != 'd') {
    // Silent "-ed" (looked), kept after t/d (decorated).
    --groups;
  }
  return std::max(groups, 1);
}

std::size_t syllable_weight(std::string_view text) {
  std::size_t total = 0;
  for (const auto& token : split_whitespace(text)) total += static_cast<std::size_t>(syllable_count(token));
  return total;
}

std::size_t token_length(std::string_view text, const Tokenizer& tokenizer) {
  return tokenizer.count_tokens(text);
}

WeightProfile profile(std::string_view text, std::optional<int> modifier_weight,
                      std::span<const Tokenizer* const> tokenizers) {
  WeightProfile p;
  p.word_length = word_length(text);
  p.syllable_weight = syllable_weight(text);
  for (const Tokenizer* t : tokenizers) p.token_length[t->tokenizer_id()] = token_length(text, *t);
  if (modifier_weight) {
    if (*modifier_weight < 1) throw ValidationError("modifier weight must be at least 1");
    p.modifier_weight = modifier_weight;
  }
  return p;
}

RatioProfile ratios(const WeightProfile& a, const WeightProfile& b) {
  RatioProfile out;
  put_ratio(out, "word", static_cast<double>(a.word_length), static_cast<double>(b.word_length));
  put_ratio(out, "syllable", static_cast<double>(a.syllable_weight), static_cast<double>(b.syllable_weight));
  if (a.modifier_weight && b.modifier_weight) {
    put_ratio(out, "modifier", *a.modifier_weight, *b.modifier_weight);
  }
  for (const auto& [id, n] : a.token_length) {
    auto it = b.token_length.find(id);
    if (it == b.token_length.end()) continue;
    put_ratio(out, "token:" + id, static_cast<double>(n), static_cast<double>(it->second));
  }
  return out;
}

WeightedPair weigh(const SentencePair& pair, std::span<const Tokenizer* const> tokenizers) {
  WeightedPair out;
  out.pair = pair;
  std::optional<int> mod_a;
  std::optional<int> mod_b;
  if (pair.synthetic) {
    mod_a = pair.synthetic->modifier_weight_a();
    mod_b = pair.synthetic->modifier_weight_b();
  }
  out.weights_a = profile(pair.constituent_a().text, mod_a, tokenizers);
  out.weights_b = profile(pair.constituent_b().text, mod_b, tokenizers);
  out.ratios = ratios(out.weights_a, out.weights_b);
  return out;
}

nlohmann::ordered_json to_json(const WeightedPair& weighted) {
  nlohmann::ordered_json out = to_json(weighted.pair);
  out["weights_a"] = profile_json(weighted.weights_a);
  out["weights_b"] = profile_json(weighted.weights_b);
  nlohmann::ordered_json r = nlohmann::ordered_json::object();
  for (const auto& [name, value] : weighted.ratios.values) r[name] = value;
  out["ratios"] = std::move(r);
  return out;
}

WeightedPair weighted_from_json(const nlohmann::json& record) {
  WeightedPair out;
  out.pair = pair_from_json(record);
  try {
    out.weights_a = profile_from_json(record.at("weights_a"));
    out.weights_b = profile_from_json(record.at("weights_b"));
    for (const auto& [name, value] : record.at("ratios").items()) out.ratios.values[name] = value.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("pair " + out.pair.id + " lacks weight annotations: " + e.what());
  }
  return out;
}

}  // namespace shiftbench
