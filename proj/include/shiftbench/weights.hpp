#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "shiftbench/backend.hpp"
#include "shiftbench/pair.hpp"

namespace shiftbench {

// Word tokens after edge punctuation is stripped; throws ValidationError when
// the text has no words.
std::size_t word_length(std::string_view text);

// Heuristic count for one word, minimum 1; 0 for a token without letters.
int syllable_count(std::string_view word);
std::size_t syllable_weight(std::string_view text);

// Throws BackendError if the tokenizer cannot be reached.
std::size_t token_length(std::string_view text, const Tokenizer& tokenizer);

struct WeightProfile {
  std::size_t word_length = 0;
  std::size_t syllable_weight = 0;
  std::map<std::string, std::size_t> token_length;  // keyed by tokenizer id
  std::optional<int> modifier_weight;

  bool operator==(const WeightProfile&) const = default;
};

// Metric name -> weight(a) / weight(b). Names: "word", "syllable",
// "modifier", and "token:<tokenizer id>".
struct RatioProfile {
  std::map<std::string, double> values;

  bool operator==(const RatioProfile&) const = default;
};

WeightProfile profile(std::string_view text, std::optional<int> modifier_weight,
                      std::span<const Tokenizer* const> tokenizers);

// Metrics present on only one side are omitted.
RatioProfile ratios(const WeightProfile& a, const WeightProfile& b);

struct WeightedPair {
  SentencePair pair;
  WeightProfile weights_a;
  WeightProfile weights_b;
  RatioProfile ratios;
};

WeightedPair weigh(const SentencePair& pair, std::span<const Tokenizer* const> tokenizers);

nlohmann::ordered_json to_json(const WeightedPair& weighted);
WeightedPair weighted_from_json(const nlohmann::json& record);

}  // namespace shiftbench
