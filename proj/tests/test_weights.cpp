#include <gtest/gtest.h>

#include "shiftbench/error.hpp"
#include "shiftbench/generator.hpp"
#include "shiftbench/ngram.hpp"
#include "shiftbench/replay_backend.hpp"
#include "shiftbench/weights.hpp"
#include "syllable_oracle.hpp"

namespace shiftbench {
namespace {

constexpr const char* kShort = "with her grandmother";
constexpr const char* kGarden = "around the garden";
constexpr const char* kLong = "around the decorated entryway garden with the large fountain";

TEST(WordLength, Examples) {
  EXPECT_EQ(word_length(kShort), 3u);
  EXPECT_EQ(word_length(kLong), 9u);
  EXPECT_EQ(word_length("up"), 1u);
  EXPECT_EQ(word_length("the man, quickly."), 3u);
  EXPECT_THROW(word_length(""), ValidationError);
  EXPECT_THROW(word_length("-- ,"), ValidationError);
}

TEST(Syllables, PhraseExamples) {
  EXPECT_EQ(syllable_weight(kShort), 5u);
  EXPECT_EQ(syllable_weight(kGarden), 5u);
  EXPECT_EQ(syllable_weight(kLong), 17u);
  EXPECT_EQ(syllable_count("a"), 1);
  EXPECT_EQ(syllable_count("decorated"), 4);
  EXPECT_EQ(syllable_count("entryway"), 3);
  EXPECT_EQ(syllable_count("table"), 2);
  EXPECT_EQ(syllable_count("Yellow"), 2);
  EXPECT_EQ(syllable_count("42"), 0);
}

TEST(Syllables, OracleAgreementAtLeastNinetyPercent) {
  int agree = 0;
  for (const auto& [word, count] : testing::syllable_oracle()) agree += syllable_count(word) == count;
  EXPECT_EQ(testing::syllable_oracle().size(), 50u);
  EXPECT_GE(agree, 45);
}

TEST(Syllables, AtLeastOnePerWord) {
  for (const auto& [word, count] : testing::syllable_oracle()) EXPECT_GE(syllable_count(word), 1) << word;
  EXPECT_GE(syllable_weight(kLong), word_length(kLong));
}

TEST(Weights, DuplicationDoublesWordAndSyllableWeight) {
  for (const std::string text : std::vector<std::string>{kShort, kLong, "the tall man from the city"}) {
    const std::string doubled = text + " " + text;
    EXPECT_EQ(word_length(doubled), 2 * word_length(text));
    EXPECT_EQ(syllable_weight(doubled), 2 * syllable_weight(text));
  }
}

TEST(TokenLength, Backends) {
  WhitespaceTokenizer ws;
  EXPECT_EQ(token_length(kShort, ws), 3u);
  const std::vector<std::string> corpus = {"I met the man at the park."};
  const auto lm = train_ngram(corpus, 2, 0.5);
  for (const std::string text : std::vector<std::string>{kShort, kLong, "up"}) {
    EXPECT_EQ(token_length(text, lm), word_length(text));
  }
  const auto replay = ReplayBackend::load_file(std::string(SHIFTBENCH_FIXTURES) + "/replay.jsonl");
  EXPECT_EQ(token_length("at the park", replay), 3u);
  EXPECT_THROW(token_length("unrecorded text", replay), BackendError);
}

TEST(Ratios, Examples) {
  const std::vector<const Tokenizer*> none;
  auto ratio = [&](const char* a, const char* b, const char* metric) {
    return ratios(profile(a, std::nullopt, none), profile(b, std::nullopt, none)).values.at(metric);
  };
  EXPECT_EQ(ratio(kShort, kGarden, "word"), 1.0);
  EXPECT_EQ(ratio(kShort, kGarden, "syllable"), 1.0);
  EXPECT_EQ(ratio(kShort, kLong, "word"), 3.0 / 9.0);
  EXPECT_EQ(ratio(kShort, kLong, "syllable"), 5.0 / 17.0);
}

TEST(Ratios, MissingMetricsAreOmittedAndReciprocalHolds) {
  WhitespaceTokenizer ws;
  const std::vector<const Tokenizer*> tok{&ws};
  const std::vector<const Tokenizer*> none;
  const auto a = profile(kShort, 2, tok);
  const auto b = profile(kLong, std::nullopt, none);
  const auto r = ratios(a, b);
  EXPECT_FALSE(r.values.contains("modifier"));
  EXPECT_FALSE(r.values.contains("token:whitespace"));
  const auto c = profile(kLong, 4, tok);
  const auto ac = ratios(a, c);
  const auto ca = ratios(c, a);
  for (const auto& [key, value] : ac.values) {
    EXPECT_GT(value, 0.0);
    EXPECT_NEAR(value * ca.values.at(key), 1.0, 1e-15) << key;
  }
  EXPECT_EQ(ac.values.at("modifier"), 0.5);
}

TEST(Weigh, ModifierWeightMatchesGeneratorLevel) {
  const Lexicon lexicon = default_lexicon();
  WhitespaceTokenizer ws;
  const std::vector<const Tokenizer*> tok{&ws};
  for (ShiftType type : kAllShiftTypes) {
    const auto pairs = expand(lexicon, default_plan(lexicon, type));
    for (std::size_t i = 0; i < pairs.size(); i += 37) {
      const auto w = weigh(pairs[i], tok);
      EXPECT_EQ(*w.weights_a.modifier_weight, pairs[i].synthetic->level_a + 1);
      EXPECT_EQ(*w.weights_b.modifier_weight, pairs[i].synthetic->level_b + 1);
      EXPECT_EQ(to_json(weighted_from_json(to_json(w))).dump(), to_json(w).dump());
    }
  }
}

TEST(Weigh, DativeNumeratorIsFirstUnshiftedConstituent) {
  SentencePair p;
  p.id = "d";
  p.shift_type = ShiftType::kDa;
  p.unshifted = "He sent her a lovely gift.";
  p.shifted = "He sent a lovely gift to her.";
  p.constituents = {{"NP1", "her", 0}, {"NP2", "a lovely gift", 0}, {"NP2", "a lovely gift", 1}, {"PP", "to her", 1}};
  const auto w = weigh(p, {});
  EXPECT_EQ(w.ratios.values.at("word"), 1.0 / 3.0);
}

}  // namespace
}  // namespace shiftbench
