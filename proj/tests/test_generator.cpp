#include <gtest/gtest.h>

#include "json.hpp"
#include "shiftbench/error.hpp"
#include "shiftbench/generator.hpp"
#include "shiftbench/weights.hpp"

namespace shiftbench {
namespace {

using nlohmann::json;

json chain(const std::vector<std::pair<std::string, std::string>>& modifiers) {
  json levels = json::array({json::array()});
  json current = json::array();
  for (const auto& [text, cat] : modifiers) {
    current.push_back({{"text", text}, {"category", cat}});
    levels.push_back(current);
  }
  return levels;
}

// 1 frame x 2 subjects x 3 verbs x 4 NPs x (1 PP), NP chain of 5 levels.
json small_hnps() {
  return {{"hnps",
           {{"frames", json::array({{{"id", "f"}, {"roles", {"NP", "PP"}}, {"adjunct", ""}}})},
            {"subjects", {"I", "We"}},
            {"verbs", {"met", "saw", "greeted"}},
            {"constituents",
             {{"NP", json::array({{{"pre", "the"}, {"head", "man"}},
                                  {{"pre", "the"}, {"head", "woman"}},
                                  {{"pre", "the"}, {"head", "doctor"}},
                                  {{"pre", "the"}, {"head", "artist"}}})},
              {"PP", json::array({{{"pre", "at the"}, {"head", "park"}}})}}},
            {"modifier_chains",
             {{"NP", chain({{"tall", "AdjP"}, {"from the city", "PP"}, {"friendly", "AdjP"}, {"with a hat", "PP"}})}}}}}};
}

json tiny_da() {
  return {{"da",
           {{"frames", json::array({{{"id", "d"}, {"roles", {"NP1", "NP2"}}, {"adjunct", "for her birthday"}}})},
            {"subjects", {"He"}},
            {"verbs", {"sent"}},
            {"constituents",
             {{"NP1", json::array({{{"pre", ""}, {"head", "her"}}})},
              {"NP2", json::array({{{"pre", "a"}, {"head", "gift"}}})}}},
            {"modifier_chains",
             {{"NP1", chain({{"dear", "AdjP"}, {"from school", "PP"}})},
              {"NP2", chain({{"small", "AdjP"}, {"from Paris", "PP"}})}}}}}};
}

TEST(LoadLexicon, DefaultHasFourSections) {
  const Lexicon lexicon = default_lexicon();
  EXPECT_EQ(lexicon.sections.size(), 4u);
  for (ShiftType t : kAllShiftTypes) EXPECT_TRUE(lexicon.sections.contains(t));
}

TEST(LoadLexicon, UnknownRoleIsNamed) {
  json doc = small_hnps();
  doc["hnps"]["frames"][0]["roles"] = {"NP", "NP3"};
  try {
    load_lexicon(doc.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("NP3"), std::string::npos);
  }
}

TEST(LoadLexicon, SkippedChainLevelIsRejected) {
  json doc = small_hnps();
  doc["hnps"]["modifier_chains"]["NP"].erase(2);
  try {
    load_lexicon(doc.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-cumulative"), std::string::npos);
  }
}

TEST(LoadLexicon, EmptyFrameListIsRejected) {
  json doc = small_hnps();
  doc["hnps"]["frames"] = json::array();
  EXPECT_THROW(load_lexicon(doc.dump()), ValidationError);
}

TEST(LoadLexicon, MissingKeyIsRejected) {
  json doc = small_hnps();
  doc["hnps"].erase("verbs");
  EXPECT_THROW(load_lexicon(doc.dump()), ValidationError);
}

TEST(Expand, CardinalityMatchesBruteForceProduct) {
  const Lexicon lexicon = load_lexicon(small_hnps().dump());
  const GenerationPlan plan = default_plan(lexicon, ShiftType::kHnps);
  EXPECT_EQ(plan.max_level_a, 4);
  const auto pairs = expand(lexicon, plan);
  std::size_t brute = 0;
  for (int f = 0; f < 1; ++f)
    for (int s = 0; s < 2; ++s)
      for (int v = 0; v < 3; ++v)
        for (int np = 0; np < 4; ++np)
          for (int level = 0; level <= 4; ++level) ++brute;
  EXPECT_EQ(pairs.size(), 120u);
  EXPECT_EQ(pairs.size(), brute);
  EXPECT_EQ(expansion_size(lexicon, plan), brute);
}

TEST(Expand, LevelZeroGivesBareBases) {
  const Lexicon lexicon = load_lexicon(small_hnps().dump());
  GenerationPlan plan = default_plan(lexicon, ShiftType::kHnps);
  plan.max_level_a = 0;
  const auto pairs = expand(lexicon, plan);
  EXPECT_EQ(pairs.size(), 24u);
  for (const auto& p : pairs) {
    ASSERT_TRUE(p.synthetic);
    EXPECT_EQ(p.synthetic->modifier_weight_a(), 1);
    EXPECT_EQ(p.synthetic->modifier_weight_b(), 1);
    EXPECT_EQ(word_length(p.constituent_a().text), 2u);
  }
}

TEST(Expand, DativeGridIsProductOfBothLevels) {
  const Lexicon lexicon = load_lexicon(tiny_da().dump());
  const GenerationPlan plan = default_plan(lexicon, ShiftType::kDa);
  const auto pairs = expand(lexicon, plan);
  ASSERT_EQ(pairs.size(), 9u);
  EXPECT_EQ(pairs.front().unshifted, "He sent her a gift for her birthday.");
  EXPECT_EQ(pairs.front().shifted, "He sent a gift to her for her birthday.");
  EXPECT_EQ(pairs.back().unshifted, "He sent dear her from school a small gift from Paris for her birthday.");
}

TEST(Expand, PlanMustGradeBothForDative) {
  const Lexicon lexicon = load_lexicon(tiny_da().dump());
  GenerationPlan plan = default_plan(lexicon, ShiftType::kDa);
  plan.grade_b = false;
  plan.max_level_b = 0;
  EXPECT_THROW(expand(lexicon, plan), ValidationError);
}

TEST(Expand, ModifiersPlacedAroundHead) {
  std::vector<Modifier> mods = {{"tall", ModifierCategory::kAdjP}, {"from the city", ModifierCategory::kPP},
                                {"friendly", ModifierCategory::kAdjP}};
  EXPECT_EQ(realize_constituent({"the", "man"}, mods), "the tall friendly man from the city");
}

TEST(Expand, WeightIsMonotoneInLevelWithinACell) {
  const Lexicon lexicon = default_lexicon();
  for (ShiftType type : kAllShiftTypes) {
    const auto pairs = expand(lexicon, default_plan(lexicon, type));
    std::map<std::string, std::pair<std::size_t, std::size_t>> last;  // cell -> (word, syllable) of a
    for (const auto& p : pairs) {
      // Ids end in "-l<a>-<b>"; the cell is everything before, plus level b.
      const auto cut = p.id.rfind("-l");
      const std::string cell = p.id.substr(0, cut) + "/" + std::to_string(p.synthetic->level_b);
      const std::size_t w = word_length(p.constituent_a().text);
      const std::size_t s = syllable_weight(p.constituent_a().text);
      if (auto it = last.find(cell); it != last.end()) {
        EXPECT_GE(w, it->second.first) << p.id;
        EXPECT_GE(s, it->second.second) << p.id;
      }
      last[cell] = {w, s};
    }
  }
}

TEST(Expand, DeterministicAndWellFormed) {
  const Lexicon lexicon = default_lexicon();
  for (ShiftType type : kAllShiftTypes) {
    const auto plan = default_plan(lexicon, type);
    const auto a = expand(lexicon, plan);
    EXPECT_EQ(a, expand(lexicon, plan));
    EXPECT_EQ(a.size(), expansion_size(lexicon, plan));
    std::set<std::string> ids;
    for (const auto& p : a) {
      EXPECT_NO_THROW(validate_pair(p)) << p.id;
      EXPECT_EQ(p.source, PairSource::kSynthetic);
      ids.insert(p.id);
    }
    EXPECT_EQ(ids.size(), a.size());
  }
}

TEST(Census, CountsPerShiftAndLevel) {
  const Lexicon small = load_lexicon(small_hnps().dump());
  const auto hnps = expand(small, default_plan(small, ShiftType::kHnps));
  Census c = dataset_census(hnps);
  EXPECT_EQ(c.per_shift.at(ShiftType::kHnps), 120u);
  EXPECT_EQ(c.per_shift.at(ShiftType::kDa), 0u);
  EXPECT_EQ((c.per_level.at({ShiftType::kHnps, 3, 0})), 24u);

  const Census empty = dataset_census({});
  for (ShiftType t : kAllShiftTypes) EXPECT_EQ(empty.per_shift.at(t), 0u);

  const Lexicon da = load_lexicon(tiny_da().dump());
  auto mixed = hnps;
  const auto dative = expand(da, default_plan(da, ShiftType::kDa));
  mixed.insert(mixed.end(), dative.begin(), dative.end());
  c = dataset_census(mixed);
  std::size_t brute_hnps = 0, brute_da = 0;
  for (const auto& p : mixed) (p.shift_type == ShiftType::kHnps ? brute_hnps : brute_da) += 1;
  EXPECT_EQ(c.per_shift.at(ShiftType::kHnps), brute_hnps);
  EXPECT_EQ(c.per_shift.at(ShiftType::kDa), brute_da);
}

}  // namespace
}  // namespace shiftbench
