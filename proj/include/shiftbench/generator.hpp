#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "shiftbench/pair.hpp"

namespace shiftbench {

enum class ModifierCategory { kAdjP, kPP };

struct Modifier {
  std::string text;
  ModifierCategory category = ModifierCategory::kAdjP;
};

// A bare constituent: AdjP modifiers go between `pre` and `head`, PP
// modifiers after `head`.
struct BaseConstituent {
  std::string pre;
  std::string head;
};

struct Frame {
  std::string id;
  std::string role_a;  // first constituent of the unshifted order
  std::string role_b;
  std::string adjunct;  // fixed trailing material, may be empty
};

struct ShiftLexicon {
  std::vector<Frame> frames;
  std::vector<std::string> subjects;
  std::vector<std::string> verbs;
  std::map<std::string, std::vector<BaseConstituent>> constituents;
  // chains[role][k] holds exactly k modifiers and extends chains[role][k-1].
  std::map<std::string, std::vector<std::vector<Modifier>>> modifier_chains;
};

struct Lexicon {
  std::map<ShiftType, ShiftLexicon> sections;
};

// Parses and validates a JSON lexicon; throws ValidationError naming the
// offending entry.
Lexicon load_lexicon(std::string_view source);
Lexicon default_lexicon();
std::string_view default_lexicon_json();

// Which constituents are graded and up to which modifier level.
struct GenerationPlan {
  ShiftType shift_type = ShiftType::kHnps;
  bool grade_a = false;
  bool grade_b = false;
  int max_level_a = 0;
  int max_level_b = 0;
};

// Grades the NP for HNPS and PM and both constituents for DA and MPP, up to
// the longest chain the lexicon declares.
GenerationPlan default_plan(const Lexicon& lexicon, ShiftType type);

// "the" + [tall] + "man" + [from the city] ...
std::string realize_constituent(const BaseConstituent& base, std::span<const Modifier> modifiers);

// Cartesian product over frame x subject x verb x base_a x base_b x level_a x
// level_b, in that lexicographic order.
std::vector<SentencePair> expand(const Lexicon& lexicon, const GenerationPlan& plan);

// Closed-form size of expand(lexicon, plan).
std::size_t expansion_size(const Lexicon& lexicon, const GenerationPlan& plan);

struct Census {
  std::map<ShiftType, std::size_t> per_shift;
  // (shift, level_a, level_b) -> count; synthetic pairs only.
  std::map<std::tuple<ShiftType, int, int>, std::size_t> per_level;
};

Census dataset_census(std::span<const SentencePair> pairs);

}  // namespace shiftbench
