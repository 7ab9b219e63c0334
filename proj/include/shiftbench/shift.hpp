#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftbench/pair.hpp"
#include "shiftbench/tree.hpp"

namespace shiftbench {

// A VP whose first two non-empty children after the head verb fit a shift
// schema. Pointers refer into `root`, which must outlive the match.
struct ShiftMatch {
  ShiftType shift_type = ShiftType::kHnps;
  const ParseNode* root = nullptr;
  const ParseNode* vp = nullptr;
  const ParseNode* verb = nullptr;
  std::string verb_lemma;
  const ParseNode* constituent_a = nullptr;
  const ParseNode* constituent_b = nullptr;
  std::vector<const ParseNode*> tail;
};

// Lowercased surface form, mapped through a small irregular-verb table.
std::string verb_lemma(std::string_view surface);

// Constituent-label predicates used by the schemas. Adverbial and predicative
// NPs (NP-TMP, NP-PRD, ...) do not count as objects.
bool is_object_np(const ParseNode& node);
bool is_pp(const ParseNode& node);
bool is_particle(const ParseNode& node);

// Matches in preorder, so an enclosing VP is reported before VPs nested in it.
std::vector<ShiftMatch> match_shift_pattern(const ParseNode& tree, ShiftType type);

// Re-checks a match's labels against its schema.
bool satisfies_schema(const ShiftMatch& match);

// Builds both orders from the match. Throws QualityError for a dative whose
// recipient already starts with "to".
SentencePair realize_pair(const ShiftMatch& match, std::string id);

struct QualityFilter {
  std::size_t max_constituent_words = 25;
  // When set, only these verb lemmas are kept.
  std::optional<std::set<std::string>> verb_allowlist;
};

// Throws QualityError naming the first filter the match fails.
void check_quality(const ShiftMatch& match, const QualityFilter& filter);

// All matches in the treebank that realize and pass the filters, in treebank
// order, then a seeded uniform sample without replacement (kept in treebank
// order). Ids are "<shift>-mined-<tree>-<match>".
std::vector<SentencePair> mine(std::span<const ParseNode> treebank, ShiftType type,
                               std::size_t sample_size, std::uint64_t seed,
                               const QualityFilter& filter = {});

// Every realized, filter-passing pair, before sampling.
std::vector<SentencePair> mine_all(std::span<const ParseNode> treebank, ShiftType type,
                                   const QualityFilter& filter = {});

// Seeded partial Fisher-Yates; returns sorted indices into [0, population).
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t sample_size,
                                        std::uint64_t seed);

}  // namespace shiftbench
