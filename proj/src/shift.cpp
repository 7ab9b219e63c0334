#include "shiftbench/shift.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "shiftbench/error.hpp"
#include "shiftbench/kernels.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {
namespace {

const std::map<std::string, std::string, std::less<>>& irregular_verbs() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"am", "be"},        {"are", "be"},       {"is", "be"},        {"was", "be"},
      {"were", "be"},      {"been", "be"},      {"has", "have"},     {"had", "have"},
      {"does", "do"},      {"did", "do"},       {"done", "do"},      {"met", "meet"},
      {"saw", "see"},      {"seen", "see"},     {"sent", "send"},    {"gave", "give"},
      {"given", "give"},   {"went", "go"},      {"gone", "go"},      {"ran", "run"},
      {"drove", "drive"},  {"driven", "drive"}, {"wrote", "write"},  {"written", "write"},
      {"brought", "bring"},{"took", "take"},    {"taken", "take"},   {"made", "make"},
      {"told", "tell"},    {"said", "say"},     {"got", "get"},      {"gotten", "get"},
      {"found", "find"},   {"sold", "sell"},    {"bought", "buy"},   {"thought", "think"},
      {"left", "leave"},   {"kept", "keep"},    {"paid", "pay"},     {"held", "hold"},
      {"led", "lead"},     {"lent", "lend"},    {"built", "build"},  {"spent", "spend"},
      {"put", "put"},      {"set", "set"},      {"cut", "cut"},      {"came", "come"},
      {"became", "become"},{"began", "begin"},  {"begun", "begin"},  {"chose", "choose"},
      {"chosen", "choose"},{"fell", "fall"},    {"felt", "feel"},    {"flew", "fly"},
      {"forgot", "forget"},{"grew", "grow"},    {"heard", "hear"},   {"knew", "know"},
      {"known", "know"},   {"lost", "lose"},    {"meant", "mean"},   {"read", "read"},
      {"rose", "rise"},    {"shown", "show"},   {"sat", "sit"},      {"spoke", "speak"},
      {"stood", "stand"},  {"taught", "teach"}, {"threw", "throw"},  {"thrown", "throw"},
      {"understood", "understand"}, {"won", "win"}, {"wore", "wear"}, {"handed", "hand"},
  };
  return table;
}

const ParseNode* head_verb(const ParseNode& vp, std::size_t& index) {
  for (std::size_t i = 0; i < vp.children.size(); ++i) {
    const auto& child = vp.children[i];
    if (child.is_preterminal() && category(child.label).starts_with("VB")) {
      index = i;
      return &child;
    }
  }
  return nullptr;
}

bool fits_schema(ShiftType type, const ParseNode& a, const ParseNode& b) {
  switch (type) {
    case ShiftType::kHnps: return is_object_np(a) && is_pp(b);
    case ShiftType::kPm:
      return (is_particle(a) && is_object_np(b)) || (is_object_np(a) && is_particle(b));
    case ShiftType::kDa: return is_object_np(a) && is_object_np(b);
    case ShiftType::kMpp: return is_pp(a) && is_pp(b);
  }
  return false;
}

void collect_matches(const ParseNode& root, const ParseNode& node, ShiftType type,
                     std::vector<ShiftMatch>& out) {
  if (!node.is_preterminal() && category(node.label) == "VP") {
    std::size_t verb_index = 0;
    if (const ParseNode* verb = head_verb(node, verb_index)) {
      std::vector<const ParseNode*> rest;
      for (std::size_t i = verb_index + 1; i < node.children.size(); ++i) {
        if (!node.children[i].span.empty()) rest.push_back(&node.children[i]);
      }
      if (rest.size() >= 2 && fits_schema(type, *rest[0], *rest[1])) {
        ShiftMatch match;
        match.shift_type = type;
        match.root = &root;
        match.vp = &node;
        match.verb = verb;
        match.verb_lemma = verb_lemma(*verb->token);
        match.constituent_a = rest[0];
        match.constituent_b = rest[1];
        match.tail.assign(rest.begin() + 2, rest.end());
        out.push_back(std::move(match));
      }
    }
  }
  for (const auto& child : node.children) collect_matches(root, child, type, out);
}

using Tokens = std::vector<std::string>;

Tokens slice(const Tokens& tokens, Span span) {
  return Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(span.begin),
                tokens.begin() + static_cast<std::ptrdiff_t>(span.end));
}

struct Piece {
  std::string role;
  Tokens tokens;
};

bool is_quote(const std::string& token) {
  return token == "``" || token == "''" || token == "\"" || token == "'" || token == "`";
}

}  // namespace

std::string verb_lemma(std::string_view surface) {
  std::string lower = to_lower(surface);
  const auto& table = irregular_verbs();
  if (auto it = table.find(lower); it != table.end()) return it->second;
  return lower;
}

bool is_object_np(const ParseNode& node) {
  if (node.is_preterminal() || category(node.label) != "NP") return false;
  for (std::string_view tag : {"TMP", "ADV", "LOC", "EXT", "MNR", "DIR", "PRP", "PRD", "VOC"}) {
    if (has_function_tag(node.label, tag)) return false;
  }
  return true;
}

bool is_pp(const ParseNode& node) {
  return !node.is_preterminal() && category(node.label) == "PP";
}

bool is_particle(const ParseNode& node) {
  return !node.is_preterminal() && category(node.label).starts_with("PRT");
}

std::vector<ShiftMatch> match_shift_pattern(const ParseNode& tree, ShiftType type) {
  std::vector<ShiftMatch> out;
  collect_matches(tree, tree, type, out);
  return out;
}

bool satisfies_schema(const ShiftMatch& match) {
  if (!match.constituent_a || !match.constituent_b) return false;
  if (match.constituent_a->span.end != match.constituent_b->span.begin) return false;
  return fits_schema(match.shift_type, *match.constituent_a, *match.constituent_b);
}

SentencePair realize_pair(const ShiftMatch& match, std::string id) {
  const Tokens tokens = yield(*match.root);
  const Span span_a = match.constituent_a->span;
  const Span span_b = match.constituent_b->span;
  Tokens first = slice(tokens, span_a);
  Tokens second = slice(tokens, span_b);

  std::vector<Piece> unshifted;
  std::vector<Piece> shifted;
  switch (match.shift_type) {
    case ShiftType::kHnps:
      unshifted = {{"NP", first}, {"PP", second}};
      shifted = {{"PP", second}, {"NP", first}};
      break;
    case ShiftType::kPm: {
      const bool particle_first = is_particle(*match.constituent_a);
      Tokens particle = particle_first ? first : second;
      Tokens object = particle_first ? second : first;
      unshifted = {{"PRT", particle}, {"NP", object}};
      shifted = {{"NP", object}, {"PRT", particle}};
      break;
    }
    case ShiftType::kDa: {
      if (!first.empty() && to_lower(first.front()) == "to") {
        throw QualityError("dative recipient already starts with 'to'");
      }
      Tokens recipient = {"to"};
      recipient.insert(recipient.end(), first.begin(), first.end());
      unshifted = {{"NP1", first}, {"NP2", second}};
      shifted = {{"NP2", second}, {"PP", recipient}};
      break;
    }
    case ShiftType::kMpp:
      unshifted = {{"PP1", first}, {"PP2", second}};
      shifted = {{"PP2", second}, {"PP1", first}};
      break;
  }

  const Tokens prefix = slice(tokens, {0, span_a.begin});
  const Tokens suffix = slice(tokens, {span_b.end, tokens.size()});
  auto build = [&](const std::vector<Piece>& pieces) {
    Tokens all = prefix;
    for (const auto& p : pieces) all.insert(all.end(), p.tokens.begin(), p.tokens.end());
    all.insert(all.end(), suffix.begin(), suffix.end());
    return detokenize(all);
  };

  SentencePair pair;
  pair.id = std::move(id);
  pair.shift_type = match.shift_type;
  pair.unshifted = build(unshifted);
  pair.shifted = build(shifted);
  pair.verb = match.verb_lemma;
  pair.source = PairSource::kMined;
  for (const auto& p : unshifted) pair.constituents.push_back({p.role, detokenize(p.tokens), 0});
  for (const auto& p : shifted) pair.constituents.push_back({p.role, detokenize(p.tokens), 1});
  return pair;
}

void check_quality(const ShiftMatch& match, const QualityFilter& filter) {
  for (const ParseNode* c : {match.constituent_a, match.constituent_b}) {
    if (contains_empty_category(*c)) throw QualityError("constituent contains an empty category");
    const Tokens words = yield(*c);
    if (std::all_of(words.begin(), words.end(), is_quote)) {
      throw QualityError("constituent consists only of quotation marks");
    }
    if (word_tokens(detokenize(words)).size() > filter.max_constituent_words) {
      throw QualityError("constituent longer than " + std::to_string(filter.max_constituent_words) +
                         " words");
    }
  }
  if (filter.verb_allowlist && !filter.verb_allowlist->contains(match.verb_lemma)) {
    throw QualityError("verb '" + match.verb_lemma + "' not in allowlist");
  }
}

std::vector<SentencePair> mine_all(std::span<const ParseNode> treebank, ShiftType type,
                                   const QualityFilter& filter) {
  const auto per_tree = kernels::match_treebank(treebank, type);
  std::vector<SentencePair> pairs;
  for (std::size_t t = 0; t < per_tree.size(); ++t) {
    for (std::size_t m = 0; m < per_tree[t].size(); ++m) {
      const ShiftMatch& match = per_tree[t][m];
      std::string id = to_lower(to_string(type)) + "-mined-" + std::to_string(t) + "-" + std::to_string(m);
      try {
        check_quality(match, filter);
        SentencePair pair = realize_pair(match, std::move(id));
        validate_pair(pair);
        pairs.push_back(std::move(pair));
      } catch (const QualityError&) {
      } catch (const ValidationError&) {
      }
    }
  }
  return pairs;
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t sample_size,
                                        std::uint64_t seed) {
  std::vector<std::size_t> index(population);
  std::iota(index.begin(), index.end(), std::size_t{0});
  if (sample_size >= population) return index;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (population - i));
    std::swap(index[i], index[j]);
  }
  index.resize(sample_size);
  std::sort(index.begin(), index.end());
  return index;
}

std::vector<SentencePair> mine(std::span<const ParseNode> treebank, ShiftType type,
                               std::size_t sample_size, std::uint64_t seed,
                               const QualityFilter& filter) {
  std::vector<SentencePair> all = mine_all(treebank, type, filter);
  std::vector<SentencePair> out;
  for (std::size_t i : sample_indices(all.size(), sample_size, seed)) out.push_back(std::move(all[i]));
  return out;
}

}  // namespace shiftbench
