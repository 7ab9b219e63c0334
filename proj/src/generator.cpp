#include "shiftbench/generator.hpp"

#include <set>

#include "json.hpp"
#include "shiftbench/error.hpp"
#include "shiftbench/shift.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {
namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) throw ValidationError(where + ": expected a non-empty list");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw ValidationError(where + ": entries must be non-empty strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool same_modifier(const Modifier& x, const Modifier& y) {
  return x.text == y.text && x.category == y.category;
}

ShiftLexicon parse_section(const json& node, const std::string& name) {
  if (!node.is_object()) throw ValidationError(name + ": section must be an object");
  for (const char* key : {"frames", "subjects", "verbs", "constituents"}) {
    if (!node.contains(key)) throw ValidationError(name + ": missing '" + key + "'");
  }
  ShiftLexicon section;
  section.subjects = string_list(node["subjects"], name + ".subjects");
  section.verbs = string_list(node["verbs"], name + ".verbs");

  const json& constituents = node["constituents"];
  if (!constituents.is_object() || constituents.empty()) {
    throw ValidationError(name + ".constituents: expected a non-empty object");
  }
  for (const auto& [role, bases] : constituents.items()) {
    const std::string where = name + ".constituents." + role;
    if (!bases.is_array() || bases.empty()) throw ValidationError(where + ": expected a non-empty list");
    for (const auto& b : bases) {
      if (!b.is_object() || !b.contains("head") || !b["head"].is_string() ||
          b["head"].get<std::string>().empty()) {
        throw ValidationError(where + ": every base needs a non-empty 'head'");
      }
      section.constituents[role].push_back({b.value("pre", ""), b["head"].get<std::string>()});
    }
  }

  const json& frames = node["frames"];
  if (!frames.is_array() || frames.empty()) throw ValidationError(name + ".frames: empty frame list");
  std::set<std::string> frame_ids;
  for (const auto& f : frames) {
    if (!f.is_object() || !f.contains("id") || !f.contains("roles")) {
      throw ValidationError(name + ".frames: every frame needs 'id' and 'roles'");
    }
    Frame frame;
    frame.id = f["id"].get<std::string>();
    const std::string where = name + ".frames." + frame.id;
    if (!frame_ids.insert(frame.id).second) throw ValidationError(where + ": duplicate frame id");
    const json& roles = f["roles"];
    if (!roles.is_array() || roles.size() != 2) throw ValidationError(where + ": expected exactly two roles");
    frame.role_a = roles[0].get<std::string>();
    frame.role_b = roles[1].get<std::string>();
    for (const auto& role : {frame.role_a, frame.role_b}) {
      if (!section.constituents.contains(role)) {
        throw ValidationError(where + ": unknown role '" + role + "'");
      }
    }
    frame.adjunct = f.value("adjunct", "");
    section.frames.push_back(std::move(frame));
  }

  if (node.contains("modifier_chains")) {
    for (const auto& [role, levels] : node["modifier_chains"].items()) {
      const std::string where = name + ".modifier_chains." + role;
      if (!section.constituents.contains(role)) {
        throw ValidationError(where + ": unknown role '" + role + "'");
      }
      if (!levels.is_array() || levels.empty()) throw ValidationError(where + ": expected a list of levels");
      auto& chain = section.modifier_chains[role];
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        if (!levels[k].is_array()) throw ValidationError(at + ": level must be a list");
        std::vector<Modifier> level;
        for (const auto& m : levels[k]) {
          const std::string category = m.value("category", "");
          if (category != "AdjP" && category != "PP") {
            throw ValidationError(at + ": modifier category must be AdjP or PP");
          }
          level.push_back({m.value("text", ""), category == "AdjP" ? ModifierCategory::kAdjP
                                                                     : ModifierCategory::kPP});
          if (level.back().text.empty()) throw ValidationError(at + ": empty modifier text");
        }
        if (level.size() != k) {
          throw ValidationError(at + ": non-cumulative chain, level " + std::to_string(k) + " has " +
                                std::to_string(level.size()) + " modifiers");
        }
        if (k > 0) {
          const auto& prev = chain.back();
          for (std::size_t i = 0; i < prev.size(); ++i) {
            if (!same_modifier(prev[i], level[i])) {
              throw ValidationError(at + ": non-cumulative chain, level does not extend level " +
                                    std::to_string(k - 1));
            }
          }
        }
        chain.push_back(std::move(level));
      }
    }
  }
  return section;
}

int chain_levels(const ShiftLexicon& section, const std::string& role) {
  auto it = section.modifier_chains.find(role);
  return it == section.modifier_chains.end() ? 1 : static_cast<int>(it->second.size());
}

const ShiftLexicon& section_for(const Lexicon& lexicon, ShiftType type) {
  auto it = lexicon.sections.find(type);
  if (it == lexicon.sections.end()) {
    throw ValidationError("lexicon has no section for " + std::string(to_string(type)));
  }
  return it->second;
}

void check_plan(const ShiftLexicon& section, const GenerationPlan& plan) {
  if (plan.max_level_a < 0 || plan.max_level_b < 0) throw ValidationError("plan: negative maximum level");
  if ((plan.shift_type == ShiftType::kDa || plan.shift_type == ShiftType::kMpp) &&
      !(plan.grade_a && plan.grade_b)) {
    throw ValidationError("plan: DA and MPP grade both constituents");
  }
  for (const auto& frame : section.frames) {
    if (plan.max_level_a >= chain_levels(section, frame.role_a) ||
        plan.max_level_b >= chain_levels(section, frame.role_b)) {
      throw ValidationError("plan: maximum level exceeds the modifier chain of frame " + frame.id);
    }
  }
  if ((!plan.grade_a && plan.max_level_a != 0) || (!plan.grade_b && plan.max_level_b != 0)) {
    throw ValidationError("plan: ungraded constituent with a non-zero level");
  }
}

std::string join_words(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

Lexicon load_lexicon(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("lexicon must be a JSON object");
  Lexicon lexicon;
  for (const auto& [key, value] : doc.items()) {
    const ShiftType type = parse_shift_type(key);
    try {
      lexicon.sections.emplace(type, parse_section(value, key));
    } catch (const json::exception& e) {
      throw ValidationError(key + ": " + e.what());
    }
  }
  if (lexicon.sections.empty()) throw ValidationError("lexicon has no shift sections");
  return lexicon;
}

Lexicon default_lexicon() { return load_lexicon(default_lexicon_json()); }

GenerationPlan default_plan(const Lexicon& lexicon, ShiftType type) {
  const ShiftLexicon& section = section_for(lexicon, type);
  GenerationPlan plan;
  plan.shift_type = type;
  int levels_a = 1 << 20;
  int levels_b = 1 << 20;
  for (const auto& frame : section.frames) {
    levels_a = std::min(levels_a, chain_levels(section, frame.role_a));
    levels_b = std::min(levels_b, chain_levels(section, frame.role_b));
  }
  switch (type) {
    case ShiftType::kHnps: plan.grade_a = true; break;
    case ShiftType::kPm: plan.grade_b = true; break;
    case ShiftType::kDa:
    case ShiftType::kMpp: plan.grade_a = plan.grade_b = true; break;
  }
  plan.max_level_a = plan.grade_a ? levels_a - 1 : 0;
  plan.max_level_b = plan.grade_b ? levels_b - 1 : 0;
  return plan;
}

std::string realize_constituent(const BaseConstituent& base, std::span<const Modifier> modifiers) {
  std::string adjectives;
  std::string trailing;
  for (const auto& m : modifiers) {
    std::string& target = m.category == ModifierCategory::kAdjP ? adjectives : trailing;
    if (!target.empty()) target += ' ';
    target += m.text;
  }
  return join_words({base.pre, adjectives, base.head, trailing});
}

std::size_t expansion_size(const Lexicon& lexicon, const GenerationPlan& plan) {
  const ShiftLexicon& section = section_for(lexicon, plan.shift_type);
  std::size_t total = 0;
  for (const auto& frame : section.frames) {
    total += section.subjects.size() * section.verbs.size() *
             section.constituents.at(frame.role_a).size() * section.constituents.at(frame.role_b).size() *
             static_cast<std::size_t>(plan.max_level_a + 1) * static_cast<std::size_t>(plan.max_level_b + 1);
  }
  return total;
}

std::vector<SentencePair> expand(const Lexicon& lexicon, const GenerationPlan& plan) {
  const ShiftLexicon& section = section_for(lexicon, plan.shift_type);
  check_plan(section, plan);
  const std::string prefix = to_lower(to_string(plan.shift_type)) + "-syn-";
  const std::vector<Modifier> no_modifiers;
  auto level_modifiers = [&](const std::string& role, int level) -> std::span<const Modifier> {
    auto it = section.modifier_chains.find(role);
    if (it == section.modifier_chains.end()) return no_modifiers;
    return it->second[static_cast<std::size_t>(level)];
  };

  std::vector<SentencePair> out;
  out.reserve(expansion_size(lexicon, plan));
  for (const auto& frame : section.frames) {
    const auto& bases_a = section.constituents.at(frame.role_a);
    const auto& bases_b = section.constituents.at(frame.role_b);
    for (std::size_t s = 0; s < section.subjects.size(); ++s) {
      for (std::size_t v = 0; v < section.verbs.size(); ++v) {
        for (std::size_t ba = 0; ba < bases_a.size(); ++ba) {
          for (std::size_t bb = 0; bb < bases_b.size(); ++bb) {
            for (int la = 0; la <= plan.max_level_a; ++la) {
              for (int lb = 0; lb <= plan.max_level_b; ++lb) {
                const std::string a = realize_constituent(bases_a[ba], level_modifiers(frame.role_a, la));
                const std::string b = realize_constituent(bases_b[bb], level_modifiers(frame.role_b, lb));
                std::string shifted_second = b;
                std::string shifted_first_role = frame.role_b;
                std::string moved = a;
                std::string moved_role = frame.role_a;
                if (plan.shift_type == ShiftType::kDa) {
                  moved = "to " + a;
                  moved_role = "PP";
                }
                const std::string& subject = section.subjects[s];
                const std::string& verb = section.verbs[v];

                SentencePair pair;
                pair.id = prefix + frame.id + "-s" + std::to_string(s) + "-v" + std::to_string(v) + "-a" +
                          std::to_string(ba) + "-b" + std::to_string(bb) + "-l" + std::to_string(la) +
                          "-" + std::to_string(lb);
                pair.shift_type = plan.shift_type;
                pair.unshifted = join_words({subject, verb, a, b, frame.adjunct}) + ".";
                pair.shifted = join_words({subject, verb, shifted_second, moved, frame.adjunct}) + ".";
                pair.verb = verb_lemma(verb);
                pair.source = PairSource::kSynthetic;
                pair.constituents = {{frame.role_a, a, 0},
                                     {frame.role_b, b, 0},
                                     {shifted_first_role, shifted_second, 1},
                                     {moved_role, moved, 1}};
                pair.synthetic = SyntheticInfo{frame.id, la, lb};
                out.push_back(std::move(pair));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

Census dataset_census(std::span<const SentencePair> pairs) {
  Census census;
  for (ShiftType type : kAllShiftTypes) census.per_shift[type] = 0;
  for (const auto& pair : pairs) {
    ++census.per_shift[pair.shift_type];
    if (pair.synthetic) {
      ++census.per_level[{pair.shift_type, pair.synthetic->level_a, pair.synthetic->level_b}];
    }
  }
  return census;
}

}  // namespace shiftbench
