#include "shiftbench/pair.hpp"

#include <algorithm>
#include <map>

#include "shiftbench/error.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {

std::string_view to_string(ShiftType type) {
  switch (type) {
    case ShiftType::kHnps: return "HNPS";
    case ShiftType::kPm: return "PM";
    case ShiftType::kDa: return "DA";
    case ShiftType::kMpp: return "MPP";
  }
  return "?";
}

ShiftType parse_shift_type(std::string_view text) {
  const std::string lower = to_lower(text);
  for (ShiftType type : kAllShiftTypes) {
    if (to_lower(to_string(type)) == lower) return type;
  }
  throw ValidationError("unknown shift type '" + std::string(text) + "'");
}

std::string_view to_string(PairSource source) {
  return source == PairSource::kSynthetic ? "synthetic" : "mined";
}

const ConstituentSpan& SentencePair::constituent_a() const {
  for (const auto& c : constituents) {
    if (c.order_index == 0) return c;
  }
  throw ValidationError("pair " + id + " has no unshifted constituents");
}

const ConstituentSpan& SentencePair::constituent_b() const {
  bool seen_first = false;
  for (const auto& c : constituents) {
    if (c.order_index != 0) continue;
    if (seen_first) return c;
    seen_first = true;
  }
  throw ValidationError("pair " + id + " has fewer than two unshifted constituents");
}

void validate_pair(const SentencePair& pair) {
  if (pair.unshifted == pair.shifted) {
    throw ValidationError("pair " + pair.id + ": unshifted and shifted texts are identical");
  }
  std::map<std::string, int> balance;
  for (auto& w : word_tokens(pair.unshifted)) ++balance[to_lower(w)];
  for (auto& w : word_tokens(pair.shifted)) --balance[to_lower(w)];
  for (const auto& [word, count] : balance) {
    if (count == 0) continue;
    if (pair.shift_type == ShiftType::kDa && word == "to" && count == -1) continue;
    throw ValidationError("pair " + pair.id + ": word multisets differ on '" + word + "'");
  }
  if (pair.shift_type == ShiftType::kDa && balance["to"] != -1) {
    throw ValidationError("pair " + pair.id + ": dative rewrite must insert exactly one 'to'");
  }
}

SentencePair swapped(const SentencePair& pair) {
  SentencePair out = pair;
  std::swap(out.unshifted, out.shifted);
  for (auto& c : out.constituents) c.order_index = 1 - c.order_index;
  std::stable_sort(out.constituents.begin(), out.constituents.end(),
                   [](const auto& x, const auto& y) { return x.order_index < y.order_index; });
  return out;
}

nlohmann::ordered_json to_json(const SentencePair& pair) {
  nlohmann::ordered_json out;
  out["id"] = pair.id;
  out["shift_type"] = to_string(pair.shift_type);
  out["unshifted"] = pair.unshifted;
  out["shifted"] = pair.shifted;
  out["verb"] = pair.verb;
  out["source"] = to_string(pair.source);
  auto constituents = nlohmann::ordered_json::array();
  for (const auto& c : pair.constituents) {
    constituents.push_back({{"role", c.role}, {"text", c.text}, {"order_index", c.order_index}});
  }
  out["constituents"] = std::move(constituents);
  if (pair.synthetic) {
    const auto& s = *pair.synthetic;
    out["frame_id"] = s.frame_id;
    out["level_a"] = s.level_a;
    out["level_b"] = s.level_b;
    out["modifier_weight_a"] = s.modifier_weight_a();
    out["modifier_weight_b"] = s.modifier_weight_b();
  }
  return out;
}

SentencePair pair_from_json(const nlohmann::json& record) {
  try {
    SentencePair pair;
    pair.id = record.at("id").get<std::string>();
    pair.shift_type = parse_shift_type(record.at("shift_type").get<std::string>());
    pair.unshifted = record.at("unshifted").get<std::string>();
    pair.shifted = record.at("shifted").get<std::string>();
    pair.verb = record.at("verb").get<std::string>();
    const auto source = record.at("source").get<std::string>();
    if (source == "synthetic") {
      pair.source = PairSource::kSynthetic;
    } else if (source == "mined") {
      pair.source = PairSource::kMined;
    } else {
      throw ValidationError("unknown pair source '" + source + "'");
    }
    for (const auto& c : record.at("constituents")) {
      pair.constituents.push_back({c.at("role").get<std::string>(), c.at("text").get<std::string>(),
                                   c.at("order_index").get<int>()});
    }
    if (record.contains("frame_id")) {
      pair.synthetic = SyntheticInfo{record.at("frame_id").get<std::string>(),
                                     record.at("level_a").get<int>(), record.at("level_b").get<int>()};
    }
    return pair;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed pair record: ") + e.what());
  }
}

}  // namespace shiftbench
