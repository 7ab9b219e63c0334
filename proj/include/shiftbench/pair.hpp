#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace shiftbench {

enum class ShiftType { kHnps, kPm, kDa, kMpp };

inline constexpr std::array<ShiftType, 4> kAllShiftTypes = {ShiftType::kHnps, ShiftType::kPm,
                                                             ShiftType::kDa, ShiftType::kMpp};

// "HNPS", "PM", "DA", "MPP".
std::string_view to_string(ShiftType type);
// Case-insensitive inverse of to_string; throws ValidationError.
ShiftType parse_shift_type(std::string_view text);

enum class PairSource { kSynthetic, kMined };

std::string_view to_string(PairSource source);

// One constituent as it appears in one of the two orders. order_index 0 is the
// unshifted sentence, 1 the shifted one; within an order, entries are listed
// in surface order.
struct ConstituentSpan {
  std::string role;
  std::string text;
  int order_index = 0;

  bool operator==(const ConstituentSpan&) const = default;
};

struct SyntheticInfo {
  std::string frame_id;
  int level_a = 0;
  int level_b = 0;

  int modifier_weight_a() const { return level_a + 1; }
  int modifier_weight_b() const { return level_b + 1; }
  bool operator==(const SyntheticInfo&) const = default;
};

struct SentencePair {
  std::string id;
  ShiftType shift_type = ShiftType::kHnps;
  std::string unshifted;
  std::string shifted;
  std::string verb;
  PairSource source = PairSource::kMined;
  std::vector<ConstituentSpan> constituents;
  std::optional<SyntheticInfo> synthetic;

  // The two constituents of the unshifted order, in surface order.
  const ConstituentSpan& constituent_a() const;
  const ConstituentSpan& constituent_b() const;

  bool operator==(const SentencePair&) const = default;
};

// Throws ValidationError when the texts are equal or the word multisets differ
// by anything other than the single "to" that the dative rewrite inserts.
void validate_pair(const SentencePair& pair);

// Swaps the two orders; used to probe antisymmetry.
SentencePair swapped(const SentencePair& pair);

nlohmann::ordered_json to_json(const SentencePair& pair);
SentencePair pair_from_json(const nlohmann::json& record);

}  // namespace shiftbench
