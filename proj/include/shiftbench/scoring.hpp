#pragma once

#include <string>

#include "json.hpp"
#include "shiftbench/backend.hpp"
#include "shiftbench/pair.hpp"

namespace shiftbench {

// m_preference > 0 means the backend prefers the unshifted order.
struct PreferenceRecord {
  std::string pair_id;
  std::string backend_id;
  double m_score_unshifted = 0.0;
  double m_score_shifted = 0.0;
  double m_preference = 0.0;

  bool operator==(const PreferenceRecord&) const = default;
};

ScoredSequence score_sequence(const Backend& backend, std::string_view text);

// Scores both orders; any scoring error propagates and no record is produced.
PreferenceRecord preference(const Backend& backend, const SentencePair& pair);

nlohmann::ordered_json to_json(const PreferenceRecord& record);
PreferenceRecord preference_from_json(const nlohmann::json& record);

}  // namespace shiftbench
