#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shiftbench/curve.hpp"
#include "shiftbench/gam.hpp"
#include "shiftbench/scoring.hpp"
#include "shiftbench/stats.hpp"
#include "shiftbench/study.hpp"
#include "shiftbench/weights.hpp"

namespace shiftbench {

// Preference records joined with their pairs' ratios, for one backend and
// shift type. Row predictors are keyed by ratio name ("word", "syllable",
// "modifier", "token:<backend id>").
struct AnalysisGroup {
  std::string backend_id;
  ShiftType shift_type = ShiftType::kHnps;
  std::vector<AnalysisRow> rows;
  bool mined = false;
};

// Groups are ordered by (backend id, shift type). Throws ValidationError for
// a preference whose pair is missing from `pairs`.
std::vector<AnalysisGroup> join_for_analysis(std::span<const WeightedPair> pairs,
                                             std::span<const PreferenceRecord> preferences);

// Maps short predictor names onto ratio keys; "token" becomes
// "token:<backend id>". An empty request selects token, word, syllable and,
// when every row carries it, modifier. Unavailable predictors are errors.
std::vector<std::string> resolve_predictors(const AnalysisGroup& group, std::span<const std::string> requested);

// "token:<id>" is displayed as "token".
std::string display_name(const std::string& predictor_key);

std::string ablation_tsv(const AblationRow& row, std::size_t n);
std::string curve_tsv(const AnalysisGroup& group, std::span<const std::string> predictors, int bins);

struct CorrelationRow {
  std::string backend_id;
  std::string shift_type;  // "ALL" pools every shift type
  std::size_t n = 0;
  std::optional<SpearmanResult> result;
  std::string error;
};

// Joins included aggregates with preferences by pair id. The shift type of
// each pair comes from its id prefix when `pairs` lacks it.
std::vector<CorrelationRow> correlate(std::span<const PreferenceRecord> preferences,
                                      std::span<const AggregateJudgment> aggregates,
                                      std::span<const SentencePair> pairs);
std::string correlation_tsv(std::span<const CorrelationRow> rows);

// Filesystem-safe rendering of a backend id.
std::string file_stem(std::string_view text);

}  // namespace shiftbench
