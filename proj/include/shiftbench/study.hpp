#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "shiftbench/pair.hpp"

namespace shiftbench {

enum class PresentationOrder { kUnshiftedFirst, kShiftedFirst };

std::string_view to_string(PresentationOrder order);
PresentationOrder parse_presentation_order(std::string_view text);

// Ratings run 1 (first sentence far more natural) to 7 (second far more
// natural). Recoding maps them onto the unshifted-first scale; it is an
// involution for a fixed order.
int recode(int rating, PresentationOrder order);

struct AssignmentItem {
  std::string pair_id;
  PresentationOrder presentation_order = PresentationOrder::kUnshiftedFirst;
  bool is_attention_check = false;
  std::string sentence_a;
  std::string sentence_b;

  bool operator==(const AssignmentItem&) const = default;
};

struct Assignment {
  std::string participant_id;
  std::vector<AssignmentItem> items;
  std::string issued_at;

  bool operator==(const Assignment&) const = default;
};

struct JudgmentRecord {
  std::string participant_id;
  std::string pair_id;
  PresentationOrder presentation_order = PresentationOrder::kUnshiftedFirst;
  int rating = 0;
  std::int64_t response_time_ms = 0;
  std::string submitted_at;

  bool operator==(const JudgmentRecord&) const = default;
};

struct AggregateJudgment {
  std::string pair_id;
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  bool excluded = false;
  std::string reason;

  bool operator==(const AggregateJudgment&) const = default;
};

nlohmann::ordered_json to_json(const AssignmentItem& item);
nlohmann::ordered_json to_json(const Assignment& assignment);
nlohmann::ordered_json to_json(const JudgmentRecord& record);
nlohmann::ordered_json to_json(const AggregateJudgment& aggregate);
Assignment assignment_from_json(const nlohmann::json& doc);
// Throws ValidationError on missing fields, wrong types or a rating outside 1..7.
JudgmentRecord judgment_from_json(const nlohmann::json& doc);
AggregateJudgment aggregate_from_json(const nlohmann::json& doc);

struct ExclusionConfig {
  // Pairs whose sample standard deviation exceeds this are excluded.
  double max_stddev = 1.5;
  std::size_t min_quorum = 3;
  // Participants failing more than this fraction of their checks are dropped.
  double max_failed_check_fraction = 0.5;
  // A check passes when its recoded rating is at most this value.
  int check_pass_max = 3;
};

// Pure fold over the judgment log. Attention-check items are used only to
// drop participants and never appear in the output, which is sorted by pair id.
std::vector<AggregateJudgment> aggregate(std::span<const JudgmentRecord> log,
                                         const std::set<std::string>& attention_ids,
                                         const ExclusionConfig& config = {});

// Pairs whose second sentence is a word scramble of the first, so the first
// is the uncontroversially natural one. Ids are "attn-<n>".
const std::vector<SentencePair>& attention_catalogue();

struct StudyConfig {
  std::size_t items_per_assignment = 25;
  std::size_t attention_checks = 2;
  // Assignments a pair may appear in before it counts as exhausted.
  std::size_t max_assignments_per_pair = 8;
  std::uint64_t seed = 20240601;
  ExclusionConfig exclusion;
  // Timestamp source; defaults to UTC ISO-8601 wall time.
  std::function<std::string()> clock;
};

std::string utc_timestamp();

// Assignment and judgment state, persisted as append-only JSON Lines files
// (assignments.jsonl, judgments.jsonl) under data_dir and replayed on
// construction. Writers take an exclusive lock; readers a shared one.
class StudyStore {
 public:
  StudyStore(std::vector<SentencePair> pool, std::optional<std::filesystem::path> data_dir,
             StudyConfig config = {});

  // Throws ConflictError for a participant that already has an assignment and
  // ExhaustedError when fewer than items_per_assignment pairs remain.
  Assignment create_assignment(const std::string& participant_id);

  // Throws ValidationError for a bad rating or presentation order,
  // NotFoundError when the item was never issued to the participant and
  // ConflictError on a repeated (participant, pair).
  void submit(JudgmentRecord record);

  std::vector<JudgmentRecord> judgments() const;
  std::vector<AggregateJudgment> aggregates() const;
  std::optional<Assignment> assignment_for(const std::string& participant_id) const;
  // Issued count per pool pair id.
  std::map<std::string, std::size_t> coverage() const;
  std::size_t pool_size() const { return pool_.size(); }

 private:
  void apply_assignment(const Assignment& assignment);
  void append_line(const std::string& file, const std::string& line);

  std::vector<SentencePair> pool_;
  std::optional<std::filesystem::path> data_dir_;
  StudyConfig config_;
  std::set<std::string> attention_ids_;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::size_t> issued_;
  std::map<std::string, Assignment> assignments_;
  std::vector<JudgmentRecord> judgments_;
  std::set<std::pair<std::string, std::string>> judged_;
};

}  // namespace shiftbench
