#include "shiftbench/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <random>

#include "shiftbench/error.hpp"
#include "shiftbench/jsonl.hpp"

namespace shiftbench {
namespace {

constexpr const char* kAssignmentsFile = "assignments.jsonl";
constexpr const char* kJudgmentsFile = "judgments.jsonl";

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

template <class T>
T field(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

SentencePair attention_pair(int n, std::string natural, std::string scrambled) {
  SentencePair pair;
  pair.id = "attn-" + std::to_string(n);
  pair.unshifted = std::move(natural);
  pair.shifted = std::move(scrambled);
  return pair;
}

}  // namespace

std::string_view to_string(PresentationOrder order) {
  return order == PresentationOrder::kUnshiftedFirst ? "unshifted_first" : "shifted_first";
}

PresentationOrder parse_presentation_order(std::string_view text) {
  if (text == "unshifted_first") return PresentationOrder::kUnshiftedFirst;
  if (text == "shifted_first") return PresentationOrder::kShiftedFirst;
  throw ValidationError("unknown presentation order '" + std::string(text) + "'");
}

int recode(int rating, PresentationOrder order) {
  if (rating < 1 || rating > 7) throw ValidationError("rating " + std::to_string(rating) + " is outside 1..7");
  return order == PresentationOrder::kShiftedFirst ? 8 - rating : rating;
}

nlohmann::ordered_json to_json(const AssignmentItem& item) {
  return {{"pair_id", item.pair_id},
          {"presentation_order", to_string(item.presentation_order)},
          {"is_attention_check", item.is_attention_check},
          {"sentence_a", item.sentence_a},
          {"sentence_b", item.sentence_b}};
}

nlohmann::ordered_json to_json(const Assignment& assignment) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& item : assignment.items) items.push_back(to_json(item));
  return {{"participant_id", assignment.participant_id}, {"items", items}, {"issued_at", assignment.issued_at}};
}

nlohmann::ordered_json to_json(const JudgmentRecord& r) {
  return {{"participant_id", r.participant_id},
          {"pair_id", r.pair_id},
          {"presentation_order", to_string(r.presentation_order)},
          {"rating", r.rating},
          {"response_time_ms", r.response_time_ms},
          {"submitted_at", r.submitted_at}};
}

nlohmann::ordered_json to_json(const AggregateJudgment& a) {
  return {{"pair_id", a.pair_id}, {"n", a.n},           {"mean", a.mean},
          {"stddev", a.stddev},   {"excluded", a.excluded}, {"reason", a.reason}};
}

Assignment assignment_from_json(const nlohmann::json& doc) {
  Assignment a;
  a.participant_id = field<std::string>(doc, "participant_id");
  a.issued_at = field<std::string>(doc, "issued_at");
  for (const auto& item : field<nlohmann::json>(doc, "items")) {
    AssignmentItem i;
    i.pair_id = field<std::string>(item, "pair_id");
    i.presentation_order = parse_presentation_order(field<std::string>(item, "presentation_order"));
    i.is_attention_check = field<bool>(item, "is_attention_check");
    i.sentence_a = field<std::string>(item, "sentence_a");
    i.sentence_b = field<std::string>(item, "sentence_b");
    a.items.push_back(std::move(i));
  }
  return a;
}

JudgmentRecord judgment_from_json(const nlohmann::json& doc) {
  JudgmentRecord r;
  r.participant_id = field<std::string>(doc, "participant_id");
  r.pair_id = field<std::string>(doc, "pair_id");
  r.presentation_order = parse_presentation_order(field<std::string>(doc, "presentation_order"));
  if (!doc.contains("rating") || !doc["rating"].is_number_integer()) {
    throw ValidationError("field 'rating' must be an integer");
  }
  r.rating = doc["rating"].get<int>();
  if (r.rating < 1 || r.rating > 7) throw ValidationError("rating " + std::to_string(r.rating) + " is outside 1..7");
  r.response_time_ms = doc.contains("response_time_ms") ? field<std::int64_t>(doc, "response_time_ms") : 0;
  r.submitted_at = doc.contains("submitted_at") ? field<std::string>(doc, "submitted_at") : "";
  return r;
}

AggregateJudgment aggregate_from_json(const nlohmann::json& doc) {
  AggregateJudgment a;
  a.pair_id = field<std::string>(doc, "pair_id");
  a.n = field<std::size_t>(doc, "n");
  a.mean = field<double>(doc, "mean");
  a.stddev = field<double>(doc, "stddev");
  a.excluded = field<bool>(doc, "excluded");
  a.reason = field<std::string>(doc, "reason");
  return a;
}

std::vector<AggregateJudgment> aggregate(std::span<const JudgmentRecord> log,
                                         const std::set<std::string>& attention_ids,
                                         const ExclusionConfig& config) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> checks;  // failed, total
  for (const auto& r : log) {
    if (!attention_ids.contains(r.pair_id)) continue;
    auto& [failed, total] = checks[r.participant_id];
    ++total;
    if (recode(r.rating, r.presentation_order) > config.check_pass_max) ++failed;
  }
  std::set<std::string> dropped;
  for (const auto& [participant, counts] : checks) {
    const double fraction = static_cast<double>(counts.first) / static_cast<double>(counts.second);
    if (fraction > config.max_failed_check_fraction) dropped.insert(participant);
  }

  std::map<std::string, std::vector<double>> ratings;
  for (const auto& r : log) {
    if (attention_ids.contains(r.pair_id) || dropped.contains(r.participant_id)) continue;
    ratings[r.pair_id].push_back(recode(r.rating, r.presentation_order));
  }

  std::vector<AggregateJudgment> out;
  for (const auto& [pair_id, values] : ratings) {
    AggregateJudgment a;
    a.pair_id = pair_id;
    a.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / static_cast<double>(a.n);
    if (a.n > 1) {
      double squares = 0.0;
      for (double v : values) squares += (v - a.mean) * (v - a.mean);
      a.stddev = std::sqrt(squares / static_cast<double>(a.n - 1));
    }
    if (a.n < config.min_quorum) {
      a.excluded = true;
      a.reason = "below quorum";
    } else if (a.stddev > config.max_stddev) {
      a.excluded = true;
      a.reason = "stddev above threshold";
    }
    out.push_back(std::move(a));
  }
  return out;
}

const std::vector<SentencePair>& attention_catalogue() {
  static const std::vector<SentencePair> catalogue = {
      attention_pair(1, "The children played in the garden after lunch.",
                     "Garden the after children lunch in played the."),
      attention_pair(2, "She poured a cup of tea for her guest.", "Tea guest cup her she of poured for a."),
      attention_pair(3, "We walked to the station in the rain.", "Rain station the walked in to we the."),
      attention_pair(4, "He fixed the old bicycle last weekend.", "Bicycle weekend he old the last fixed."),
      attention_pair(5, "They opened the windows to let in fresh air.",
                     "Windows let fresh the opened in they air to."),
      attention_pair(6, "My neighbor bakes bread every morning.", "Every bread neighbor morning bakes my."),
  };
  return catalogue;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

StudyStore::StudyStore(std::vector<SentencePair> pool, std::optional<std::filesystem::path> data_dir,
                       StudyConfig config)
    : pool_(std::move(pool)), data_dir_(std::move(data_dir)), config_(std::move(config)) {
  if (!config_.clock) config_.clock = utc_timestamp;
  if (config_.attention_checks > attention_catalogue().size()) {
    throw ValidationError("at most " + std::to_string(attention_catalogue().size()) + " attention checks are available");
  }
  std::set<std::string> seen;
  for (const auto& pair : pool_) {
    if (!seen.insert(pair.id).second) throw ValidationError("duplicate pair id '" + pair.id + "' in pool");
    issued_[pair.id] = 0;
  }
  for (const auto& check : attention_catalogue()) attention_ids_.insert(check.id);
  if (!data_dir_) return;
  std::filesystem::create_directories(*data_dir_);
  const auto assignments_path = *data_dir_ / kAssignmentsFile;
  if (std::filesystem::exists(assignments_path)) {
    for (const auto& doc : read_jsonl_file(assignments_path)) apply_assignment(assignment_from_json(doc));
  }
  const auto judgments_path = *data_dir_ / kJudgmentsFile;
  if (std::filesystem::exists(judgments_path)) {
    for (const auto& doc : read_jsonl_file(judgments_path)) {
      JudgmentRecord r = judgment_from_json(doc);
      judged_.emplace(r.participant_id, r.pair_id);
      judgments_.push_back(std::move(r));
    }
  }
}

void StudyStore::apply_assignment(const Assignment& assignment) {
  for (const auto& item : assignment.items) {
    if (auto it = issued_.find(item.pair_id); it != issued_.end() && !item.is_attention_check) ++it->second;
  }
  assignments_[assignment.participant_id] = assignment;
}

void StudyStore::append_line(const std::string& file, const std::string& line) {
  if (!data_dir_) return;
  std::ofstream out(*data_dir_ / file, std::ios::app | std::ios::binary);
  out << line << '\n';
  if (!out.flush()) throw ValidationError("cannot append to " + (*data_dir_ / file).string());
}

Assignment StudyStore::create_assignment(const std::string& participant_id) {
  if (participant_id.empty()) throw ValidationError("participant id must not be empty");
  std::unique_lock lock(mutex_);
  if (assignments_.contains(participant_id)) {
    throw ConflictError("participant '" + participant_id + "' already has an assignment");
  }
  std::vector<const SentencePair*> open;
  for (const auto& pair : pool_) {
    if (issued_.at(pair.id) < config_.max_assignments_per_pair) open.push_back(&pair);
  }
  if (open.size() < config_.items_per_assignment) {
    throw ExhaustedError("pool has " + std::to_string(open.size()) + " open pairs; " +
                         std::to_string(config_.items_per_assignment) + " are needed");
  }

  std::mt19937_64 rng(config_.seed ^ fnv1a(participant_id));
  std::shuffle(open.begin(), open.end(), rng);
  std::stable_sort(open.begin(), open.end(),
                   [&](const SentencePair* a, const SentencePair* b) { return issued_.at(a->id) < issued_.at(b->id); });
  open.resize(config_.items_per_assignment);

  std::vector<const SentencePair*> checks;
  for (const auto& c : attention_catalogue()) checks.push_back(&c);
  std::shuffle(checks.begin(), checks.end(), rng);
  checks.resize(config_.attention_checks);

  std::vector<std::pair<const SentencePair*, bool>> ordered;
  for (const auto* p : open) ordered.emplace_back(p, false);
  for (const auto* c : checks) {
    std::uniform_int_distribution<std::size_t> at(0, ordered.size());
    ordered.insert(ordered.begin() + static_cast<std::ptrdiff_t>(at(rng)), {c, true});
  }

  Assignment assignment;
  assignment.participant_id = participant_id;
  assignment.issued_at = config_.clock();
  std::bernoulli_distribution coin(0.5);
  for (const auto& [pair, is_check] : ordered) {
    AssignmentItem item;
    item.pair_id = pair->id;
    item.is_attention_check = is_check;
    item.presentation_order = coin(rng) ? PresentationOrder::kShiftedFirst : PresentationOrder::kUnshiftedFirst;
    const bool unshifted_first = item.presentation_order == PresentationOrder::kUnshiftedFirst;
    item.sentence_a = unshifted_first ? pair->unshifted : pair->shifted;
    item.sentence_b = unshifted_first ? pair->shifted : pair->unshifted;
    assignment.items.push_back(std::move(item));
  }
  append_line(kAssignmentsFile, to_json(assignment).dump());
  apply_assignment(assignment);
  return assignment;
}

void StudyStore::submit(JudgmentRecord record) {
  if (record.rating < 1 || record.rating > 7) {
    throw ValidationError("rating " + std::to_string(record.rating) + " is outside 1..7");
  }
  std::unique_lock lock(mutex_);
  const auto it = assignments_.find(record.participant_id);
  if (it == assignments_.end()) throw NotFoundError("no assignment for participant '" + record.participant_id + "'");
  const auto item = std::find_if(it->second.items.begin(), it->second.items.end(),
                                 [&](const AssignmentItem& i) { return i.pair_id == record.pair_id; });
  if (item == it->second.items.end()) {
    throw NotFoundError("pair '" + record.pair_id + "' was not issued to '" + record.participant_id + "'");
  }
  if (item->presentation_order != record.presentation_order) {
    throw ValidationError("presentation order does not match the issued item");
  }
  if (judged_.contains({record.participant_id, record.pair_id})) {
    throw ConflictError("judgment for ('" + record.participant_id + "', '" + record.pair_id + "') already recorded");
  }
  if (record.submitted_at.empty()) record.submitted_at = config_.clock();
  append_line(kJudgmentsFile, to_json(record).dump());
  judged_.emplace(record.participant_id, record.pair_id);
  judgments_.push_back(std::move(record));
}

std::vector<JudgmentRecord> StudyStore::judgments() const {
  std::shared_lock lock(mutex_);
  return judgments_;
}

std::vector<AggregateJudgment> StudyStore::aggregates() const {
  std::shared_lock lock(mutex_);
  return aggregate(judgments_, attention_ids_, config_.exclusion);
}

std::optional<Assignment> StudyStore::assignment_for(const std::string& participant_id) const {
  std::shared_lock lock(mutex_);
  if (auto it = assignments_.find(participant_id); it != assignments_.end()) return it->second;
  return std::nullopt;
}

std::map<std::string, std::size_t> StudyStore::coverage() const {
  std::shared_lock lock(mutex_);
  return issued_;
}

}  // namespace shiftbench
