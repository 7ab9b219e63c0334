#include "shiftbench/replay_backend.hpp"

#include <algorithm>
#include <fstream>

#include "shiftbench/error.hpp"

namespace shiftbench {

ReplayBackend ReplayBackend::load(std::istream& in) {
  ReplayBackend replay;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto id = j.at("backend_id").get<std::string>();
      const bool bos = j.value("bos_included", false);
      if (first) {
        replay.backend_id_ = id;
        replay.includes_bos_ = bos;
        first = false;
      } else if (id != replay.backend_id_ || bos != replay.includes_bos_) {
        throw ValidationError("replay fixture line " + std::to_string(line_no) + " mixes backends");
      }
      auto scored = make_scored(j.at("text").get<std::string>(), j.at("tokens").get<std::vector<std::string>>(),
                                j.at("logprobs").get<std::vector<double>>());
      replay.records_.insert_or_assign(scored.text, std::move(scored));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("replay fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (first) throw ValidationError("replay fixture is empty");
  return replay;
}

ReplayBackend ReplayBackend::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BackendError("cannot open replay fixture '" + path + "'");
  return load(in);
}

ScoredSequence ReplayBackend::score(std::string_view text) const {
  auto it = records_.find(std::string(text));
  if (it == records_.end()) {
    throw BackendError("replay fixture has no record for '" + std::string(text) + "'");
  }
  return it->second;
}

std::size_t ReplayBackend::count_tokens(std::string_view text) const {
  if (auto it = records_.find(" " + std::string(text)); it != records_.end()) return it->second.tokens.size();
  return score(text).tokens.size();
}

nlohmann::ordered_json to_replay_json(const ScoredSequence& scored, const std::string& backend_id,
                                      bool includes_bos) {
  nlohmann::ordered_json j;
  j["text"] = scored.text;
  j["tokens"] = scored.tokens;
  j["logprobs"] = scored.token_logprobs;
  j["backend_id"] = backend_id;
  j["bos_included"] = includes_bos;
  return j;
}

ScoredSequence RecordingBackend::score(std::string_view text) const {
  ScoredSequence scored = inner_.score(text);
  std::lock_guard lock(mutex_);
  seen_.insert_or_assign(scored.text, scored);
  return scored;
}

std::size_t RecordingBackend::count_tokens(std::string_view text) const {
  // Record the leading-space form so a replay reproduces the same count.
  return score(" " + std::string(text)).tokens.size();
}

std::vector<ScoredSequence> RecordingBackend::recorded() const {
  std::lock_guard lock(mutex_);
  std::vector<ScoredSequence> out;
  for (const auto& [text, scored] : seen_) out.push_back(scored);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.text < y.text; });
  return out;
}

}  // namespace shiftbench
