#pragma once

#include <istream>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "shiftbench/backend.hpp"

namespace shiftbench {

// Replays logprobs recorded from another backend. Fixture lines are
// {text, tokens, logprobs, backend_id[, bos_included]}; all lines must share
// one backend_id. Unrecorded texts raise BackendError.
class ReplayBackend final : public Backend {
 public:
  static ReplayBackend load(std::istream& in);
  static ReplayBackend load_file(const std::string& path);

  std::string backend_id() const override { return backend_id_; }
  ScoredSequence score(std::string_view text) const override;
  // Looks up the text with a leading space first, then the bare text.
  std::size_t count_tokens(std::string_view text) const override;
  bool includes_bos() const override { return includes_bos_; }

  std::size_t size() const { return records_.size(); }

 private:
  std::string backend_id_;
  bool includes_bos_ = false;
  std::unordered_map<std::string, ScoredSequence> records_;
};

nlohmann::ordered_json to_replay_json(const ScoredSequence& scored, const std::string& backend_id,
                                      bool includes_bos);

// Passes calls through to `inner` and keeps every scored sequence so a run
// can be written out as a replay fixture.
class RecordingBackend final : public Backend {
 public:
  explicit RecordingBackend(const Backend& inner) : inner_(inner) {}

  std::string backend_id() const override { return inner_.backend_id(); }
  ScoredSequence score(std::string_view text) const override;
  std::size_t count_tokens(std::string_view text) const override;
  bool includes_bos() const override { return inner_.includes_bos(); }

  // Recorded sequences, deduplicated and sorted by text.
  std::vector<ScoredSequence> recorded() const;

 private:
  const Backend& inner_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, ScoredSequence> seen_;
};

}  // namespace shiftbench
