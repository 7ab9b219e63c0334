#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <mutex>
#include <semaphore>
#include <string>
#include <string_view>
#include <unordered_map>

#include "shiftbench/backend.hpp"

namespace shiftbench {

struct HttpBackendConfig {
  std::string url;          // e.g. http://localhost:8000/logprobs
  std::string auth_token;   // sent as a bearer token when non-empty
  std::string backend_id;   // defaults to "http:" + url
  std::size_t max_in_flight = 4;  // at most 1024
  int max_attempts = 3;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds retry_backoff{100};
  std::string cache_path;   // optional JSON Lines cache shared across runs
  bool includes_bos = false;

  // Reads SHIFTBENCH_LM_URL and SHIFTBENCH_LM_TOKEN.
  static HttpBackendConfig from_environment();
};

// Client for a remote logprob endpoint:
//   POST {"text": "..."} -> {"tokens": [...], "logprobs": [...]}
// Responses are cached per (endpoint id, text). Non-2xx statuses and
// connection failures raise TransportError (5xx, 429 and connection failures
// are retried); malformed bodies raise ProtocolError.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string backend_id() const override { return config_.backend_id; }
  ScoredSequence score(std::string_view text) const override { return fetch_logprobs(text); }
  // Token count of the text with a single leading space.
  std::size_t count_tokens(std::string_view text) const override;
  bool includes_bos() const override { return config_.includes_bos; }

  ScoredSequence fetch_logprobs(std::string_view text) const;

  std::size_t network_calls() const { return calls_.load(); }

 private:
  ScoredSequence request(std::string_view text) const;
  void load_cache();
  void append_cache(const ScoredSequence& scored) const;

  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, ScoredSequence> cache_;
  mutable std::counting_semaphore<1024> in_flight_;
  mutable std::atomic<std::size_t> calls_{0};
};

}  // namespace shiftbench
