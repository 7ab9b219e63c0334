#include "shiftbench/http_backend.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "shiftbench/error.hpp"

namespace shiftbench {
namespace {

class SemaphoreSlot {
 public:
  explicit SemaphoreSlot(std::counting_semaphore<1024>& s) : s_(s) { s_.acquire(); }
  ~SemaphoreSlot() { s_.release(); }
  SemaphoreSlot(const SemaphoreSlot&) = delete;
  SemaphoreSlot& operator=(const SemaphoreSlot&) = delete;

 private:
  std::counting_semaphore<1024>& s_;
};

std::ptrdiff_t clamp_in_flight(std::size_t n) {
  if (n == 0 || n > 1024) throw ValidationError("max_in_flight must be in [1, 1024]");
  return static_cast<std::ptrdiff_t>(n);
}

}  // namespace

HttpBackendConfig HttpBackendConfig::from_environment() {
  HttpBackendConfig config;
  if (const char* url = std::getenv("SHIFTBENCH_LM_URL")) config.url = url;
  if (const char* token = std::getenv("SHIFTBENCH_LM_TOKEN")) config.auth_token = token;
  return config;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), in_flight_(clamp_in_flight(config_.max_in_flight)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.url, m, kUrl)) {
    throw ValidationError("invalid logprob endpoint URL '" + config_.url + "'");
  }
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
  if (config_.backend_id.empty()) config_.backend_id = "http:" + config_.url;
  if (config_.max_attempts < 1) throw ValidationError("max_attempts must be at least 1");
  load_cache();
}

void HttpBackend::load_cache() {
  if (config_.cache_path.empty()) return;
  std::ifstream in(config_.cache_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.at("endpoint_id").get<std::string>() != config_.backend_id) continue;
      auto scored = make_scored(j.at("text").get<std::string>(), j.at("tokens").get<std::vector<std::string>>(),
                                j.at("logprobs").get<std::vector<double>>());
      cache_.emplace(scored.text, std::move(scored));
    } catch (const std::exception&) {
      // A torn trailing line from an interrupted run is skipped.
    }
  }
}

void HttpBackend::append_cache(const ScoredSequence& scored) const {
  if (config_.cache_path.empty()) return;
  nlohmann::ordered_json j;
  j["endpoint_id"] = config_.backend_id;
  j["text"] = scored.text;
  j["tokens"] = scored.tokens;
  j["logprobs"] = scored.token_logprobs;
  std::ofstream out(config_.cache_path, std::ios::app);
  out << j.dump() << '\n';
}

ScoredSequence HttpBackend::request(std::string_view text) const {
  SemaphoreSlot slot(in_flight_);
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  if (!config_.auth_token.empty()) client.set_bearer_token_auth(config_.auth_token);

  const std::string body = nlohmann::json{{"text", text}}.dump();
  ++calls_;
  auto result = client.Post(path_, body, "application/json");
  if (!result) {
    throw TransportError("logprob endpoint unreachable: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError("logprob endpoint returned HTTP " + std::to_string(result->status), result->status);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("logprob endpoint returned a non-JSON body");
  }
  if (!j.is_object() || !j.contains("tokens") || !j.contains("logprobs") || !j["tokens"].is_array() ||
      !j["logprobs"].is_array()) {
    throw ProtocolError("logprob response lacks 'tokens' and 'logprobs' arrays");
  }
  try {
    return make_scored(std::string(text), j["tokens"].get<std::vector<std::string>>(),
                       j["logprobs"].get<std::vector<double>>());
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("logprob response has mistyped 'tokens' or 'logprobs'");
  }
}

ScoredSequence HttpBackend::fetch_logprobs(std::string_view text) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(std::string(text)); it != cache_.end()) return it->second;
  }
  for (int attempt = 1;; ++attempt) {
    try {
      ScoredSequence scored = request(text);
      std::lock_guard lock(cache_mutex_);
      auto [it, inserted] = cache_.emplace(scored.text, scored);
      if (inserted) append_cache(scored);
      return it->second;
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= config_.max_attempts) throw;
      std::this_thread::sleep_for(config_.retry_backoff * attempt);
    }
  }
}

std::size_t HttpBackend::count_tokens(std::string_view text) const {
  return fetch_logprobs(" " + std::string(text)).tokens.size();
}

}  // namespace shiftbench
