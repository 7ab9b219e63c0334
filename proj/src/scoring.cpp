#include "shiftbench/scoring.hpp"

#include "shiftbench/error.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {

ScoredSequence make_scored(std::string text, std::vector<std::string> tokens, std::vector<double> logprobs) {
  if (tokens.size() != logprobs.size()) {
    throw ProtocolError("backend returned " + std::to_string(tokens.size()) + " tokens but " +
                        std::to_string(logprobs.size()) + " logprobs");
  }
  ScoredSequence out;
  out.text = std::move(text);
  for (double lp : logprobs) {
    if (!(lp <= 1e-9)) throw ProtocolError("backend returned a positive or NaN logprob");
    out.m_score += lp;
  }
  out.tokens = std::move(tokens);
  out.token_logprobs = std::move(logprobs);
  return out;
}

std::size_t WhitespaceTokenizer::count_tokens(std::string_view text) const {
  return split_whitespace(text).size();
}

ScoredSequence score_sequence(const Backend& backend, std::string_view text) {
  if (text.empty()) throw ValidationError("cannot score empty text");
  return backend.score(text);
}

PreferenceRecord preference(const Backend& backend, const SentencePair& pair) {
  const ScoredSequence u = score_sequence(backend, pair.unshifted);
  const ScoredSequence s = score_sequence(backend, pair.shifted);
  return {pair.id, backend.backend_id(), u.m_score, s.m_score, u.m_score - s.m_score};
}

nlohmann::ordered_json to_json(const PreferenceRecord& r) {
  nlohmann::ordered_json out;
  out["pair_id"] = r.pair_id;
  out["backend_id"] = r.backend_id;
  out["m_score_u"] = r.m_score_unshifted;
  out["m_score_s"] = r.m_score_shifted;
  out["m_preference"] = r.m_preference;
  return out;
}

PreferenceRecord preference_from_json(const nlohmann::json& j) {
  try {
    return {j.at("pair_id").get<std::string>(), j.at("backend_id").get<std::string>(),
            j.at("m_score_u").get<double>(), j.at("m_score_s").get<double>(),
            j.at("m_preference").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed preference record: ") + e.what());
  }
}

}  // namespace shiftbench
