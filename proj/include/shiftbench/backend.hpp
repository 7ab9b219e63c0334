#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace shiftbench {

// Per-token natural-log probabilities for one text.
struct ScoredSequence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<double> token_logprobs;
  double m_score = 0.0;
};

// Sums logprobs into m_score after checking the token/logprob contract.
// Throws ProtocolError on a length mismatch or a positive logprob.
ScoredSequence make_scored(std::string text, std::vector<std::string> tokens,
                           std::vector<double> logprobs);

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string tokenizer_id() const = 0;
  // Number of tokens for a constituent scored out of context.
  virtual std::size_t count_tokens(std::string_view text) const = 0;
};

class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::string tokenizer_id() const override { return "whitespace"; }
  std::size_t count_tokens(std::string_view text) const override;
};

// A language model that can score text. Implementations are safe to call
// from concurrent workers.
class Backend : public Tokenizer {
 public:
  virtual std::string backend_id() const = 0;
  std::string tokenizer_id() const override { return backend_id(); }
  virtual ScoredSequence score(std::string_view text) const = 0;
  // Whether the first token's logprob is conditioned on (and includes) a
  // beginning-of-sequence token.
  virtual bool includes_bos() const = 0;
};

}  // namespace shiftbench
