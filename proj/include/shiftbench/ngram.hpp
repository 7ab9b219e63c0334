#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shiftbench/backend.hpp"

namespace shiftbench {

// Word-level n-gram model with additive smoothing:
//   P(w | ctx) = (count(ctx, w) + delta) / (count(ctx) + delta * (|V| + 1))
// where the +1 is a single unknown-word class. Contexts are padded with <s>;
// the beginning marker is conditioned on but never scored, and no end marker
// is predicted, so every seen or unseen context normalizes over V + unknown.
// Immutable after training and safe to share across threads.
class NGramModel final : public Backend {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kUnknown = "<unk>";

  std::string backend_id() const override { return backend_id_; }
  ScoredSequence score(std::string_view text) const override;
  std::size_t count_tokens(std::string_view text) const override;
  bool includes_bos() const override { return false; }

  // Lowercased word tokens, plus a final token for sentence-ending . ? or !
  static std::vector<std::string> tokenize(std::string_view text);

  // `context` holds the order-1 preceding tokens (already padded).
  double probability(std::span<const std::string> context, const std::string& word) const;

  int order() const { return order_; }
  double delta() const { return delta_; }
  const std::set<std::string>& vocabulary() const { return vocabulary_; }

 private:
  friend NGramModel train_ngram(std::span<const std::string> corpus, int order, double delta,
                                std::string backend_id);

  struct ContextStats {
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t total = 0;
  };

  std::string context_key(std::span<const std::string> context) const;

  int order_ = 2;
  double delta_ = 1.0;
  std::string backend_id_;
  std::set<std::string> vocabulary_;
  std::unordered_map<std::string, ContextStats> contexts_;
};

// order in {1, 2, 3}; delta > 0; throws ValidationError on an empty corpus.
NGramModel train_ngram(std::span<const std::string> corpus, int order, double delta,
                       std::string backend_id = "");

}  // namespace shiftbench
