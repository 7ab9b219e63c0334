#include "shiftbench/kernels.hpp"

namespace shiftbench::kernels::serial {

std::vector<std::vector<ShiftMatch>> match_treebank(std::span<const ParseNode> treebank, ShiftType type) {
  std::vector<std::vector<ShiftMatch>> out;
  out.reserve(treebank.size());
  for (const auto& tree : treebank) out.push_back(match_shift_pattern(tree, type));
  return out;
}

std::vector<WeightedPair> weigh_pairs(std::span<const SentencePair> pairs,
                                      std::span<const Tokenizer* const> tokenizers) {
  std::vector<WeightedPair> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(weigh(pair, tokenizers));
  return out;
}

std::vector<PreferenceRecord> score_pairs(const Backend& backend, std::span<const SentencePair> pairs) {
  std::vector<PreferenceRecord> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(preference(backend, pair));
  return out;
}

Eigen::MatrixXd basis_rows(const BSplineBasis& basis, std::span<const double> x) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(x.size()), basis.size());
  std::vector<double> values(static_cast<std::size_t>(basis.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    basis.evaluate(x[i], values);
    for (int j = 0; j < basis.size(); ++j) rows(static_cast<Eigen::Index>(i), j) = values[static_cast<std::size_t>(j)];
  }
  return rows;
}

}  // namespace shiftbench::kernels::serial
