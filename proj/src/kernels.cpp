#include "shiftbench/kernels.hpp"

#include <vector>

#include "shiftbench/parallel.hpp"

namespace shiftbench::kernels {

std::vector<std::vector<ShiftMatch>> match_treebank(std::span<const ParseNode> treebank, ShiftType type) {
  std::vector<std::vector<ShiftMatch>> out(treebank.size());
  parallel::for_each_index(treebank.size(), [&](std::size_t i) { out[i] = match_shift_pattern(treebank[i], type); });
  return out;
}

std::vector<WeightedPair> weigh_pairs(std::span<const SentencePair> pairs,
                                      std::span<const Tokenizer* const> tokenizers) {
  std::vector<WeightedPair> out(pairs.size());
  parallel::for_each_index(pairs.size(), [&](std::size_t i) { out[i] = weigh(pairs[i], tokenizers); });
  return out;
}

std::vector<PreferenceRecord> score_pairs(const Backend& backend, std::span<const SentencePair> pairs) {
  std::vector<PreferenceRecord> out(pairs.size());
  parallel::for_each_index(pairs.size(), [&](std::size_t i) { out[i] = preference(backend, pairs[i]); });
  return out;
}

Eigen::MatrixXd basis_rows(const BSplineBasis& basis, std::span<const double> x) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(x.size()), basis.size());
  parallel::for_each_index(x.size(), [&](std::size_t i) {
    // Per-thread scratch row; rows never overlap, so the scatter is race-free.
    thread_local std::vector<double> values;
    values.resize(static_cast<std::size_t>(basis.size()));
    basis.evaluate(x[i], values);
    for (int j = 0; j < basis.size(); ++j) rows(static_cast<Eigen::Index>(i), j) = values[static_cast<std::size_t>(j)];
  });
  return rows;
}

}  // namespace shiftbench::kernels
