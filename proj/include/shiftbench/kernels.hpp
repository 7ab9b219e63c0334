#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "shiftbench/backend.hpp"
#include "shiftbench/bspline.hpp"
#include "shiftbench/scoring.hpp"
#include "shiftbench/shift.hpp"
#include "shiftbench/weights.hpp"

// Data-parallel loops of the pipeline. The `serial` namespace holds plain
// reference loops with identical results; tests and benchmarks compare them.
namespace shiftbench::kernels {

// Matches per tree, in treebank order.
std::vector<std::vector<ShiftMatch>> match_treebank(std::span<const ParseNode> treebank, ShiftType type);
std::vector<WeightedPair> weigh_pairs(std::span<const SentencePair> pairs,
                                      std::span<const Tokenizer* const> tokenizers);
std::vector<PreferenceRecord> score_pairs(const Backend& backend, std::span<const SentencePair> pairs);
Eigen::MatrixXd basis_rows(const BSplineBasis& basis, std::span<const double> x);

namespace serial {

std::vector<std::vector<ShiftMatch>> match_treebank(std::span<const ParseNode> treebank, ShiftType type);
std::vector<WeightedPair> weigh_pairs(std::span<const SentencePair> pairs,
                                      std::span<const Tokenizer* const> tokenizers);
std::vector<PreferenceRecord> score_pairs(const Backend& backend, std::span<const SentencePair> pairs);
Eigen::MatrixXd basis_rows(const BSplineBasis& basis, std::span<const double> x);

}  // namespace serial
}  // namespace shiftbench::kernels
