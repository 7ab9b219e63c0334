// Parallel kernels against their serial reference loops.
#include <benchmark/benchmark.h>

#include "shiftbench/generator.hpp"
#include "shiftbench/kernels.hpp"
#include "shiftbench/ngram.hpp"

namespace sb = shiftbench;

namespace {

const std::vector<sb::SentencePair>& da_pairs() {
  static const auto pairs = sb::expand(sb::default_lexicon(), sb::default_plan(sb::default_lexicon(), sb::ShiftType::kDa));
  return pairs;
}

const sb::NGramModel& model() {
  static const auto lm = [] {
    std::vector<std::string> corpus;
    for (const auto& p : da_pairs()) corpus.push_back(p.unshifted);
    return sb::train_ngram(corpus, 3, 0.1);
  }();
  return lm;
}

const std::vector<sb::ParseNode>& treebank() {
  static const auto trees = [] {
    std::string source;
    for (int i = 0; i < 400; ++i) {
      source += "(S (NP (PRP I)) (VP (VBD met) (NP (DT the) (JJ tall) (NN man)) (PP (IN at) (NP (DT the) (NN park)))))\n";
      source += "(S (NP (PRP He)) (VP (VBD sent) (NP (PRP her)) (NP (DT a) (NN gift)) (PP (IN for) (NP (PRP$ her) (NN birthday)))))\n";
    }
    return sb::parse_treebank(source);
  }();
  return trees;
}

std::vector<double> grid(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) / static_cast<double>(n);
  return x;
}

template <bool Parallel>
void BM_ScorePairs(benchmark::State& state) {
  const auto& pairs = da_pairs();
  const std::span<const sb::SentencePair> slice(pairs.data(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? sb::kernels::score_pairs(model(), slice) : sb::kernels::serial::score_pairs(model(), slice);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_WeighPairs(benchmark::State& state) {
  const auto& pairs = da_pairs();
  const std::span<const sb::SentencePair> slice(pairs.data(), static_cast<std::size_t>(state.range(0)));
  const std::vector<const sb::Tokenizer*> tokenizers = {&model()};
  for (auto _ : state) {
    auto out = Parallel ? sb::kernels::weigh_pairs(slice, tokenizers) : sb::kernels::serial::weigh_pairs(slice, tokenizers);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MatchTreebank(benchmark::State& state) {
  for (auto _ : state) {
    auto out = Parallel ? sb::kernels::match_treebank(treebank(), sb::ShiftType::kHnps)
                        : sb::kernels::serial::match_treebank(treebank(), sb::ShiftType::kHnps);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(treebank().size()));
}

template <bool Parallel>
void BM_BasisRows(benchmark::State& state) {
  const sb::BSplineBasis basis(0.0, 1.0, 10);
  const auto x = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? sb::kernels::basis_rows(basis, x) : sb::kernels::serial::basis_rows(basis, x);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScorePairs<true>)->Arg(1000)->Arg(6000)->Name("score_pairs/parallel");
BENCHMARK(BM_ScorePairs<false>)->Arg(1000)->Arg(6000)->Name("score_pairs/serial");
BENCHMARK(BM_WeighPairs<true>)->Arg(1000)->Arg(6000)->Name("weigh_pairs/parallel");
BENCHMARK(BM_WeighPairs<false>)->Arg(1000)->Arg(6000)->Name("weigh_pairs/serial");
BENCHMARK(BM_MatchTreebank<true>)->Name("match_treebank/parallel");
BENCHMARK(BM_MatchTreebank<false>)->Name("match_treebank/serial");
BENCHMARK(BM_BasisRows<true>)->Arg(100000)->Name("basis_rows/parallel");
BENCHMARK(BM_BasisRows<false>)->Arg(100000)->Name("basis_rows/serial");

BENCHMARK_MAIN();
