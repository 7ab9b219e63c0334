// Acceptance runner: one PASS/FAIL line per headline criterion, each with its
// measured runtime against a fixed budget. Exit status is nonzero on any FAIL.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gold_matches.hpp"
#include "ngram_oracle.hpp"
#include "shiftbench/curve.hpp"
#include "shiftbench/gam.hpp"
#include "shiftbench/generator.hpp"
#include "shiftbench/jsonl.hpp"
#include "shiftbench/kernels.hpp"
#include "shiftbench/ngram.hpp"
#include "shiftbench/scoring.hpp"
#include "shiftbench/shift.hpp"
#include "shiftbench/stats.hpp"
#include "shiftbench/study.hpp"
#include "shiftbench/text.hpp"
#include "shiftbench/weights.hpp"
#include "syllable_oracle.hpp"

namespace sb = shiftbench;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fixture(const std::string& name) { return std::string(SHIFTBENCH_FIXTURES) + "/" + name; }

Verdict weight_ratios() {
  Verdict v;
  const std::vector<const sb::Tokenizer*> none;
  const auto shorter = sb::profile("with her grandmother", std::nullopt, none);
  const auto garden = sb::profile("around the garden", std::nullopt, none);
  const auto longer = sb::profile("around the decorated entryway garden with the large fountain", std::nullopt, none);
  v.require(shorter.word_length == 3 && garden.word_length == 3 && longer.word_length == 9, "word lengths 3/3/9");
  v.require(shorter.syllable_weight == 5 && garden.syllable_weight == 5 && longer.syllable_weight == 17,
            "syllable weights 5/5/17");
  const auto same = sb::ratios(shorter, garden).values;
  const auto third = sb::ratios(shorter, longer).values;
  v.require(same.at("word") == 1.0 && same.at("syllable") == 1.0, "ratios 3:3 and 5:5 equal 1");
  v.require(third.at("word") == 3.0 / 9.0, "word ratio 3:9");
  v.require(third.at("syllable") == 5.0 / 17.0, "syllable ratio 5:17");
  v.detail << " word 3:9=" << third.at("word") << " syllable 5:17=" << third.at("syllable");
  return v;
}

Verdict syllable_heuristic() {
  Verdict v;
  v.require(sb::syllable_weight("around the decorated entryway garden with the large fountain") == 17, "17 syllables");
  v.require(sb::syllable_weight("with her grandmother") == 5, "5 syllables");
  std::size_t agree = 0;
  const auto& oracle = sb::testing::syllable_oracle();
  for (const auto& [word, count] : oracle) agree += sb::syllable_count(word) == count;
  const double rate = static_cast<double>(agree) / static_cast<double>(oracle.size());
  v.require(oracle.size() == 50, "oracle has 50 words");
  v.require(rate >= 0.9, "oracle agreement >= 90%");
  v.detail << " oracle agreement " << agree << "/" << oracle.size();
  return v;
}

Verdict canonical_realization() {
  Verdict v;
  const auto trees = sb::parse_treebank(sb::read_text_file(fixture("canonical_examples.mrg")));
  const std::vector<std::tuple<sb::ShiftType, std::string, std::string>> expected = {
      {sb::ShiftType::kHnps, "I met the tall man selling water to marathon runners at the park.",
       "I met at the park the tall man selling water to marathon runners."},
      {sb::ShiftType::kPm, "She looked up her question on her computer.", "She looked her question up on her computer."},
      {sb::ShiftType::kDa, "He sent her a gift for her birthday.", "He sent a gift to her for her birthday."},
      {sb::ShiftType::kMpp, "I went to the mall with my sister on Sunday.", "I went with my sister to the mall on Sunday."},
  };
  std::size_t exact = 0;
  v.require(trees.size() == expected.size(), "four example trees");
  for (std::size_t i = 0; i < expected.size() && i < trees.size(); ++i) {
    const auto& [type, unshifted, shifted] = expected[i];
    const auto matches = sb::match_shift_pattern(trees[i], type);
    if (matches.empty()) {
      v.require(false, std::string(sb::to_string(type)) + " has no match");
      continue;
    }
    const auto pair = sb::realize_pair(matches.front(), "example");
    exact += pair.unshifted == unshifted;
    exact += pair.shifted == shifted;
    v.require(pair.unshifted == unshifted && pair.shifted == shifted, std::string(sb::to_string(type)) + " strings");
  }
  v.detail << " " << exact << "/8 sentences exact";
  return v;
}

Verdict miner_oracle() {
  Verdict v;
  const auto trees = sb::parse_treebank(sb::read_text_file(fixture("mini_treebank.mrg")));
  const auto& gold = sb::testing::mini_treebank_gold();
  for (const sb::ShiftType type : sb::kAllShiftTypes) {
    std::set<sb::testing::GoldMatch> found, wanted;
    for (const auto& g : gold)
      if (std::get<1>(g) == type) wanted.insert(g);
    const auto per_tree = sb::kernels::match_treebank(trees, type);
    for (std::size_t t = 0; t < per_tree.size(); ++t) {
      for (const auto& m : per_tree[t]) {
        found.emplace(t, type, sb::detokenize(sb::yield(*m.constituent_a)),
                      sb::detokenize(sb::yield(*m.constituent_b)));
      }
    }
    std::size_t hits = 0;
    for (const auto& f : found) hits += wanted.contains(f);
    const double precision = found.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(found.size());
    const double recall = wanted.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(wanted.size());
    v.require(precision == 1.0 && recall == 1.0, std::string(sb::to_string(type)) + " precision/recall");
    v.detail << " " << sb::to_string(type) << " P=" << precision << " R=" << recall;
  }
  return v;
}

Verdict scoring_oracle() {
  Verdict v;
  const std::vector<std::string> corpus = {"The cat sat on the mat.", "The dog sat.", "A cat ran to the dog!"};
  std::vector<std::vector<std::string>> tokens;
  for (const auto& s : corpus) tokens.push_back(sb::NGramModel::tokenize(s));
  double worst = 0.0;
  for (const int order : {1, 2, 3}) {
    for (const double delta : {0.1, 1.0}) {
      const auto lm = sb::train_ngram(corpus, order, delta);
      const sb::testing::BruteForceNGram oracle(tokens, order, delta);
      for (const std::string probe : {corpus[0], corpus[1], corpus[2], std::string("The cat ran on the dog.")}) {
        worst = std::max(worst,
                         std::abs(lm.score(probe).m_score - oracle.log_probability(sb::NGramModel::tokenize(probe))));
      }
    }
  }
  v.require(worst <= 1e-9, "chain rule within 1e-9");

  const auto lm = sb::train_ngram(corpus, 2, 0.5);
  std::vector<sb::SentencePair> pool;
  const auto lexicon = sb::default_lexicon();
  for (const auto type : sb::kAllShiftTypes) {
    auto pairs = sb::expand(lexicon, sb::default_plan(lexicon, type));
    pool.insert(pool.end(), pairs.begin(), pairs.end());
  }
  std::mt19937_64 rng(11);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min<std::size_t>(pool.size(), 1000));
  std::size_t antisymmetric = 0;
  for (const auto& pair : pool) {
    antisymmetric += sb::preference(lm, sb::swapped(pair)).m_preference == -sb::preference(lm, pair).m_preference;
  }
  v.require(pool.size() == 1000 && antisymmetric == pool.size(), "exact antisymmetry on 1000 pairs");
  v.detail << " max |error| " << worst << ", antisymmetric " << antisymmetric << "/" << pool.size();
  return v;
}

// A corpus with a graded heavy-last tendency: each pair contributes 20
// sentences, of which the share placing constituent A last is r / (1 + r),
// r being the A:B syllable ratio. Heavier A means A goes last more often.
std::vector<std::string> heavy_last_corpus(std::span<const sb::SentencePair> pairs) {
  constexpr int kCopies = 20;
  std::vector<std::string> corpus;
  for (const auto& p : pairs) {
    const double r = static_cast<double>(sb::syllable_weight(p.constituent_a().text)) /
                     static_cast<double>(sb::syllable_weight(p.constituent_b().text));
    const long shifted = std::lround(kCopies * r / (1.0 + r));
    for (long i = 0; i < kCopies; ++i) corpus.push_back(i < shifted ? p.shifted : p.unshifted);
  }
  return corpus;
}

Verdict end_to_end_trend() {
  Verdict v;
  const auto lexicon = sb::default_lexicon();
  const auto pairs = sb::expand(lexicon, sb::default_plan(lexicon, sb::ShiftType::kHnps));
  const auto lm = sb::train_ngram(heavy_last_corpus(pairs), 2, 0.1, "bigram-heavy-last");
  const std::vector<const sb::Tokenizer*> tokenizers = {&lm};
  const auto weighted = sb::kernels::weigh_pairs(pairs, tokenizers);
  const auto prefs = sb::kernels::score_pairs(lm, pairs);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    x.push_back(weighted[i].ratios.values.at("syllable"));
    y.push_back(prefs[i].m_preference);
  }
  const auto curve = sb::preference_curve(x, y, 10);
  std::vector<double> centers, means;
  for (const auto& point : curve) {
    centers.push_back(point.center);
    means.push_back(point.mean);
  }
  const double rho = sb::spearman(centers, means).rho;
  v.require(pairs.size() >= 1000, ">= 1000 pairs");
  v.require(rho < -0.8, "Spearman of bin means < -0.8");
  v.detail << " pairs " << pairs.size() << ", bins " << curve.size() << ", rho " << rho << ", first bin mean "
           << means.front() << ", last bin mean " << means.back();
  return v;
}

Verdict gam_recovery() {
  Verdict v;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<sb::AnalysisRow> rows;
  for (int i = 0; i < 500; ++i) {
    const double x = unit(rng);
    rows.push_back({"r" + std::to_string(i), "v", std::sin(2 * std::numbers::pi * x) + noise(rng), {{"x", x}}});
  }
  const std::vector<std::string> predictors = {"x"};
  const auto design = sb::build_design(rows, predictors);
  const auto fit = sb::fit_gam(design);
  const Eigen::VectorXd analytic = sb::penalized_gradient(design, fit, fit.coefficients);
  double worst = 0.0;
  const double h = 1e-5;
  for (Eigen::Index i = 0; i < fit.coefficients.size(); ++i) {
    Eigen::VectorXd up = fit.coefficients, down = fit.coefficients;
    up(i) += h;
    down(i) -= h;
    const double numeric =
        (sb::penalized_objective(design, fit, up) - sb::penalized_objective(design, fit, down)) / (2 * h);
    worst = std::max(worst, std::abs(analytic(i) - numeric));
  }
  v.require(fit.r_squared > 0.95, "R^2 > 0.95");
  v.require(worst <= 1e-6, "gradient within 1e-6 of finite differences");
  v.detail << " R^2 " << fit.r_squared << ", max gradient gap " << worst;
  return v;
}

Verdict ablation_discrimination() {
  Verdict v;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.1);
  const std::vector<std::string> verbs = {"meet", "see", "greet", "notice", "photograph"};
  std::vector<sb::AnalysisRow> rows;
  for (std::size_t i = 0; i < 400; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    const std::size_t k = i % verbs.size();
    rows.push_back({"r" + std::to_string(i), verbs[k],
                    std::sin(2 * std::numbers::pi * a) + 0.05 * static_cast<double>(k) + noise(rng),
                    {{"a", a}, {"noise", b}}});
  }
  const std::vector<std::string> predictors = {"a", "noise"};
  const auto row = sb::ablate(rows, predictors);
  const bool fitted = row.full.r_squared && row.dropped.at("a").r_squared && row.dropped.at("noise").r_squared;
  v.require(fitted, "all cells fitted");
  if (!fitted) return v;
  const double drop_a = *row.full.r_squared - *row.dropped.at("a").r_squared;
  const double drop_noise = *row.full.r_squared - *row.dropped.at("noise").r_squared;
  v.require(drop_a > 0.2, "delta(drop A) > 0.2");
  v.require(std::abs(drop_noise) < 0.02, "|delta(drop noise)| < 0.02");
  v.detail << " delta(drop A) " << drop_a << ", delta(drop noise) " << drop_noise;
  return v;
}

Verdict judgment_aggregation() {
  Verdict v;
  std::vector<sb::JudgmentRecord> log;
  const int split[] = {1, 7, 1, 7};
  for (int i = 0; i < 4; ++i) {
    log.push_back({"p" + std::to_string(i), "HNPS-split", sb::PresentationOrder::kUnshiftedFirst, split[i], 1, ""});
  }
  for (int i = 0; i < 4; ++i) {
    log.push_back({"p" + std::to_string(i), "HNPS-agree", sb::PresentationOrder::kUnshiftedFirst, 2, 1, ""});
    log.push_back({"p" + std::to_string(i), "attn-1", sb::PresentationOrder::kUnshiftedFirst, 1, 1, ""});
  }
  log.push_back({"careless", "HNPS-agree", sb::PresentationOrder::kUnshiftedFirst, 7, 1, ""});
  log.push_back({"careless", "attn-1", sb::PresentationOrder::kUnshiftedFirst, 7, 1, ""});
  log.push_back({"careless", "attn-2", sb::PresentationOrder::kShiftedFirst, 1, 1, ""});
  const auto out = sb::aggregate(log, {"attn-1", "attn-2"});
  const auto find = [&](const std::string& id) {
    return *std::find_if(out.begin(), out.end(), [&](const auto& a) { return a.pair_id == id; });
  };
  v.require(out.size() == 2, "two aggregated pairs");
  if (out.size() != 2) return v;
  v.require(find("HNPS-split").excluded, "[1,7,1,7] excluded");
  v.require(find("HNPS-agree").n == 4 && find("HNPS-agree").mean == 2.0, "careless participant contributes nothing");

  const fs::path dir = fs::temp_directory_path() / ("shiftbench_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::vector<sb::SentencePair> pool;
  for (int i = 0; i < 60; ++i) {
    sb::SentencePair p;
    p.id = "HNPS-" + std::to_string(i);
    p.unshifted = "She met the friend " + std::to_string(i) + " at the park.";
    p.shifted = "She met at the park the friend " + std::to_string(i) + ".";
    pool.push_back(p);
  }
  sb::StudyConfig config;
  config.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
  std::string before;
  {
    sb::StudyStore store(pool, dir, config);
    for (int p = 0; p < 6; ++p) {
      const auto a = store.create_assignment("p" + std::to_string(p));
      for (std::size_t i = 0; i < a.items.size(); ++i) {
        store.submit({a.participant_id, a.items[i].pair_id, a.items[i].presentation_order,
                      1 + static_cast<int>((i * 3 + static_cast<std::size_t>(p)) % 7), 900, ""});
      }
    }
    for (const auto& a : store.aggregates()) before += sb::to_json(a).dump() + "\n";
  }
  sb::StudyStore replayed(pool, dir, config);
  std::string after;
  for (const auto& a : replayed.aggregates()) after += sb::to_json(a).dump() + "\n";
  fs::remove_all(dir);
  v.require(!before.empty() && before == after, "replay reproduces aggregates byte-identically");
  v.detail << " split stddev " << find("HNPS-split").stddev << ", replayed " << before.size() << " bytes";
  return v;
}

std::vector<double> counting_ranks(const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double less = 0, tied = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      less += values[j] < values[i];
      tied += j != i && values[j] == values[i];
    }
    out.push_back(1 + less + tied / 2);
  }
  return out;
}

Verdict spearman_checks() {
  Verdict v;
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const std::vector<double> up = {0.1, 0.4, 0.9, 1.6, 2.5, 3.6};
  const std::vector<double> down = {9, 7, 5, 2, 0, -4};
  v.require(sb::spearman(x, up).rho == 1.0, "rho = +1");
  v.require(sb::spearman(x, down).rho == -1.0, "rho = -1");
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> fixtures = {
      {{1, 2, 2, 3, 4, 4}, {2, 2, 1, 5, 5, 3}},
      {{3, 3, 3, 1, 2, 2}, {1, 2, 3, 4, 5, 6}},
      {{0.5, 0.5, 1.5, 1.5, 2.5, 2.5}, {6, 5, 5, 4, 4, 1}},
  };
  double worst = 0.0;
  for (const auto& [a, b] : fixtures) {
    v.require(sb::average_ranks(a) == counting_ranks(a), "average ranks match oracle");
    const double expected = sb::pearson(counting_ranks(a), counting_ranks(b));
    worst = std::max(worst, std::abs(sb::spearman(a, b).rho - expected));
  }
  v.require(worst <= 1e-12, "tied rho matches oracle");
  v.detail << " max tie gap " << worst;
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"weight-ratio examples", 1, weight_ratios},
      {"syllable heuristic", 1, syllable_heuristic},
      {"example realization", 1, canonical_realization},
      {"miner oracle", 1, miner_oracle},
      {"scoring oracle", 5, scoring_oracle},
      {"end-to-end trend", 60, end_to_end_trend},
      {"GAM recovery", 10, gam_recovery},
      {"ablation discrimination", 30, ablation_discrimination},
      {"judgment aggregation", 1, judgment_aggregation},
      {"spearman", 1, spearman_checks},
  };
  int failures = 0;
  std::cout << std::setprecision(6);
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = c.run();
    } catch (const std::exception& e) {
      verdict.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream budget;
    budget << "runtime " << std::fixed << std::setprecision(3) << seconds << "s <= " << c.budget_seconds << "s";
    verdict.require(seconds <= c.budget_seconds, budget.str());
    failures += !verdict.pass;
    std::cout << (verdict.pass ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(3)
              << seconds << "s / " << c.budget_seconds << "s)" << std::defaultfloat << std::setprecision(6)
              << verdict.detail.str() << '\n';
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}
