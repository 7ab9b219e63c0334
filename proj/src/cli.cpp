#include "shiftbench/cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shiftbench/error.hpp"
#include "shiftbench/generator.hpp"
#include "shiftbench/http_backend.hpp"
#include "shiftbench/jsonl.hpp"
#include "shiftbench/kernels.hpp"
#include "shiftbench/manifest.hpp"
#include "shiftbench/ngram.hpp"
#include "shiftbench/pipeline.hpp"
#include "shiftbench/replay_backend.hpp"
#include "shiftbench/shift.hpp"
#include "shiftbench/study_server.hpp"
#include "shiftbench/text.hpp"

#ifndef SHIFTBENCH_VERSION
#define SHIFTBENCH_VERSION "0.0.0"
#endif

namespace shiftbench::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<std::string> split_list(const std::vector<std::string>& values);

std::vector<ShiftType> parse_shifts(const std::vector<std::string>& values) {
  std::vector<ShiftType> out;
  for (const auto& item : split_list(values)) {
    if (to_lower(item) == "all") return {kAllShiftTypes.begin(), kAllShiftTypes.end()};
    const ShiftType t = parse_shift_type(item);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  if (out.empty()) throw ValidationError("no shift type selected");
  return out;
}

std::vector<std::string> split_list(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const auto& value : values) {
    std::stringstream parts(value);
    std::string item;
    while (std::getline(parts, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) out.push_back(line);
  }
  return out;
}

std::vector<SentencePair> read_pairs(const fs::path& path) {
  std::vector<SentencePair> out;
  for (const auto& doc : read_jsonl_file(path)) out.push_back(pair_from_json(doc));
  return out;
}

std::vector<WeightedPair> read_weighted(const fs::path& path) {
  std::vector<WeightedPair> out;
  for (const auto& doc : read_jsonl_file(path)) out.push_back(weighted_from_json(doc));
  return out;
}

std::vector<PreferenceRecord> read_preferences(const fs::path& path) {
  std::vector<PreferenceRecord> out;
  for (const auto& doc : read_jsonl_file(path)) out.push_back(preference_from_json(doc));
  return out;
}

std::vector<AggregateJudgment> read_aggregates(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::vector<nlohmann::json> docs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const auto& d : nlohmann::json::parse(text)) docs.push_back(d);
  } else {
    std::istringstream in(text);
    docs = read_jsonl(in);
  }
  std::vector<AggregateJudgment> out;
  for (const auto& d : docs) out.push_back(aggregate_from_json(d));
  return out;
}

template <class T>
std::string jsonl_of(const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) out += to_json(item).dump() + "\n";
  return out;
}

// Collects inputs, outputs and config for the run manifest.
class RunRecord {
 public:
  RunRecord(std::string subcommand, std::uint64_t seed) {
    manifest_.version = SHIFTBENCH_VERSION;
    manifest_.subcommand = std::move(subcommand);
    manifest_.seed = seed;
  }

  void config(const std::string& key, ordered_json value) { manifest_.config[key] = std::move(value); }
  void input(const std::string& path) { manifest_.inputs.push_back({path, sha256_file(path)}); }
  void input_bytes(const std::string& label, std::string_view bytes) {
    manifest_.inputs.push_back({label, sha256_hex(bytes)});
  }
  void output(const fs::path& path, const std::string& content) {
    write_text_file(path, content);
    manifest_.outputs.push_back({path.string(), sha256_hex(content)});
  }
  void finish(const fs::path& manifest_path) {
    manifest_.created_at = utc_timestamp();
    write_manifest(manifest_path, manifest_);
  }

 private:
  Manifest manifest_;
};

fs::path manifest_path_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

ordered_json backend_config(const BackendOptions& b) {
  ordered_json c = {{"kind", b.kind}};
  if (b.kind == "ngram") {
    c["train"] = b.train;
    c["order"] = b.order;
    c["delta"] = b.delta;
  } else if (b.kind == "http") {
    c["endpoint"] = b.endpoint;
    c["cache"] = b.cache;
  } else {
    c["replay"] = b.replay;
  }
  if (!b.backend_id.empty()) c["backend_id"] = b.backend_id;
  return c;
}

void record_backend_inputs(RunRecord& run, const BackendOptions& b) {
  if (b.kind == "ngram") run.input(b.train);
  if (b.kind == "replay") run.input(b.replay);
}

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::vector<std::string> shifts;
  // generate
  std::string lexicon = "default";
  // mine
  std::vector<std::string> treebanks;
  std::size_t sample_size = 500;
  std::size_t max_words = 25;
  std::string verb_allowlist;
  // weigh / score / analyze / correlate
  std::string pairs;
  std::string prefs;
  std::string aggregates;
  std::string record;
  bool with_backend_tokens = false;
  BackendOptions backend;
  std::vector<std::string> predictors;
  int basis_size = 10;
  int bins = 10;
  std::string lambda_grid = "1e-4:1e4:12";
  std::string slope = "word";
  bool no_random_effects = false;
  // serve
  std::string data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t items = 25;
  std::size_t attention_checks = 2;
  std::size_t max_per_pair = 8;
};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("lambda grid must look like lower:upper:points");
  try {
    return log_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const std::logic_error&) {
    throw ValidationError("lambda grid '" + spec + "' is not numeric");
  }
}

void add_backend_flags(CLI::App* cmd, Options& o, bool required) {
  auto* kind = cmd->add_option("--backend", o.backend.kind, "ngram | http | replay")
                   ->check(CLI::IsMember({"ngram", "http", "replay"}));
  if (required) kind->capture_default_str();
  cmd->add_option("--train", o.backend.train, "n-gram training corpus (one sentence per line)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--order", o.backend.order, "n-gram order (1-3)")->capture_default_str();
  cmd->add_option("--delta", o.backend.delta, "additive smoothing constant")->capture_default_str();
  cmd->add_option("--endpoint", o.backend.endpoint, "logprob endpoint URL");
  cmd->add_option("--cache", o.backend.cache, "HTTP response cache (JSON Lines)");
  cmd->add_option("--replay", o.backend.replay, "recorded logprob fixture")->check(CLI::ExistingFile);
  cmd->add_option("--backend-id", o.backend.backend_id, "override the backend identity");
}

int do_generate(const Options& o, std::ostream& out) {
  RunRecord run("generate", o.seed);
  std::string source;
  if (o.lexicon == "default") {
    source = std::string(default_lexicon_json());
    run.input_bytes("default", source);
  } else {
    source = read_text_file(o.lexicon);
    run.input(o.lexicon);
  }
  const Lexicon lexicon = load_lexicon(source);
  std::vector<SentencePair> pairs;
  ordered_json plans = ordered_json::array();
  for (ShiftType type : parse_shifts(o.shifts)) {
    const GenerationPlan plan = default_plan(lexicon, type);
    auto expanded = expand(lexicon, plan);
    pairs.insert(pairs.end(), std::make_move_iterator(expanded.begin()), std::make_move_iterator(expanded.end()));
    plans.push_back({{"shift", to_string(type)},
                     {"grade_a", plan.grade_a},
                     {"grade_b", plan.grade_b},
                     {"max_level_a", plan.max_level_a},
                     {"max_level_b", plan.max_level_b}});
  }
  run.config("lexicon", o.lexicon);
  run.config("plans", plans);
  run.output(o.out, jsonl_of(pairs));
  run.finish(manifest_path_for(o.out));
  const Census census = dataset_census(pairs);
  for (const auto& [type, n] : census.per_shift) {
    if (n > 0) out << to_string(type) << '\t' << n << '\n';
  }
  return 0;
}

int do_mine(const Options& o, std::ostream& out) {
  RunRecord run("mine", o.seed);
  std::vector<ParseNode> treebank;
  for (const auto& path : o.treebanks) {
    run.input(path);
    auto trees = parse_treebank(read_text_file(path));
    treebank.insert(treebank.end(), std::make_move_iterator(trees.begin()), std::make_move_iterator(trees.end()));
  }
  QualityFilter filter;
  filter.max_constituent_words = o.max_words;
  if (!o.verb_allowlist.empty()) {
    run.input(o.verb_allowlist);
    std::set<std::string> verbs;
    for (const auto& line : read_lines(o.verb_allowlist)) verbs.insert(verb_lemma(line));
    filter.verb_allowlist = std::move(verbs);
  }
  std::vector<SentencePair> pairs;
  for (ShiftType type : parse_shifts(o.shifts)) {
    auto mined = mine(treebank, type, o.sample_size, o.seed, filter);
    out << to_string(type) << '\t' << mined.size() << '\n';
    pairs.insert(pairs.end(), std::make_move_iterator(mined.begin()), std::make_move_iterator(mined.end()));
  }
  run.config("shifts", split_list(o.shifts));
  run.config("sample_size", o.sample_size);
  run.config("max_constituent_words", o.max_words);
  run.output(o.out, jsonl_of(pairs));
  run.finish(manifest_path_for(o.out));
  return 0;
}

int do_weigh(const Options& o, std::ostream& out) {
  RunRecord run("weigh", o.seed);
  run.input(o.pairs);
  const auto pairs = read_pairs(o.pairs);
  WhitespaceTokenizer whitespace;
  std::vector<const Tokenizer*> tokenizers{&whitespace};
  std::unique_ptr<Backend> backend;
  if (o.with_backend_tokens) {
    backend = make_backend(o.backend);
    record_backend_inputs(run, o.backend);
    run.config("backend", backend_config(o.backend));
    tokenizers.push_back(backend.get());
  }
  const auto weighted = kernels::weigh_pairs(pairs, tokenizers);
  run.output(o.out, jsonl_of(weighted));
  run.finish(manifest_path_for(o.out));
  out << "weighed\t" << weighted.size() << '\n';
  return 0;
}

int do_score(const Options& o, std::ostream& out) {
  RunRecord run("score", o.seed);
  run.input(o.pairs);
  record_backend_inputs(run, o.backend);
  run.config("backend", backend_config(o.backend));
  const auto pairs = read_pairs(o.pairs);
  const auto backend = make_backend(o.backend);
  std::vector<PreferenceRecord> records;
  if (o.record.empty()) {
    records = kernels::score_pairs(*backend, pairs);
  } else {
    RecordingBackend recorder(*backend);
    records = kernels::score_pairs(recorder, pairs);
    std::string fixture;
    for (const auto& s : recorder.recorded()) {
      fixture += to_replay_json(s, recorder.backend_id(), recorder.includes_bos()).dump() + "\n";
    }
    run.output(o.record, fixture);
  }
  run.output(o.out, jsonl_of(records));
  run.finish(manifest_path_for(o.out));
  out << "scored\t" << records.size() << '\t' << backend->backend_id() << '\n';
  return 0;
}

int do_analyze(const Options& o, std::ostream& out) {
  RunRecord run("analyze", o.seed);
  run.input(o.pairs);
  run.input(o.prefs);
  const auto weighted = read_weighted(o.pairs);
  const auto prefs = read_preferences(o.prefs);
  const auto requested = split_list(o.predictors);
  FitOptions fit;
  fit.lambda_grid = parse_grid(o.lambda_grid);
  DesignOptions design;
  design.basis_size = o.basis_size;
  design.slope_predictor = o.slope;
  design.random_effects = !o.no_random_effects;
  run.config("predictors", requested);
  run.config("basis_size", o.basis_size);
  run.config("bins", o.bins);
  run.config("lambda_grid", o.lambda_grid);
  run.config("slope_predictor", o.slope);
  run.config("random_effects", design.random_effects);

  std::set<ShiftType> wanted;
  for (auto t : o.shifts.empty() ? std::vector<ShiftType>(kAllShiftTypes.begin(), kAllShiftTypes.end())
                                 : parse_shifts(o.shifts)) {
    wanted.insert(t);
  }
  const fs::path dir(o.out);
  fs::create_directories(dir);
  for (const auto& group : join_for_analysis(weighted, prefs)) {
    if (!wanted.contains(group.shift_type)) continue;
    auto predictors = resolve_predictors(group, requested);
    // Ratio keys are stored; slope lookup must use the resolved key.
    DesignOptions group_design = design;
    if (group_design.slope_predictor == "token") group_design.slope_predictor = "token:" + group.backend_id;
    const std::string stem = file_stem(group.backend_id) + "_" + to_lower(to_string(group.shift_type));
    AblationRow row;
    if (predictors.size() >= 2) {
      row = ablate(group.rows, predictors, group_design, fit);
    } else {
      row.predictors = predictors;
      try {
        row.full.r_squared = fit_gam(build_design(group.rows, predictors, group_design), fit).adjusted_r_squared;
      } catch (const Error& e) {
        row.full.error = e.what();
      }
    }
    row.backend_id = group.backend_id;
    row.shift_type = std::string(to_string(group.shift_type));
    run.output(dir / ("ablation_" + stem + ".tsv"), ablation_tsv(row, group.rows.size()));
    run.output(dir / ("curve_" + stem + ".tsv"), curve_tsv(group, predictors, o.bins));
    out << "analyzed\t" << group.backend_id << '\t' << to_string(group.shift_type) << '\t' << group.rows.size()
        << '\n';
  }
  run.finish(dir / "manifest.json");
  return 0;
}

int do_correlate(const Options& o, std::ostream& out) {
  RunRecord run("correlate", o.seed);
  run.input(o.prefs);
  run.input(o.aggregates);
  std::vector<SentencePair> pairs;
  if (!o.pairs.empty()) {
    run.input(o.pairs);
    pairs = read_pairs(o.pairs);
  }
  const auto rows = correlate(read_preferences(o.prefs), read_aggregates(o.aggregates), pairs);
  run.output(o.out, correlation_tsv(rows));
  run.finish(manifest_path_for(o.out));
  out << "correlated\t" << rows.size() << '\n';
  return 0;
}

StudyServer* g_server = nullptr;

extern "C" void stop_server(int) {
  if (g_server) g_server->stop();
}

int do_serve(const Options& o, std::ostream& out) {
  StudyConfig config;
  config.seed = o.seed;
  config.items_per_assignment = o.items;
  config.attention_checks = o.attention_checks;
  config.max_assignments_per_pair = o.max_per_pair;
  StudyStore store(read_pairs(o.pairs), fs::path(o.data_dir), config);
  StudyServer server(store);
  const int port = server.bind(o.host, o.port);
  if (port < 0) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  out << "serving\thttp://" << o.host << ':' << port << '\n' << std::flush;
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  server.listen_after_bind();
  g_server = nullptr;
  return 0;
}

}  // namespace

std::unique_ptr<Backend> make_backend(const BackendOptions& options) {
  if (options.kind == "ngram") {
    if (options.train.empty()) throw ValidationError("the ngram backend needs --train");
    const auto corpus = read_lines(options.train);
    return std::make_unique<NGramModel>(train_ngram(corpus, options.order, options.delta, options.backend_id));
  }
  if (options.kind == "http") {
    HttpBackendConfig config = HttpBackendConfig::from_environment();
    if (!options.endpoint.empty()) config.url = options.endpoint;
    if (!options.backend_id.empty()) config.backend_id = options.backend_id;
    config.cache_path = options.cache;
    if (config.url.empty()) throw ValidationError("the http backend needs --endpoint or SHIFTBENCH_LM_URL");
    return std::make_unique<HttpBackend>(config);
  }
  if (options.kind == "replay") {
    if (options.replay.empty()) throw ValidationError("the replay backend needs --replay");
    return std::make_unique<ReplayBackend>(ReplayBackend::load_file(options.replay));
  }
  throw ValidationError("unknown backend '" + options.kind + "'");
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constituent-shift minimal pairs: generation, mining, weighting, scoring and analysis"};
  app.name("shiftbench");
  app.allow_windows_style_options(false);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SHIFTBENCH_VERSION));
  Options o;

  auto* generate = app.add_subcommand("generate", "expand a lexicon into synthetic pairs");
  generate->add_option("--lexicon", o.lexicon, "lexicon JSON path, or 'default'")->capture_default_str();
  generate->add_option("--shift", o.shifts, "hnps, pm, da, mpp or all")->required();
  generate->add_option("--out", o.out, "pairs output (JSON Lines)")->required();
  generate->add_option("--seed", o.seed)->capture_default_str();

  auto* mine_cmd = app.add_subcommand("mine", "extract pairs from bracketed treebank files");
  mine_cmd->add_option("--treebank", o.treebanks, "bracketed treebank file")->required()->check(CLI::ExistingFile);
  mine_cmd->add_option("--shift", o.shifts)->required();
  mine_cmd->add_option("--sample-size", o.sample_size)->capture_default_str();
  mine_cmd->add_option("--max-words", o.max_words, "longest allowed constituent")->capture_default_str();
  mine_cmd->add_option("--verb-allowlist", o.verb_allowlist, "one verb per line")->check(CLI::ExistingFile);
  mine_cmd->add_option("--seed", o.seed)->capture_default_str();
  mine_cmd->add_option("--out", o.out)->required();

  auto* weigh_cmd = app.add_subcommand("weigh", "annotate pairs with constituent weights and ratios");
  weigh_cmd->add_option("--pairs", o.pairs)->required()->check(CLI::ExistingFile);
  weigh_cmd->add_option("--out", o.out)->required();
  weigh_cmd->add_option("--seed", o.seed)->capture_default_str();
  add_backend_flags(weigh_cmd, o, false);

  auto* score_cmd = app.add_subcommand("score", "score both orders of every pair");
  score_cmd->add_option("--pairs", o.pairs)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--out", o.out)->required();
  score_cmd->add_option("--record", o.record, "write a replay fixture of every scored text");
  score_cmd->add_option("--seed", o.seed)->capture_default_str();
  add_backend_flags(score_cmd, o, true);

  auto* analyze_cmd = app.add_subcommand("analyze", "fit additive models, ablate predictors, bin curves");
  analyze_cmd->add_option("--pairs", o.pairs, "weighted pairs")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--prefs", o.prefs, "preference records")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", o.out, "output directory")->required();
  analyze_cmd->add_option("--shift", o.shifts);
  analyze_cmd->add_option("--predictors", o.predictors, "comma list of token, word, syllable, modifier");
  analyze_cmd->add_option("--basis-size", o.basis_size)->capture_default_str()->check(CLI::Range(4, 100));
  analyze_cmd->add_option("--bins", o.bins)->capture_default_str()->check(CLI::Range(1, 1000));
  analyze_cmd->add_option("--lambda-grid", o.lambda_grid, "lower:upper:points")->capture_default_str();
  analyze_cmd->add_option("--slope-predictor", o.slope)->capture_default_str();
  analyze_cmd->add_flag("--no-random-effects", o.no_random_effects);
  analyze_cmd->add_option("--seed", o.seed)->capture_default_str();

  auto* correlate_cmd = app.add_subcommand("correlate", "rank-correlate model and human preferences");
  correlate_cmd->add_option("--prefs", o.prefs)->required()->check(CLI::ExistingFile);
  correlate_cmd->add_option("--aggregates", o.aggregates)->required()->check(CLI::ExistingFile);
  correlate_cmd->add_option("--pairs", o.pairs)->check(CLI::ExistingFile);
  correlate_cmd->add_option("--out", o.out)->required();
  correlate_cmd->add_option("--seed", o.seed)->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "run the judgment-collection service");
  serve_cmd->add_option("--pairs", o.pairs, "pair pool")->required()->check(CLI::ExistingFile);
  serve_cmd->add_option("--data-dir", o.data_dir)->required();
  serve_cmd->add_option("--host", o.host)->capture_default_str();
  serve_cmd->add_option("--port", o.port)->capture_default_str();
  serve_cmd->add_option("--items", o.items)->capture_default_str();
  serve_cmd->add_option("--attention-checks", o.attention_checks)->capture_default_str();
  serve_cmd->add_option("--max-per-pair", o.max_per_pair)->capture_default_str();
  serve_cmd->add_option("--seed", o.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  o.with_backend_tokens = weigh_cmd->parsed() && weigh_cmd->count("--backend") > 0;

  try {
    if (generate->parsed()) return do_generate(o, out);
    if (mine_cmd->parsed()) return do_mine(o, out);
    if (weigh_cmd->parsed()) return do_weigh(o, out);
    if (score_cmd->parsed()) return do_score(o, out);
    if (analyze_cmd->parsed()) return do_analyze(o, out);
    if (correlate_cmd->parsed()) return do_correlate(o, out);
    if (serve_cmd->parsed()) return do_serve(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace shiftbench::cli
