#include "shiftbench/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "shiftbench/error.hpp"
#include "shiftbench/text.hpp"

namespace shiftbench {
namespace {

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

std::string format_cell(const AblationCell& cell) {
  return cell.r_squared ? format_number(*cell.r_squared) : "NA";
}

}  // namespace

std::vector<AnalysisGroup> join_for_analysis(std::span<const WeightedPair> pairs,
                                             std::span<const PreferenceRecord> preferences) {
  std::map<std::string, const WeightedPair*> by_id;
  for (const auto& p : pairs) by_id[p.pair.id] = &p;
  std::map<std::pair<std::string, ShiftType>, AnalysisGroup> groups;
  for (const auto& pref : preferences) {
    const auto it = by_id.find(pref.pair_id);
    if (it == by_id.end()) throw ValidationError("preference for unknown pair '" + pref.pair_id + "'");
    const WeightedPair& wp = *it->second;
    AnalysisGroup& g = groups[{pref.backend_id, wp.pair.shift_type}];
    g.backend_id = pref.backend_id;
    g.shift_type = wp.pair.shift_type;
    g.mined = g.mined || wp.pair.source == PairSource::kMined;
    g.rows.push_back({wp.pair.id, wp.pair.verb, pref.m_preference, wp.ratios.values});
  }
  std::vector<AnalysisGroup> out;
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

std::vector<std::string> resolve_predictors(const AnalysisGroup& group, std::span<const std::string> requested) {
  auto everywhere = [&](const std::string& key) {
    return std::all_of(group.rows.begin(), group.rows.end(),
                       [&](const AnalysisRow& r) { return r.predictors.contains(key); });
  };
  const std::string token_key = "token:" + group.backend_id;
  std::vector<std::string> out;
  if (requested.empty()) {
    for (const std::string key : {token_key, std::string("word"), std::string("syllable"), std::string("modifier")}) {
      if (everywhere(key)) out.push_back(key);
    }
    return out;
  }
  for (const auto& name : requested) {
    const std::string key = name == "token" ? token_key : name;
    if (name == "modifier" && group.mined) {
      throw ValidationError("modifier ratio is not defined for mined pairs");
    }
    if (!everywhere(key)) {
      throw ValidationError("predictor '" + name + "' is missing for backend " + group.backend_id + ", shift " +
                            std::string(to_string(group.shift_type)));
    }
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
  }
  return out;
}

std::string display_name(const std::string& predictor_key) {
  return predictor_key.rfind("token:", 0) == 0 ? "token" : predictor_key;
}

std::string ablation_tsv(const AblationRow& row, std::size_t n) {
  std::ostringstream out;
  out << "backend_id\tshift_type\tn\tfull_adj_r2";
  for (const auto& p : row.predictors) out << "\tdrop_" << display_name(p) << "_adj_r2";
  for (const auto& p : row.predictors) out << "\tdelta_" << display_name(p);
  out << "\terrors\n";
  out << row.backend_id << '\t' << row.shift_type << '\t' << n << '\t' << format_cell(row.full);
  for (const auto& p : row.predictors) out << '\t' << format_cell(row.dropped.at(p));
  for (const auto& p : row.predictors) {
    const auto& cell = row.dropped.at(p);
    out << '\t'
        << (row.full.r_squared && cell.r_squared ? format_number(*row.full.r_squared - *cell.r_squared) : "NA");
  }
  std::string errors;
  auto note = [&](const std::string& where, const AblationCell& cell) {
    if (cell.error.empty()) return;
    if (!errors.empty()) errors += "; ";
    errors += where + ": " + cell.error;
  };
  note("full", row.full);
  for (const auto& p : row.predictors) note("drop_" + display_name(p), row.dropped.at(p));
  out << '\t' << (errors.empty() ? "-" : errors) << '\n';
  return out.str();
}

std::string curve_tsv(const AnalysisGroup& group, std::span<const std::string> predictors, int bins) {
  std::ostringstream out;
  out << "metric\tbin_center\tbin_lower\tbin_upper\tmean_m_preference\tcount\tstderr\n";
  std::vector<double> y;
  for (const auto& r : group.rows) y.push_back(r.response);
  for (const auto& key : predictors) {
    std::vector<double> x;
    for (const auto& r : group.rows) x.push_back(r.predictors.at(key));
    for (const auto& p : preference_curve(x, y, bins)) {
      out << display_name(key) << '\t' << format_number(p.center) << '\t' << format_number(p.lower) << '\t'
          << format_number(p.upper) << '\t' << format_number(p.mean) << '\t' << p.count << '\t'
          << format_number(p.std_error) << '\n';
    }
  }
  return out.str();
}

std::vector<CorrelationRow> correlate(std::span<const PreferenceRecord> preferences,
                                      std::span<const AggregateJudgment> aggregates,
                                      std::span<const SentencePair> pairs) {
  std::map<std::string, double> human;
  for (const auto& a : aggregates) {
    if (!a.excluded) human[a.pair_id] = a.mean;
  }
  std::map<std::string, std::string> shift_of;
  for (const auto& p : pairs) shift_of[p.id] = std::string(to_string(p.shift_type));
  auto shift_for = [&](const std::string& id) -> std::string {
    if (auto it = shift_of.find(id); it != shift_of.end()) return it->second;
    const auto dash = id.find('-');
    try {
      return std::string(to_string(parse_shift_type(id.substr(0, dash))));
    } catch (const ValidationError&) {
      return "UNKNOWN";
    }
  };

  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> cells;
  for (const auto& pref : preferences) {
    const auto it = human.find(pref.pair_id);
    if (it == human.end()) continue;
    for (const std::string shift : {shift_for(pref.pair_id), std::string("ALL")}) {
      auto& [model, people] = cells[{pref.backend_id, shift}];
      model.push_back(pref.m_preference);
      people.push_back(it->second);
    }
  }
  std::vector<CorrelationRow> out;
  for (const auto& [key, values] : cells) {
    CorrelationRow row{key.first, key.second, values.first.size(), std::nullopt, ""};
    try {
      row.result = spearman(values.first, values.second);
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string correlation_tsv(std::span<const CorrelationRow> rows) {
  std::ostringstream out;
  out << "backend_id\tshift_type\tn\tspearman_rho\tabs_rho\terror\n";
  for (const auto& r : rows) {
    out << r.backend_id << '\t' << r.shift_type << '\t' << r.n << '\t'
        << (r.result ? format_number(r.result->rho) : "NA") << '\t'
        << (r.result ? format_number(r.result->abs_rho) : "NA") << '\t' << (r.error.empty() ? "-" : r.error) << '\n';
  }
  return out.str();
}

std::string file_stem(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(keep ? c : '_');
  }
  return out;
}

}  // namespace shiftbench
