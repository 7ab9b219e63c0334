#pragma once

#include <string>
#include <utility>
#include <vector>

namespace shiftbench::testing {

// Dictionary syllable counts (pronunciation-dictionary verified).
inline const std::vector<std::pair<std::string, int>>& syllable_oracle() {
  static const std::vector<std::pair<std::string, int>> words = {
      {"with", 1},    {"her", 1},       {"grandmother", 3}, {"around", 2},      {"the", 1},
      {"decorated", 4}, {"entryway", 3}, {"garden", 2},     {"large", 1},       {"fountain", 2},
      {"i", 1},       {"she", 1},       {"we", 1},          {"they", 1},        {"met", 1},
      {"saw", 1},     {"noticed", 2},   {"greeted", 2},     {"photographed", 3}, {"yesterday", 3},
      {"man", 1},     {"woman", 2},     {"teacher", 2},     {"doctor", 2},      {"student", 2},
      {"artist", 2},  {"at", 1},        {"park", 1},        {"tall", 1},        {"from", 1},
      {"city", 2},    {"friendly", 2},  {"yellow", 2},      {"umbrella", 3},    {"near", 1},
      {"he", 1},      {"looked", 1},    {"wrote", 1},       {"picked", 1},      {"typed", 1},
      {"printed", 2}, {"on", 1},        {"computer", 3},    {"up", 1},          {"question", 2},
      {"answer", 2},  {"address", 2},   {"number", 2},      {"letter", 2},      {"recipe", 3},
  };
  return words;
}

}  // namespace shiftbench::testing
