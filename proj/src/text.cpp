#include "shiftbench/text.hpp"

#include <algorithm>
#include <cctype>

namespace shiftbench {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool attaches_left(const std::string& token) {
  if (token.empty()) return false;
  if (token.size() == 1 && std::string_view(".,;?!").find(token[0]) != std::string_view::npos) {
    return true;
  }
  if (token == "n't" || token == "N'T") return true;
  return token.front() == '\'' && token.size() > 1 && is_alpha(token[1]);
}

}  // namespace

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty() && !attaches_left(token)) out += ' ';
    out += token;
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& raw : split_whitespace(text)) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && !is_alnum(raw[begin]) && raw[begin] != '\'') ++begin;
    while (end > begin && !is_alnum(raw[end - 1])) --end;
    std::string token = raw.substr(begin, end - begin);
    if (has_alpha(token)) out.push_back(std::move(token));
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool has_alpha(std::string_view text) {
  return std::any_of(text.begin(), text.end(), is_alpha);
}

}  // namespace shiftbench
