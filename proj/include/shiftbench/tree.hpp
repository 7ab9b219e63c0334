#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftbench {

// Half-open range of terminal positions. Empty categories occupy no positions.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const Span&) const = default;
};

// One node of a bracketed constituency tree. Preterminals carry `token` and
// no children; every other node has at least one child.
struct ParseNode {
  std::string label;
  std::vector<ParseNode> children;
  std::optional<std::string> token;
  Span span;

  bool is_preterminal() const { return token.has_value(); }
  bool operator==(const ParseNode&) const = default;
};

// Parses zero or more bracketed trees. A label-less outer wrapper, as in
// Penn Treebank ".mrg" files ("( (S ...) )"), is unwrapped.
std::vector<ParseNode> parse_treebank(std::string_view source);

std::string to_bracketed(const ParseNode& node);

// Assigns spans bottom-up; returns the end position.
std::size_t assign_spans(ParseNode& node, std::size_t start = 0);

// Left-to-right terminals, empty categories excluded.
std::vector<std::string> yield(const ParseNode& node);

// "NP-SBJ-1" -> "NP", "PP-LOC=2" -> "PP"; "-NONE-" and "-LRB-" are kept whole.
std::string_view category(std::string_view label);
bool has_function_tag(std::string_view label, std::string_view tag);

bool is_empty_category(const ParseNode& node);
bool contains_empty_category(const ParseNode& node);

// Keeps a single space only between two atoms; used to compare bracketed
// strings modulo whitespace.
std::string normalize_bracketing(std::string_view text);

}  // namespace shiftbench
