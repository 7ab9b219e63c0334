#include "shiftbench/tree.hpp"

#include <cctype>

#include "shiftbench/error.hpp"

namespace shiftbench {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class TreeReader {
 public:
  explicit TreeReader(std::string_view source) : src_(source) {}

  std::vector<ParseNode> read_all() {
    std::vector<ParseNode> trees;
    skip_space();
    while (pos_ < src_.size()) {
      if (src_[pos_] != '(') throw ParseError("expected '(' at start of tree", pos_);
      trees.push_back(read_top());
      skip_space();
    }
    return trees;
  }

 private:
  ParseNode read_top() {
    const std::size_t open = pos_;
    ++pos_;
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      // Unlabeled wrapper: must contain exactly one tree.
      ParseNode inner = read_node();
      skip_space();
      if (pos_ >= src_.size()) throw ParseError("unbalanced parentheses: unexpected end of input", pos_);
      if (src_[pos_] != ')') throw ParseError("unlabeled wrapper must contain exactly one tree", open);
      ++pos_;
      assign_spans(inner);
      return inner;
    }
    pos_ = open;
    ParseNode node = read_node();
    assign_spans(node);
    return node;
  }

  ParseNode read_node() {
    // pos_ is at '('.
    const std::size_t open = pos_;
    ++pos_;
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unbalanced parentheses: unexpected end of input", pos_);
    if (src_[pos_] == '(' || src_[pos_] == ')') throw ParseError("empty label", pos_);
    ParseNode node;
    node.label = read_atom();
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) throw ParseError("unbalanced parentheses: unexpected end of input", pos_);
      const char c = src_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (node.token) throw ParseError("node mixes a terminal with subtrees", pos_);
        node.children.push_back(read_node());
      } else {
        const std::size_t at = pos_;
        std::string atom = read_atom();
        if (node.token || !node.children.empty()) {
          throw ParseError("node '" + node.label + "' has more than one terminal or mixes terminals with subtrees", at);
        }
        node.token = std::move(atom);
      }
    }
    if (!node.token && node.children.empty()) throw ParseError("node '" + node.label + "' is empty", open);
    return node;
  }

  std::string read_atom() {
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '(' && src_[pos_] != ')') ++pos_;
    return std::string(src_.substr(begin, pos_ - begin));
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void append_bracketed(const ParseNode& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.token) {
    out += ' ';
    out += *node.token;
  }
  for (const auto& child : node.children) {
    out += ' ';
    append_bracketed(child, out);
  }
  out += ')';
}

void append_yield(const ParseNode& node, std::vector<std::string>& out) {
  if (node.token) {
    if (!is_empty_category(node)) out.push_back(*node.token);
    return;
  }
  for (const auto& child : node.children) append_yield(child, out);
}

}  // namespace

std::vector<ParseNode> parse_treebank(std::string_view source) {
  return TreeReader(source).read_all();
}

std::string to_bracketed(const ParseNode& node) {
  std::string out;
  append_bracketed(node, out);
  return out;
}

std::size_t assign_spans(ParseNode& node, std::size_t start) {
  std::size_t end = start;
  if (node.token) {
    end = is_empty_category(node) ? start : start + 1;
  } else {
    for (auto& child : node.children) end = assign_spans(child, end);
  }
  node.span = {start, end};
  return end;
}

std::vector<std::string> yield(const ParseNode& node) {
  std::vector<std::string> out;
  append_yield(node, out);
  return out;
}

std::string_view category(std::string_view label) {
  if (label.empty() || label.front() == '-') return label;
  const auto cut = label.find_first_of("-=");
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

bool has_function_tag(std::string_view label, std::string_view tag) {
  if (label.empty() || label.front() == '-') return false;
  std::size_t pos = label.find_first_of("-=");
  while (pos != std::string_view::npos) {
    const std::size_t next = label.find_first_of("-=", pos + 1);
    const auto part = label.substr(pos + 1, next == std::string_view::npos ? std::string_view::npos : next - pos - 1);
    if (label[pos] == '-' && part == tag) return true;
    pos = next;
  }
  return false;
}

bool is_empty_category(const ParseNode& node) { return node.label == "-NONE-"; }

bool contains_empty_category(const ParseNode& node) {
  if (is_empty_category(node)) return true;
  for (const auto& child : node.children) {
    if (contains_empty_category(child)) return true;
  }
  return false;
}

std::string normalize_bracketing(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty() && c != '(' && c != ')' && out.back() != '(' && out.back() != ')') {
      out += ' ';
    }
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace shiftbench
