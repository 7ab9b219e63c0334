#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftbench {

// Joins treebank tokens into a surface string: single spaces, except no space
// before .,;?! and before clitics ("n't", "'s", ...).
std::string detokenize(std::span<const std::string> tokens);

std::vector<std::string> split_whitespace(std::string_view text);

// Whitespace tokens with punctuation stripped from both edges. Tokens with no
// alphabetic character are dropped.
std::vector<std::string> word_tokens(std::string_view text);

std::string to_lower(std::string_view text);
bool has_alpha(std::string_view text);

}  // namespace shiftbench
