#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace shiftbench {

// One JSON document per non-blank line. Parse failures throw ParseError with
// the byte offset of the offending line.
std::vector<nlohmann::json> read_jsonl(std::istream& in);
std::vector<nlohmann::json> read_jsonl_file(const std::filesystem::path& path);

template <class Range>
void write_jsonl(std::ostream& out, const Range& documents) {
  for (const auto& doc : documents) out << doc.dump() << '\n';
}

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace shiftbench
