#include "shiftbench/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "shiftbench/error.hpp"

namespace shiftbench {

std::vector<nlohmann::json> read_jsonl(std::istream& in) {
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON line: ") + e.what(), line_start + e.byte - 1);
    }
  }
  return out;
}

std::vector<nlohmann::json> read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_jsonl(in);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw ValidationError("cannot write " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace shiftbench
