#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace shiftbench {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string path;
  std::string sha256;
};

// Record of one CLI run. created_at is the only field that differs between
// two runs with identical config and inputs.
struct Manifest {
  std::string tool = "shiftbench";
  std::string version;
  std::string subcommand;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<ManifestEntry> inputs;
  std::vector<ManifestEntry> outputs;
  std::string created_at;
};

nlohmann::ordered_json to_json(const Manifest& manifest);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace shiftbench
