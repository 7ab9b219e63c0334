#include "shiftbench/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "shiftbench/error.hpp"
#include "shiftbench/jsonl.hpp"

namespace shiftbench {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

nlohmann::ordered_json to_json(const Manifest& m) {
  auto entries = [](const std::vector<ManifestEntry>& list) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : list) out.push_back({{"path", e.path}, {"sha256", e.sha256}});
    return out;
  };
  return {{"tool", m.tool},
          {"version", m.version},
          {"subcommand", m.subcommand},
          {"seed", m.seed},
          {"config", m.config},
          {"inputs", entries(m.inputs)},
          {"outputs", entries(m.outputs)},
          {"created_at", m.created_at}};
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  write_text_file(path, to_json(manifest).dump(2) + "\n");
}

}  // namespace shiftbench
