#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shiftbench/backend.hpp"

namespace shiftbench::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Entry point shared by the executable and tests. `args` excludes the program
// name. Returns 0 on success, 2 on a usage error and 1 on a module error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

struct BackendOptions {
  std::string kind = "ngram";  // ngram | http | replay
  std::string train;           // ngram training corpus, one sentence per line
  int order = 2;
  double delta = 0.1;
  std::string endpoint;  // http; falls back to SHIFTBENCH_LM_URL
  std::string cache;     // http response cache
  std::string replay;    // replay fixture
  std::string backend_id;
};

std::unique_ptr<Backend> make_backend(const BackendOptions& options);

}  // namespace shiftbench::cli
