#pragma once

#include <memory>
#include <string>

#include "shiftbench/study.hpp"

namespace httplib {
class Server;
}

namespace shiftbench {

// HTTP front end for a StudyStore:
//   GET  /api/assignment?participant=ID  200 | 400 | 409 (already assigned) | 503 (pool exhausted)
//   POST /api/judgments                  201 | 400 | 404 | 409 (duplicate)
//   GET  /api/aggregates                 200
// Error bodies are {"error": message}.
class StudyServer {
 public:
  explicit StudyServer(StudyStore& store, std::string allowed_origin = "*");
  ~StudyServer();
  StudyServer(const StudyServer&) = delete;
  StudyServer& operator=(const StudyServer&) = delete;

  // Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port = 0);
  // Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  StudyStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace shiftbench
