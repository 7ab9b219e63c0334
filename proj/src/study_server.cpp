#include "shiftbench/study_server.hpp"

#include "httplib.h"
#include "shiftbench/error.hpp"

namespace shiftbench {
namespace {

void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

template <class Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, e.what());
  } catch (const ExhaustedError& e) {
    send_error(res, 503, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

StudyServer::StudyServer(StudyStore& store, std::string allowed_origin)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  server_->set_default_headers({{"Access-Control-Allow-Origin", allowed_origin},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server_->Get("/api/assignment", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string participant = req.get_param_value("participant");
      if (participant.empty()) throw ValidationError("query parameter 'participant' is required");
      send_json(res, 200, to_json(store_.create_assignment(participant)));
    });
  });

  server_->Post("/api/judgments", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      nlohmann::json body;
      try {
        body = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("request body is not JSON: ") + e.what());
      }
      JudgmentRecord record = judgment_from_json(body);
      store_.submit(record);
      send_json(res, 201, {{"status", "accepted"}});
    });
  });

  server_->Get("/api/aggregates", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& a : store_.aggregates()) out.push_back(to_json(a));
      send_json(res, 200, out);
    });
  });
}

StudyServer::~StudyServer() { stop(); }

int StudyServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool StudyServer::listen_after_bind() { return server_->listen_after_bind(); }

void StudyServer::stop() {
  if (server_) server_->stop();
}

void StudyServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace shiftbench
