#pragma once

#include "pbo/driver.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace pbo {

/// Error surfaced to HTTP clients with its status code.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message, nlohmann::json details = nullptr)
      : std::runtime_error(message), status_(status), code_(std::move(code)), details_(std::move(details)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }
  nlohmann::json to_json() const;

 private:
  int status_;
  std::string code_;
  nlohmann::json details_;
};

/// Validated session request: bounds, variable metadata and solver overrides.
struct SessionRequest {
  Vector lower;
  Vector upper;
  std::vector<std::string> names;
  std::vector<std::string> units;
  SolverConfig config;
  nlohmann::json normalized;  // what gets persisted
};

/// Throws ServiceError(422) listing every offending field.
SessionRequest parse_session_request(const nlohmann::json& body, int default_budget);

struct ServiceOptions {
  std::filesystem::path data_dir = "pbo-data";
  int default_budget = 50;
  /// Run inner solves on a background thread per session.
  bool async = true;
};

class SessionManager {
 public:
  explicit SessionManager(ServiceOptions options);
  ~SessionManager();

  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  /// Replays every event log found in the data directory.
  void load_existing();

  nlohmann::json create(const nlohmann::json& request);
  nlohmann::json get(const std::string& id);
  nlohmann::json answer(const std::string& id, const nlohmann::json& body);

  /// Blocks until the session has no background solve in flight.
  void wait_idle(const std::string& id);
  std::vector<std::string> session_ids() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  void launch_compute(const std::shared_ptr<Session>& s);
  std::shared_ptr<Session> build(const std::string& id, const nlohmann::json& request);

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// POST /sessions, GET /sessions/{id}, POST /sessions/{id}/answer.
void register_routes(httplib::Server& server, SessionManager& manager);

}  // namespace pbo
