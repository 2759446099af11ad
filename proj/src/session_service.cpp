#include "pbo/session_service.hpp"

#include <httplib.h>

#include <cmath>
#include <condition_variable>
#include <fstream>
#include <random>
#include <sstream>

namespace pbo {

using nlohmann::json;

namespace {

constexpr int kMaxDimension = 20;
constexpr const char* kConvention =
    "-1: first is preferred, 0: indifferent, +1: second is preferred";

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string new_session_id() {
  std::random_device rd;
  std::uniform_int_distribution<int> hex(0, 15);
  std::string id;
  for (int i = 0; i < 16; ++i) id.push_back("0123456789abcdef"[hex(rd)]);
  return id;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

ServiceError not_found(const std::string& id) {
  return ServiceError(404, "not_found", "no session with id '" + id + "'");
}

ServiceError conflict(const std::string& code, const std::string& message) {
  return ServiceError(409, code, message);
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::InitialQueries:
      return "initial_queries";
    case Phase::Iterating:
      return "iterating";
    case Phase::Done:
      return "done";
  }
  return "unknown";
}

}  // namespace

json ServiceError::to_json() const {
  json j{{"error", code_}, {"message", what()}};
  if (!details_.is_null()) j["details"] = details_;
  return j;
}

SessionRequest parse_session_request(const json& body, int default_budget) {
  if (!body.is_object()) throw ServiceError(422, "validation_error", "request body must be a JSON object");
  json errors = json::array();
  auto fail = [&](const std::string& field, const std::string& msg) {
    errors.push_back({{"field", field}, {"message", msg}});
  };

  SessionRequest req;
  auto read_vector = [&](const char* key, Vector& out) {
    if (!body.contains(key) || !body[key].is_array()) {
      fail(key, "required array of numbers");
      return;
    }
    const auto& a = body[key];
    out.resize(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number() || !std::isfinite(a[i].get<double>())) {
        fail(std::string(key) + "[" + std::to_string(i) + "]", "must be a finite number");
        out[static_cast<Eigen::Index>(i)] = 0.0;
      } else {
        out[static_cast<Eigen::Index>(i)] = a[i].get<double>();
      }
    }
  };
  read_vector("lower", req.lower);
  read_vector("upper", req.upper);
  if (!errors.empty()) throw ServiceError(422, "validation_error", "invalid bounds", errors);

  const auto n = req.lower.size();
  if (n != req.upper.size()) fail("upper", "must have the same length as lower");
  if (n < 1 || n > kMaxDimension) fail("lower", "dimension must be between 1 and 20");
  if (!errors.empty()) throw ServiceError(422, "validation_error", "invalid bounds", errors);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(req.lower[i] < req.upper[i])) {
      fail("lower[" + std::to_string(i) + "]", "must be strictly less than upper[" + std::to_string(i) + "]");
    }
  }

  auto read_strings = [&](const char* key, std::vector<std::string>& out, const std::string& prefix) {
    out.clear();
    if (body.contains(key)) {
      const auto& a = body[key];
      if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n) {
        fail(key, "must be an array with one string per variable");
        return;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_string()) {
          fail(std::string(key) + "[" + std::to_string(i) + "]", "must be a string");
          out.emplace_back();
        } else {
          out.push_back(a[i].get<std::string>());
        }
      }
    } else {
      for (Eigen::Index i = 0; i < n; ++i) out.push_back(prefix.empty() ? "" : prefix + std::to_string(i + 1));
    }
  };
  read_strings("names", req.names, "x");
  read_strings("units", req.units, "");

  SolverConfig& c = req.config;
  c = SolverConfig::defaults_for(n);
  c.n_max = default_budget;
  auto read_int = [&](const char* key, int& out) {
    if (!body.contains(key)) return;
    if (!body[key].is_number_integer()) {
      fail(key, "must be an integer");
      return;
    }
    out = body[key].get<int>();
  };
  auto read_double = [&](const char* key, double& out) {
    if (!body.contains(key)) return;
    if (!body[key].is_number()) {
      fail(key, "must be a number");
      return;
    }
    out = body[key].get<double>();
  };
  read_int("budget", c.n_max);
  read_int("n_init", c.n_init);
  read_int("k_aug", c.k_aug);
  read_int("pso_swarm", c.pso_swarm);
  read_int("pso_iters", c.pso_iters);
  read_double("sigma", c.sigma);
  read_double("lambda", c.lambda);
  read_double("epsilon_init", c.epsilon_init);
  read_double("legacy_delta", c.legacy_delta);

  if (body.contains("seed")) {
    if (!body["seed"].is_number_unsigned()) {
      fail("seed", "must be a non-negative integer");
    } else {
      c.seed = body["seed"].get<std::uint64_t>();
    }
  } else {
    c.seed = random_seed();
  }
  if (body.contains("variant")) {
    try {
      c.variant = acquisition_variant_from_string(body["variant"].get<std::string>());
    } catch (const std::exception&) {
      fail("variant", "must be one of glispr, glisp, cglisp");
    }
  }
  if (body.contains("radial")) {
    const auto kind = body["radial"].is_string() ? radial_kind_from_string(body["radial"].get<std::string>())
                                                 : std::nullopt;
    if (kind) {
      c.kind = *kind;
    } else {
      fail("radial", "unknown radial function");
    }
  }
  if (body.contains("delta_cycle")) {
    try {
      c.delta_cycle = DeltaCycle(body["delta_cycle"].get<std::vector<double>>());
    } catch (const std::exception&) {
      fail("delta_cycle", "must be a non-empty array of numbers in [0, 1]");
    }
  }
  if (errors.empty()) {
    try {
      c.validate();
    } catch (const InputError& e) {
      fail("config", e.what());
    }
  }
  if (!errors.empty()) throw ServiceError(422, "validation_error", "invalid session request", errors);

  req.normalized = {{"lower", vec_json(req.lower)},
                    {"upper", vec_json(req.upper)},
                    {"names", req.names},
                    {"units", req.units},
                    {"budget", c.n_max},
                    {"n_init", c.n_init},
                    {"k_aug", c.k_aug},
                    {"pso_swarm", c.pso_swarm},
                    {"pso_iters", c.pso_iters},
                    {"sigma", c.sigma},
                    {"lambda", c.lambda},
                    {"epsilon_init", c.epsilon_init},
                    {"legacy_delta", c.legacy_delta},
                    {"seed", c.seed},
                    {"variant", std::string(to_string(c.variant))},
                    {"radial", std::string(to_string(c.kind))},
                    {"delta_cycle", c.delta_cycle.sequence()}};
  return req;
}

struct SessionManager::Session {
  std::string id;
  SessionRequest request;
  SessionState state;
  std::filesystem::path log_path;

  std::mutex m;
  std::condition_variable cv;
  bool computing = false;
  std::string failure;
  std::thread worker;

  const SolverConfig& cfg() const { return request.config; }
  std::string token() const { return "q" + std::to_string(state.history.size()); }

  void append(const json& event) {
    std::ofstream os(log_path, std::ios::app);
    os << event.dump() << '\n';
    os.flush();
    if (!os) throw ServiceError(500, "storage_error", "failed to append to session log");
  }

  json point(const Vector& x) const {
    json values = vec_json(x);
    json named = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      named.push_back({{"name", request.names[static_cast<std::size_t>(i)]},
                       {"unit", request.units[static_cast<std::size_t>(i)]},
                       {"value", x[i]}});
    }
    return {{"values", values}, {"variables", named}};
  }

  // Caller holds m.
  json describe(bool with_history) const {
    const Phase ph = phase(state, cfg());
    json d;
    d["id"] = id;
    d["phase"] = !failure.empty() ? "failed" : computing ? "computing" : phase_name(ph);
    d["config"] = request.normalized;
    d["queries_answered"] = static_cast<int>(state.history.size());
    d["queries_total"] = cfg().n_max - 1;
    d["preference_convention"] = kConvention;
    if (!failure.empty()) d["failure"] = failure;
    const auto q = computing ? std::nullopt : pending_query(state, cfg());
    if (q) {
      json pq;
      pq["token"] = token();
      pq["first"] = point(q->first);
      pq["second"] = point(q->second);
      const bool initial = ph == Phase::InitialQueries;
      pq["first"]["label"] = initial ? "incumbent" : "candidate";
      pq["second"]["label"] = initial ? "candidate" : "incumbent";
      pq["iteration"] = initial ? 0 : state.k + 1;
      if (!initial) pq["delta"] = state.proposal_delta;
      d["pending_query"] = pq;
    } else {
      d["pending_query"] = nullptr;
    }
    d["best"] = point(best_point(state));
    d["best"]["index"] = state.dataset.best_index;
    if (ph == Phase::Done && failure.empty()) d["x_best"] = vec_json(best_point(state));
    if (with_history) {
      json h = json::array();
      for (const auto& e : state.history) {
        json item{{"iteration", e.iteration},
                  {"first_index", e.first_index},
                  {"second_index", e.second_index},
                  {"answer", e.answer},
                  {"best_index", e.best_index},
                  {"proposed", vec_json(e.proposed_x)},
                  {"best", vec_json(state.rescaler.inverse(
                               state.dataset.samples[static_cast<std::size_t>(e.best_index)]))}};
        item["delta"] = e.delta ? json(*e.delta) : json(nullptr);
        h.push_back(std::move(item));
      }
      d["history"] = std::move(h);
    }
    return d;
  }
};

SessionManager::SessionManager(ServiceOptions options) : options_(std::move(options)) {
  std::filesystem::create_directories(options_.data_dir);
}

SessionManager::~SessionManager() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    sessions.swap(sessions_);
  }
  for (auto& [id, s] : sessions) {
    if (s->worker.joinable()) s->worker.join();
  }
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw not_found(id);
  return it->second;
}

std::vector<std::string> SessionManager::session_ids() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

std::shared_ptr<SessionManager::Session> SessionManager::build(const std::string& id, const json& request) {
  auto s = std::make_shared<Session>();
  s->id = id;
  s->request = parse_session_request(request, options_.default_budget);
  s->state = start_session(ConstraintSet(s->request.lower, s->request.upper), s->request.config);
  s->log_path = options_.data_dir / (id + ".jsonl");
  return s;
}

// Caller holds s->m.
void SessionManager::launch_compute(const std::shared_ptr<Session>& s) {
  if (!needs_proposal(s->state, s->cfg())) return;
  if (!options_.async) {
    compute_proposal(s->state, s->cfg());
    return;
  }
  if (s->worker.joinable()) s->worker.join();
  s->computing = true;
  s->worker = std::thread([s]() {
    SessionState work;
    {
      std::lock_guard<std::mutex> lock(s->m);
      work = s->state;
    }
    std::string failure;
    try {
      compute_proposal(work, s->cfg());
    } catch (const std::exception& e) {
      failure = e.what();
    }
    std::lock_guard<std::mutex> lock(s->m);
    if (failure.empty()) {
      s->state = std::move(work);
    } else {
      s->failure = failure;
    }
    s->computing = false;
    s->cv.notify_all();
  });
}

void SessionManager::load_existing() {
  for (const auto& entry : std::filesystem::directory_iterator(options_.data_dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path());
    std::string line;
    std::shared_ptr<Session> s;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json ev = json::parse(line);
      const std::string type = ev.at("type").get<std::string>();
      if (type == "create") {
        s = build(ev.at("id").get<std::string>(), ev.at("request"));
      } else if (type == "answer" && s) {
        if (needs_proposal(s->state, s->cfg())) compute_proposal(s->state, s->cfg());
        apply_answer(s->state, s->cfg(), ev.at("preference").get<int>());
      }
    }
    if (!s) continue;
    {
      std::lock_guard<std::mutex> lock(s->m);
      launch_compute(s);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    sessions_[s->id] = s;
  }
}

json SessionManager::create(const json& request) {
  std::string id = new_session_id();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    while (sessions_.count(id) != 0) id = new_session_id();
  }
  auto s = build(id, request);
  s->append({{"type", "create"}, {"id", id}, {"request", s->request.normalized}});
  std::lock_guard<std::mutex> slock(s->m);
  launch_compute(s);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    sessions_[id] = s;
  }
  return s->describe(false);
}

json SessionManager::get(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->m);
  return s->describe(true);
}

json SessionManager::answer(const std::string& id, const json& body) {
  auto s = find(id);
  if (!body.is_object()) throw ServiceError(422, "validation_error", "request body must be a JSON object");
  json errors = json::array();
  if (!body.contains("token") || !body["token"].is_string()) {
    errors.push_back({{"field", "token"}, {"message", "required string"}});
  }
  int pref = 0;
  if (!body.contains("preference") || !body["preference"].is_number_integer()) {
    errors.push_back({{"field", "preference"}, {"message", "required integer -1, 0 or 1"}});
  } else {
    pref = body["preference"].get<int>();
    if (pref < -1 || pref > 1) errors.push_back({{"field", "preference"}, {"message", "must be -1, 0 or 1"}});
  }
  if (!errors.empty()) throw ServiceError(422, "validation_error", "invalid answer", errors);

  std::lock_guard<std::mutex> lock(s->m);
  if (!s->failure.empty()) throw conflict("failed", "session failed: " + s->failure);
  if (s->computing) throw conflict("computing", "the next query is still being computed");
  if (phase(s->state, s->cfg()) == Phase::Done) throw conflict("done", "session is already complete");
  const std::string token = body["token"].get<std::string>();
  if (token != s->token()) throw conflict("stale_token", "query token '" + token + "' is not the pending query");

  apply_answer(s->state, s->cfg(), pref);
  s->append({{"type", "answer"}, {"token", token}, {"preference", pref}});
  launch_compute(s);
  return s->describe(false);
}

void SessionManager::wait_idle(const std::string& id) {
  auto s = find(id);
  std::unique_lock<std::mutex> lock(s->m);
  s->cv.wait(lock, [&] { return !s->computing; });
}

void register_routes(httplib::Server& server, SessionManager& manager) {
  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  auto guarded = [reply](auto&& fn) {
    return [fn, reply](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const ServiceError& e) {
        reply(res, e.status(), e.to_json());
      } catch (const json::exception& e) {
        reply(res, 400, ServiceError(400, "bad_request", std::string("malformed JSON: ") + e.what()).to_json());
      } catch (const std::exception& e) {
        reply(res, 500, ServiceError(500, "internal_error", e.what()).to_json());
      }
    };
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", guarded([&manager, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, 201, manager.create(json::parse(req.body)));
              }));
  server.Get(R"(/sessions/([^/]+))",
             guarded([&manager, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, manager.get(req.matches[1]));
             }));
  server.Post(R"(/sessions/([^/]+)/answer)",
              guarded([&manager, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, 200, manager.answer(req.matches[1], json::parse(req.body)));
              }));
}

}  // namespace pbo
