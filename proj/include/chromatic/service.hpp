#pragma once

// Transport-free core of the game service: routes (method, path, body) to
// game operations and returns a status with a JSON body. The HTTP binding
// lives in tools/game_service.cpp.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chromatic/game.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/io.hpp"

namespace chromatic {

struct ServiceOptions {
  Limits limits = Limits::from_environment();
  GeometryOptions geometry;
  std::optional<std::filesystem::path> transcript_dir;
  int max_games = 1000;
};

struct ServiceResponse {
  int status = 200;
  io::json body;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotASuccessor:
    case ErrorCode::StalePhase:
    case ErrorCode::WrongPhase:
    case ErrorCode::GameOver: return 409;
    case ErrorCode::UnsupportedN: return 422;
    case ErrorCode::ResourceLimit: return 413;
    case ErrorCode::EmbeddingFailed:
    case ErrorCode::UnsatisfiedPostcondition: return 500;
    default: return 400;
  }
}

class GameService {
 public:
  explicit GameService(ServiceOptions options = {}) : options_(std::move(options)) {
    if (options_.transcript_dir) std::filesystem::create_directories(*options_.transcript_dir);
  }

  ServiceResponse handle(const std::string& method, const std::string& target, const std::string& body) {
    try {
      return route(method, target, body);
    } catch (const Error& e) {
      return {http_status(e.code()), io::error_json(e)};
    } catch (const io::json::exception& e) {
      return {400, {{"error", "InvalidArgument"}, {"message", e.what()}}};
    }
  }

 private:
  struct Session {
    std::string id;
    std::mutex mutation;  // serializes moves and reveals; also guards the game's universe
    std::shared_ptr<const GameState> state;
    std::optional<AuditVerdict> verdict;
    std::map<std::string, io::json> geometry;
    // Published view of `state`, swapped under `published_lock` only.
    mutable std::mutex published_lock;
    std::shared_ptr<const io::json> published;
  };

  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start < path.size()) {
      std::size_t end = path.find('/', start);
      if (end == std::string::npos) end = path.size();
      if (end > start) parts.push_back(path.substr(start, end - start));
      start = end + 1;
    }
    return parts;
  }

  static std::map<std::string, std::string> parse_query(const std::string& q) {
    std::map<std::string, std::string> out;
    std::size_t start = 0;
    while (start < q.size()) {
      std::size_t end = q.find('&', start);
      if (end == std::string::npos) end = q.size();
      const std::string pair = q.substr(start, end - start);
      const std::size_t eq = pair.find('=');
      if (eq == std::string::npos)
        out[pair] = "";
      else
        out[pair.substr(0, eq)] = pair.substr(eq + 1);
      start = end + 1;
    }
    return out;
  }

  static io::json parse_body(const std::string& body) {
    if (body.empty()) return io::json::object();
    io::json j = io::json::parse(body, nullptr, false);
    require(!j.is_discarded() && j.is_object(), ErrorCode::InvalidArgument, "request body must be a JSON object");
    return j;
  }

  ServiceResponse route(const std::string& method, const std::string& target, const std::string& body) {
    const std::size_t qpos = target.find('?');
    const auto parts = split_path(target.substr(0, qpos));
    const auto query = qpos == std::string::npos ? std::map<std::string, std::string>{} : parse_query(target.substr(qpos + 1));

    if (parts.size() == 1 && parts[0] == "health" && method == "GET")
      return {200, {{"status", "ok"}, {"games", game_count()}}};
    if (parts.empty() || parts[0] != "games") return not_found(target);
    if (parts.size() == 1 && method == "POST") return create(parse_body(body));
    if (parts.size() < 2) return not_found(target);

    const std::shared_ptr<Session> s = find(parts[1]);
    if (!s) return {404, {{"error", "NotFound"}, {"message", "no game " + parts[1]}}};
    if (parts.size() == 2 && method == "GET") {
      std::lock_guard lock(s->published_lock);
      return {200, *s->published};
    }
    if (parts.size() == 3 && parts[2] == "moves" && method == "POST") return move(*s, parse_body(body));
    if (parts.size() == 3 && parts[2] == "reveal" && method == "POST") return reveal(*s);
    if (parts.size() == 3 && parts[2] == "transcript" && method == "GET") {
      std::lock_guard lock(s->mutation);
      return {200, io::transcript_json(*s->state, s->verdict)};
    }
    if (parts.size() == 3 && parts[2] == "geometry" && method == "GET") return geometry(*s, query);
    return not_found(target);
  }

  static ServiceResponse not_found(const std::string& target) {
    return {404, {{"error", "NotFound"}, {"message", "no route for " + target}}};
  }

  std::size_t game_count() {
    std::lock_guard lock(registry_lock_);
    return sessions_.size();
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(registry_lock_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  void publish(Session& s) {
    io::json view = {{"gameId", s.id}, {"state", io::state_json(*s.state)}};
    if (s.state->reveal) view["reveal"] = io::reveal_json(s.state->universe(), *s.state->reveal);
    if (s.verdict) view["audit"] = io::audit_json(*s.verdict);
    auto snapshot = std::make_shared<const io::json>(std::move(view));
    std::lock_guard lock(s.published_lock);
    s.published = std::move(snapshot);
  }

  void append(const Session& s, const io::json& event) {
    if (!options_.transcript_dir) return;
    std::ofstream out(*options_.transcript_dir / (s.id + ".jsonl"), std::ios::app);
    out << event.dump() << '\n';
  }

  ServiceResponse create(const io::json& body) {
    const GameConfig config = io::parse_config(body);
    if (config.n < 3 || config.n > kMaxProcesses)
      fail(ErrorCode::UnsupportedN, "the game needs 3 <= n <= " + std::to_string(kMaxProcesses));
    auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(config.n, options_.limits));
    auto session = std::make_shared<Session>();
    session->state = std::make_shared<const GameState>(new_game(config, tower));
    {
      std::lock_guard lock(registry_lock_);
      require(static_cast<int>(sessions_.size()) < options_.max_games, ErrorCode::ResourceLimit, "too many games");
      session->id = "g" + std::to_string(++next_id_);
    }
    publish(*session);
    {
      std::lock_guard lock(registry_lock_);
      sessions_.emplace(session->id, session);
    }
    append(*session, {{"event", "create"}, {"config", io::config_json(config)}});
    std::lock_guard view(session->published_lock);
    return {201, *session->published};
  }

  ServiceResponse move(Session& s, const io::json& body) {
    std::lock_guard lock(s.mutation);
    const std::shared_ptr<const GameState> before = s.state;
    const GameState& g = *before;
    require(body.contains("facet"), ErrorCode::InvalidArgument, "missing 'facet'");
    if (body.contains("phase") && body["phase"].get<int>() != g.phase)
      fail(ErrorCode::StalePhase, "request is for phase " + std::to_string(body["phase"].get<int>()) +
                                      ", game is at phase " + std::to_string(g.phase));
    const Simplex pick = io::parse_simplex(g.universe(), body["facet"]);
    s.state = std::make_shared<const GameState>(prover_select(g, pick));
    publish(s);
    append(s, {{"event", "move"}, {"phase", g.phase}, {"facet", body["facet"]}});
    std::lock_guard view(s.published_lock);
    return {200, *s.published};
  }

  ServiceResponse reveal(Session& s) {
    std::lock_guard lock(s.mutation);
    auto done = std::make_shared<const GameState>(final_reveal(*s.state));
    s.verdict = audit(*done, *done->reveal);
    s.state = std::move(done);
    publish(s);
    append(s, {{"event", "reveal"}, {"transcript", io::transcript_json(*s.state, s.verdict)}});
    return {200,
            {{"gameId", s.id},
             {"reveal", io::reveal_json(s.state->universe(), *s.state->reveal)},
             {"audit", io::audit_json(*s.verdict)},
             {"ledger_digest", io::ledger_digest(*s.state)}}};
  }

  // level=L realizes chi^L(sigma); scope=current restricts to chi(sigma_phase)
  // (the default, at level phase+1).
  ServiceResponse geometry(Session& s, const std::map<std::string, std::string>& query) {
    std::lock_guard lock(s.mutation);
    const GameState& g = *s.state;
    require(g.config.n == 3, ErrorCode::InvalidArgument, "geometry is only available for n = 3");
    const bool current = !query.count("level") || (query.count("scope") && query.at("scope") == "current");
    int level = g.phase + 1;
    if (query.count("level")) {
      try {
        level = std::stoi(query.at("level"));
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "level must be an integer");
      }
    }
    require(level >= 0 && level <= 4, ErrorCode::InvalidArgument, "level must lie in 0..4");
    const std::string cache_key = std::to_string(level) + (current ? "/current/" + std::to_string(g.phase) : "/all");
    if (auto it = s.geometry.find(cache_key); it != s.geometry.end()) return {200, it->second};

    Universe& u = g.universe();
    const Complex& whole = g.tower->level(level);
    io::json out = io::geometry_json(u, whole, options_.geometry);
    if (current && level == g.phase + 1) {
      const Complex local = chi_simplex(u, g.current());
      io::json pts = io::json::object();
      for (VertexId v : local.vertices()) pts[u.key(v)] = out["points"][u.key(v)];
      out["points"] = pts;
      out["facets"] = io::sorted_simplices(u, local.facets());
      out["scope"] = "current";
    } else {
      out["scope"] = "all";
    }
    s.geometry.emplace(cache_key, out);
    return {200, out};
  }

  ServiceOptions options_;
  std::mutex registry_lock_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 0;
};

}  // namespace chromatic
