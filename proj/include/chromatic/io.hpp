#pragma once

// JSON shapes for complexes, colorings, reports and game transcripts. All
// objects use sorted keys and all lists follow key order, so equal inputs
// give equal bytes.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/game.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/local_solvers.hpp"
#include "chromatic/oracle.hpp"
#include "chromatic/renaming.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/valency.hpp"

namespace chromatic::io {

using json = nlohmann::json;

inline json set_json(SmallSet s) { return s.values(); }

inline json simplex_json(const Universe& u, const Simplex& s) { return u.keys(s); }

inline Simplex parse_simplex(Universe& u, const json& keys) {
  require(keys.is_array() && !keys.empty(), ErrorCode::InvalidKey, "a simplex is a non-empty array of keys");
  Simplex s;
  for (const json& k : keys) {
    require(k.is_string(), ErrorCode::InvalidKey, "vertex keys are strings");
    const VertexId v = u.parse_key(k.get<std::string>());
    require(!s.contains(v), ErrorCode::InvalidKey, "repeated vertex " + k.get<std::string>());
    require(s.empty() || u.level(v) == u.level(s), ErrorCode::InvalidKey, "vertices from different levels");
    require(s.size() < u.n(), ErrorCode::InvalidKey, "more vertices than processes");
    s.insert(v);
  }
  return s;
}

// "K1;K2;..." with keys as printed.
inline Simplex parse_simplex_text(Universe& u, const std::string& text) {
  json keys = json::array();
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(';', start);
    const std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) keys.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parse_simplex(u, keys);
}

inline std::vector<json> sorted_simplices(const Universe& u, const std::vector<Simplex>& list) {
  std::vector<json> out;
  out.reserve(list.size());
  for (const Simplex& s : list) out.push_back(simplex_json(u, s));
  std::sort(out.begin(), out.end());
  return out;
}

inline json complex_json(const Universe& u, const Complex& k) {
  std::vector<json> vertices;
  vertices.reserve(k.vertices().size());
  for (VertexId v : k.vertices())
    vertices.push_back({{"key", u.key(v)}, {"id", u.id(v).value}, {"carrier", set_json(u.carrier(v))}});
  std::sort(vertices.begin(), vertices.end(), [](const json& a, const json& b) { return a["key"] < b["key"]; });
  return {{"n", u.n()},
          {"level", k.level()},
          {"vertices", vertices},
          {"facets", sorted_simplices(u, k.facets())},
          {"euler", k.euler_characteristic()}};
}

inline json embedding_json(const EmbeddingReport& r) {
  return {{"ok", r.ok},
          {"orientation", r.orientation},
          {"degenerate", r.degenerate},
          {"flipped", r.flipped},
          {"overlapping_pairs", r.overlapping_pairs},
          {"area_error", r.area_error}};
}

inline json geometry_json(const Universe& u, const Complex& k, GeometryOptions options = {}) {
  const auto points = geometric_realization(u, k, options);
  Realization r(u, options);
  json pts = json::object();
  for (const auto& [v, p] : points) pts[u.key(v)] = {p.x, p.y};
  return {{"n", u.n()},
          {"level", k.level()},
          {"delta", options.delta},
          {"points", pts},
          {"facets", sorted_simplices(u, k.facets())},
          {"embedding", embedding_json(check_embedding(r, k))}};
}

inline json coloring_json(const Universe& u, const Coloring& c, const Complex& k) {
  json decide = json::object();
  for (VertexId v : k.vertices())
    if (auto d = c.get(v)) decide[u.key(v)] = *d;
  return {{"level", c.level()}, {"alphabet", c.alphabet()}, {"decide", decide}};
}

inline json witness_json(const Universe& u, const Witness& w) {
  return {{"simplex", simplex_json(u, w.simplex)}, {"expected", set_json(w.expected)}, {"actual", set_json(w.actual)}};
}

inline json census_json(const Universe& u, const Census& c) {
  return {{"count", c.count}, {"facets", sorted_simplices(u, c.facets)}};
}

inline json local_report_json(const Universe& u, TaskKind kind, const LocalReport& r) {
  json w = json::array();
  for (const Witness& x : r.witnesses) w.push_back(witness_json(u, x));
  return {{"sperner", r.sperner},       {"symmetric", r.symmetric},       {"consistent", r.consistent},
          {"complete", r.complete},     {"census_within", r.census_within}, {"census_global", r.census_global},
          {"repairs", r.repairs},       {"replicated", r.replicated},     {"witnesses", w},
          {"all_green", r.all_green(kind)}};
}

inline json local_solution_json(const Universe& u, const LocalSolution& s, bool with_decisions = true) {
  json out = {{"task", std::string(to_string(s.kind))},
              {"ell", s.ell},
              {"tau", simplex_json(u, s.tau)},
              {"report", local_report_json(u, s.kind, s.report)}};
  out["embedded_from"] = s.embedded_from ? simplex_json(u, *s.embedded_from) : json(nullptr);
  out["chosen"] = s.chosen ? simplex_json(u, *s.chosen) : json(nullptr);
  if (with_decisions) out["decisions"] = coloring_json(u, s.coloring, s.chi_tau);
  return out;
}

inline json table_json(const std::map<int, DecisionSet>& t) {
  json out = json::object();
  for (const auto& [k, v] : t) out[std::to_string(k)] = set_json(v);
  return out;
}

inline json contract_json(const ProtocolContract& c) {
  return {{"ok", c.ok},
          {"rounds", c.rounds},
          {"coverage", table_json(c.coverage)},
          {"symmetric", c.symmetric},
          {"problems", c.problems}};
}

inline json coverage_json(const CoverageVerdict& c) {
  json out = {{"full", c.full}, {"table", table_json(c.table)}};
  out["missing"] = c.missing ? json{c.missing->first, c.missing->second} : json(nullptr);
  return out;
}

inline json claims_json(const ClaimReport& r) {
  return {{"ell", r.ell},
          {"rounds", r.rounds},
          {"facets", r.facets},
          {"comparisons", r.comparisons},
          {"claim1", r.claim1},
          {"claim2", r.claim2},
          {"claim3", r.claim3},
          {"claim4", r.claim4},
          {"clash_free", r.clash_free},
          {"range_split", r.range_split},
          {"by_dimension", table_json(r.by_dimension)},
          {"witnesses", r.witnesses},
          {"ok", r.ok()}};
}

inline json extension_json(const ExtensionReport& r) {
  return {{"facets", r.facets},     {"consistent", r.consistent}, {"complete", r.complete},
          {"symmetric", r.symmetric}, {"clamped", r.clamped},       {"witnesses", r.witnesses},
          {"ok", r.ok()}};
}

inline json oracle_json(const OracleVerdict& v) {
  json witness = json::object();
  for (const auto& [k, d] : v.witness) witness[k] = d;
  return {{"exists", v.exists},   {"exhaustive", v.exhaustive}, {"scope", v.scope},
          {"space", v.space},     {"nodes", v.nodes},           {"neighbors", v.neighbors},
          {"witness", witness}};
}

inline json parity_json(const ParityVerdict& p) { return {{"fully_colored", p.fully_colored}, {"odd", p.odd}}; }

inline json count_json(const CountVerdict& c) {
  return {{"n", c.n},           {"ell", c.ell},         {"expected", c.expected}, {"facets", c.facets},
          {"vertices", c.vertices}, {"euler", c.euler}, {"ok", c.ok}};
}

inline json consensus_json(const Universe& u, const ConsensusProof& p) {
  json path = json::array();
  for (VertexId v : p.path) path.push_back(u.key(v));
  return {{"edge", simplex_json(u, p.edge)},
          {"path", path},
          {"colorings", p.candidates.size()},
          {"survivors", p.survivors},
          {"without_completeness", p.without_completeness},
          {"without_agreement", p.without_agreement},
          {"without_consistency", p.without_consistency},
          {"agreement_only", p.agreement_only}};
}

// ---- game ----

inline json config_json(const GameConfig& c) { return {{"n", c.n}, {"R", c.R}, {"task", std::string(to_string(c.kind))}}; }

inline GameConfig parse_config(const json& j) {
  require(j.is_object(), ErrorCode::InvalidArgument, "config must be an object");
  GameConfig c;
  try {
    c.n = j.value("n", 3);
    c.R = j.value("R", 2);
    c.kind = parse_task_kind(j.value("task", std::string("sa")));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, e.what());
  }
  return c;
}

inline json ledger_json(const GameState& g) {
  const Universe& u = g.universe();
  json out = json::array();
  for (const LedgerEntry& e : g.ledger)
    out.push_back(
        {{"phase", e.phase}, {"level", e.level}, {"simplex", simplex_json(u, e.simplex)}, {"valency", set_json(e.valency)}});
  return out;
}

// FNV-1a over the serialized ledger.
inline std::string ledger_digest(const GameState& g) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : ledger_json(g).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json moves_json(const GameState& g) {
  const Universe& u = g.universe();
  json out = json::array();
  for (std::size_t i = 1; i < g.sequence.size(); ++i) {
    json m = {{"phase", static_cast<int>(i) - 1}, {"facet", simplex_json(u, g.sequence[i])}};
    m["requested"] = g.requested[i] ? simplex_json(u, *g.requested[i]) : json(nullptr);
    out.push_back(m);
  }
  return out;
}

inline json reveal_json(const Universe& u, const Reveal& r) {
  return {{"level", r.level},
          {"facets", sorted_simplices(u, r.chi.facets())},
          {"decisions", coloring_json(u, r.decisions, r.chi)},
          {"census_within", r.census_within},
          {"census_global", r.census_global}};
}

inline json audit_json(const AuditVerdict& v) {
  return {{"verdict", v.name()},         {"legal", v.legal},       {"commitments", v.commitments},
          {"containment", v.containment}, {"shrink", v.shrink},     {"validity", v.validity},
          {"complete", v.complete},       {"witnesses", v.witnesses}};
}

inline json state_json(const GameState& g, bool with_ledger = true) {
  const Universe& u = g.universe();
  json out = {{"config", config_json(g.config)},
              {"phase", g.phase},
              {"status", g.status == GameStatus::InProgress ? "InProgress" : "Revealed"},
              {"current", simplex_json(u, g.current())},
              {"moves", moves_json(g)},
              {"selectable", sorted_simplices(u, selectable_facets(g))},
              {"ledger_digest", ledger_digest(g)}};
  if (with_ledger) out["ledger"] = ledger_json(g);
  return out;
}

inline json transcript_json(const GameState& g, const std::optional<AuditVerdict>& verdict) {
  json flagged = json::array();
  for (std::size_t i = 1; i < g.requested.size(); ++i)
    if (g.requested[i]) flagged.push_back(static_cast<int>(i) - 1);
  json out = {{"config", config_json(g.config)},
              {"moves", moves_json(g)},
              {"flagged_moves", flagged},
              {"ledger_digest", ledger_digest(g)}};
  out["reveal"] = g.reveal ? reveal_json(g.universe(), *g.reveal) : json(nullptr);
  out["audit"] = verdict ? audit_json(*verdict) : json(nullptr);
  return out;
}

// Replays the requested simplexes (or facets) of a transcript on a fresh game.
inline GameState replay_transcript(const json& t, std::shared_ptr<SubdivisionTower> tower = nullptr) {
  GameState g = new_game(parse_config(t.at("config")), std::move(tower));
  for (const json& m : t.at("moves")) {
    const json& pick = m.contains("requested") && !m["requested"].is_null() ? m["requested"] : m.at("facet");
    g = prover_select(g, parse_simplex(g.universe(), pick));
  }
  if (!t.value("reveal", json(nullptr)).is_null()) g = final_reveal(g);
  return g;
}

inline json summary_json(const GameConfig& c, const ProverSummary& s) {
  return {{"config", config_json(c)},
          {"sequences", s.sequences},
          {"survivals", s.survivals},
          {"ledger_ok", s.ledger_ok},
          {"census_within_total", s.census_within_total},
          {"global_census_min", s.global_census_min},
          {"global_census_max", s.global_census_max},
          {"failures", s.failures}};
}

inline json error_json(const Error& e) { return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}; }

}  // namespace chromatic::io
