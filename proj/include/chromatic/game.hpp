#pragma once

// The prover game: R-1 phases of facet selection against disclosed
// valencies, a reveal of the decisions next to the selected branch, and an
// audit of everything that was disclosed.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/local_solvers.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/valency.hpp"

namespace chromatic {

struct GameConfig {
  int n = 3;
  int R = 2;
  TaskKind kind = TaskKind::SetAgreement;
};

// Valency disclosed for a simplex of the given level.
using ValencyOracle = std::function<DecisionSet(const Universe&, TaskKind, int level, const Simplex&)>;

inline DecisionSet default_valency(const Universe& u, TaskKind kind, int level, const Simplex& s) {
  switch (kind) {
    case TaskKind::SetAgreement: return sa_valency(u, s, level);
    case TaskKind::WeakSymmetryBreaking: return wsb_valency(u, s, level);
    default: fail(ErrorCode::InvalidArgument, "the game supports set agreement and WSB only");
  }
}

struct LedgerEntry {
  int phase = 0;
  int level = 0;
  Simplex simplex;
  DecisionSet valency;
};

enum class GameStatus { InProgress, Revealed };

struct Reveal {
  int level = 0;
  Complex chi;  // chi(sigma_{R-1})
  Coloring decisions;
  std::size_t census_within = 0;  // violating facets inside chi(sigma_{R-1})
  std::size_t census_global = 0;  // violating facets of the full decision map
};

struct GameState {
  GameConfig config;
  std::shared_ptr<SubdivisionTower> tower;
  ValencyOracle oracle = default_valency;
  int phase = 0;
  std::vector<Simplex> sequence;                // sigma_0 .. sigma_phase
  std::vector<std::optional<Simplex>> requested;  // per move: the non-facet simplex the prover named, if any
  std::vector<LedgerEntry> ledger;
  GameStatus status = GameStatus::InProgress;
  std::optional<Reveal> reveal;

  Universe& universe() const { return tower->universe(); }
  const Simplex& current() const { return sequence.back(); }
  bool terminal() const { return phase == config.R - 1; }
};

namespace detail {
inline void disclose(GameState& g, int level, const std::vector<Simplex>& simplices) {
  for (const Simplex& s : simplices)
    g.ledger.push_back(LedgerEntry{g.phase, level, s, g.oracle(g.universe(), g.config.kind, level, s)});
}
}  // namespace detail

// Phase 0: the input valencies and those of chi(sigma).
inline GameState new_game(const GameConfig& config, std::shared_ptr<SubdivisionTower> tower = nullptr,
                          ValencyOracle oracle = default_valency) {
  if (config.n < 3) fail(ErrorCode::UnsupportedN, "the game needs n >= 3, got " + std::to_string(config.n));
  require(config.n <= kMaxProcesses, ErrorCode::UnsupportedN, "too many processes");
  require(config.R >= 2, ErrorCode::InvalidArgument, "R must be at least 2");
  require(config.kind == TaskKind::SetAgreement || config.kind == TaskKind::WeakSymmetryBreaking,
          ErrorCode::InvalidArgument, "the game supports set agreement and WSB only");
  if (!tower) tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(config.n, Limits::from_environment()));
  require(tower->n() == config.n, ErrorCode::InvalidArgument, "tower has the wrong process count");
  GameState g;
  g.config = config;
  g.tower = std::move(tower);
  g.oracle = std::move(oracle);
  const Simplex sigma = g.universe().input_simplex();
  g.sequence.push_back(sigma);
  g.requested.push_back(std::nullopt);
  detail::disclose(g, 0, all_faces(sigma));
  detail::disclose(g, 1, chi_simplex(g.universe(), sigma).simplices());
  return g;
}

// Facets of chi(sigma_phase) in canonical key order: the legal moves.
inline std::vector<Simplex> selectable_facets(const GameState& g) {
  if (g.status != GameStatus::InProgress || g.terminal()) return {};
  return facets_by_key(g.universe(), chi_simplex(g.universe(), g.current()));
}

inline GameState prover_select(const GameState& state, const Simplex& next) {
  if (state.status != GameStatus::InProgress || state.terminal())
    fail(ErrorCode::GameOver, "no moves remain after phase " + std::to_string(state.phase));
  Universe& u = state.universe();
  const Complex successors = chi_simplex(u, state.current());
  if (next.empty() || !successors.contains(next))
    fail(ErrorCode::NotASuccessor, "the simplex is not in the subdivision of the current configuration");
  GameState g = state;
  std::optional<Simplex> requested;
  Simplex facet = next;
  if (next.size() != u.n()) {
    requested = next;
    facet = detail::containing_facet(u, successors, next);
  }
  g.sequence.push_back(facet);
  g.requested.push_back(requested);
  g.phase += 1;
  if (g.phase <= g.config.R - 2) detail::disclose(g, g.phase + 1, chi_simplex(u, facet).simplices());
  return g;
}

// The decisions of a local solution for sigma_{R-1}, restricted to chi(sigma_{R-1}).
inline GameState final_reveal(const GameState& state) {
  if (state.status != GameStatus::InProgress || !state.terminal())
    fail(ErrorCode::WrongPhase, "reveal is only possible at phase " + std::to_string(state.config.R - 1));
  GameState g = state;
  const LocalSolution sol = theorem_local_solution(g.config.kind, *g.tower, g.config.R - 1, g.current());
  Reveal r;
  r.level = g.config.R;
  r.chi = sol.chi_tau;
  r.decisions = sol.coloring.restricted_to(r.chi);
  r.census_within = sol.report.census_within;
  r.census_global = sol.report.census_global;
  g.reveal = std::move(r);
  g.status = GameStatus::Revealed;
  return g;
}

struct AuditVerdict {
  bool legal = true;        // (a) no violating facet in the revealed region
  bool commitments = true;  // (b) revealed decisions inside every disclosed valency
  bool containment = true;  // (c)
  bool shrink = true;       // (c)
  bool validity = true;     // (c)
  bool complete = true;     // revealed faces of sigma_{R-1} decide their whole valency
  std::vector<std::string> witnesses;

  bool survives() const { return legal && commitments && containment && shrink && validity && complete; }
  std::string name() const { return survives() ? "ProtocolSurvives" : "ContradictionFound"; }
};

namespace detail {
inline std::string keys_text(const Universe& u, const Simplex& s) {
  std::string out = "[";
  for (const auto& k : u.keys(s)) out += (out.size() > 1 ? "," : "") + k;
  return out + "]";
}

// Ledger properties on their own: Containment within a level, shrinking
// across levels, validity against the carrier.
inline void audit_ledger(const GameState& g, AuditVerdict& v) {
  const Universe& u = g.universe();
  std::map<int, std::map<Simplex, DecisionSet>> by_level;
  for (const LedgerEntry& e : g.ledger) by_level[e.level][e.simplex] = e.valency;
  for (const auto& [level, entries] : by_level)
    for (const auto& [s, val] : entries) {
      if (s.size() > 1)
        for (const Simplex& f : faces(s, s.dim() - 1))
          if (auto it = entries.find(f); it != entries.end() && !it->second.subset_of(val)) {
            v.containment = false;
            v.witnesses.push_back("containment: " + keys_text(u, f) + " in " + keys_text(u, s));
          }
      const bool valid = g.config.kind == TaskKind::SetAgreement ? val.subset_of(u.carrier(s))
                                                                 : val.subset_of(DecisionSet{0, 1});
      if (!valid || val.empty()) {
        v.validity = false;
        v.witnesses.push_back("validity: " + keys_text(u, s));
      }
    }
  for (const auto& [high, upper] : by_level)
    for (const auto& [low, lower] : by_level) {
      if (low >= high) continue;
      SupportMap support(u, low);
      for (const auto& [s, val] : upper) {
        const Simplex base = support.of(s);
        for (const auto& [t, tval] : lower)
          if (base.subset_of(t) && !val.subset_of(tval)) {
            v.shrink = false;
            v.witnesses.push_back("shrink: " + keys_text(u, s) + " under " + keys_text(u, t));
          }
      }
    }
}
}  // namespace detail

inline AuditVerdict audit(const GameState& g, const Reveal& r) {
  AuditVerdict v;
  const Universe& u = g.universe();
  const int n = u.n();
  for (const Simplex& f : r.chi.facets()) {
    const int distinct = r.decisions.decisions(f).size();
    const bool bad = g.config.kind == TaskKind::SetAgreement ? distinct == n : distinct == 1;
    if (bad) {
      v.legal = false;
      v.witnesses.push_back("illegal facet " + detail::keys_text(u, f));
    }
  }

  std::map<int, SupportMap> supports;
  for (const LedgerEntry& e : g.ledger) supports.try_emplace(e.level, u, e.level);
  for (VertexId vtx : r.chi.vertices()) {
    const auto d = r.decisions.get(vtx);
    if (!d) {
      v.commitments = false;
      v.witnesses.push_back("undecided vertex " + u.key(vtx));
      continue;
    }
    for (const LedgerEntry& e : g.ledger)
      if (supports.at(e.level).of(vtx).subset_of(e.simplex) && !e.valency.contains(*d)) {
        v.commitments = false;
        v.witnesses.push_back("decision " + std::to_string(*d) + " at " + u.key(vtx) + " outside the valency of " +
                              detail::keys_text(u, e.simplex));
      }
  }

  detail::audit_ledger(g, v);

  const int last = r.level - 1;
  const DecisionIndex index(u, r.decisions, r.chi, last);
  for (const LedgerEntry& e : g.ledger)
    if (e.level == last && e.simplex.subset_of(g.current()) && index.on(e.simplex) != e.valency) {
      v.complete = false;
      v.witnesses.push_back("incomplete at " + detail::keys_text(u, e.simplex));
    }
  return v;
}

struct ProverSummary {
  std::size_t sequences = 0;
  std::size_t survivals = 0;
  std::size_t ledger_ok = 0;
  std::size_t census_within_total = 0;
  std::size_t global_census_min = 0;
  std::size_t global_census_max = 0;
  std::vector<std::string> failures;
};

// Plays every selection sequence and audits each outcome.
inline ProverSummary exhaustive_prover(const GameConfig& config, std::shared_ptr<SubdivisionTower> tower = nullptr) {
  if (config.n < 3) fail(ErrorCode::UnsupportedN, "the game needs n >= 3");
  std::size_t expected = 1;
  const std::size_t per_phase = enumerate_ordered_partitions(full_id_set(config.n)).size();
  for (int i = 0; i < config.R - 1; ++i) expected *= per_phase;
  if (!tower) tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(config.n, Limits::from_environment()));
  if (expected > tower->universe().limits().facet_budget)
    fail(ErrorCode::ResourceLimit, std::to_string(expected) + " sequences exceed the budget");

  ProverSummary out;
  out.global_census_min = static_cast<std::size_t>(-1);
  std::function<void(const GameState&)> play = [&](const GameState& g) {
    if (!g.terminal()) {
      for (const Simplex& f : selectable_facets(g)) play(prover_select(g, f));
      return;
    }
    ++out.sequences;
    const GameState done = final_reveal(g);
    const AuditVerdict v = audit(done, *done.reveal);
    out.survivals += v.survives();
    out.ledger_ok += v.containment && v.shrink && v.validity;
    if (!v.survives() && out.failures.size() < 10)
      out.failures.push_back(v.witnesses.empty() ? v.name() : v.witnesses.front());
    out.census_within_total += done.reveal->census_within;
    out.global_census_min = std::min(out.global_census_min, done.reveal->census_global);
    out.global_census_max = std::max(out.global_census_max, done.reveal->census_global);
  };
  play(new_game(config, tower));
  return out;
}

}  // namespace chromatic
