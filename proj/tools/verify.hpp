#pragma once

// The verification battery behind `chromatic verify`. Each suite returns
// named checks plus a JSON artifact; artifacts carry no timings so that
// repeated runs are byte-identical.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chromatic/chromatic.hpp"

namespace chromatic::verify {

using json = io::json;

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  json artifact = json::object();
  double seconds = 0;

  bool ok() const {
    for (const Check& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void add(std::string check, bool ok, std::string detail = {}) {
    checks.push_back({std::move(check), ok, std::move(detail)});
  }
};

struct Settings {
  Limits limits = Limits::from_environment();
  RenamingOptions renaming;
  GeometryOptions geometry;
  int renaming_rounds = 3;
  std::size_t oracle_budget = 50'000'000;
};

inline std::shared_ptr<SubdivisionTower> make_tower(int n, const Settings& s) {
  return std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n, s.limits));
}

inline std::string ratio(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

inline SuiteResult suite_counts(const Settings& s) {
  SuiteResult r;
  r.name = "counts";
  json rows = json::array();
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}}) {
    Universe u(n, s.limits);
    const CountVerdict v = fubini_count_check(u, ell);
    rows.push_back(io::count_json(v));
    r.add("fubini(" + std::to_string(n) + "," + std::to_string(ell) + ")", v.ok,
          std::to_string(v.facets) + " facets, " + std::to_string(v.vertices) + " vertices, euler " +
              std::to_string(v.euler));
  }
  r.artifact["counts"] = rows;
  return r;
}

inline SuiteResult suite_observation(const Settings& s) {
  SuiteResult r;
  r.name = "observation";
  json rows = json::array();
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    auto tower = make_tower(n, s);
    const CarrierObservation o = check_carrier_observation(tower->universe(), tower->simplices(ell));
    rows.push_back({{"n", n}, {"ell", ell}, {"simplices", o.simplices}, {"full_dimensional", o.full_dimensional},
                    {"ok", o.ok()}});
    r.add("carrier(" + std::to_string(n) + "," + std::to_string(ell) + ")", o.ok(),
          std::to_string(o.simplices) + " simplexes");
  }
  r.artifact["observation"] = rows;
  return r;
}

inline SuiteResult suite_sperner(const Settings& s) {
  SuiteResult r;
  r.name = "sperner";
  json rows = json::array();
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    auto tower = make_tower(n, s);
    const Complex& k = tower->level(ell);
    const ParityVerdict p = sperner_parity_check(tower->universe(), id_coloring(tower->universe(), k), k);
    rows.push_back({{"coloring", "id"}, {"n", n}, {"ell", ell}, {"parity", io::parity_json(p)}});
    r.add("id-coloring(" + std::to_string(n) + "," + std::to_string(ell) + ")", p.odd,
          std::to_string(p.fully_colored) + " fully colored");
  }
  for (int ell : {1, 2}) {
    auto tower = make_tower(3, s);
    Universe& u = tower->universe();
    const Complex& outer = tower->level(ell + 1);
    std::size_t odd = 0, total = 0;
    json counts = json::array();
    for (const Simplex& tau : facets_by_key(u, tower->level(ell))) {
      const LocalSolution sol = theorem_sa_local_solution(*tower, ell, tau);
      const ParityVerdict p = sperner_parity_check(u, sol.coloring, outer);
      odd += p.odd;
      ++total;
      counts.push_back(p.fully_colored);
    }
    rows.push_back({{"coloring", "c_tau"}, {"n", 3}, {"ell", ell}, {"fully_colored", counts}});
    r.add("c_tau parity (3," + std::to_string(ell) + ")", odd == total, ratio(odd, total) + " odd");
  }
  r.artifact["sperner"] = rows;
  return r;
}

inline SuiteResult suite_local(const Settings& s) {
  SuiteResult r;
  r.name = "local";
  json rows = json::array();
  for (TaskKind kind : {TaskKind::SetAgreement, TaskKind::WeakSymmetryBreaking})
    for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
      auto tower = make_tower(n, s);
      Universe& u = tower->universe();
      std::size_t green = 0, global_ok = 0, total = 0, case_b = 0;
      json facets = json::array();
      for (const Simplex& tau : facets_by_key(u, tower->level(ell))) {
        const LocalSolution sol = theorem_local_solution(kind, *tower, ell, tau);
        ++total;
        green += sol.report.all_green(kind);
        global_ok += kind == TaskKind::SetAgreement ? sol.report.census_global % 2 == 1 : sol.report.census_global >= 1;
        case_b += sol.chosen.has_value();
        facets.push_back(io::local_solution_json(u, sol, false));
      }
      const std::string tag = std::string(to_string(kind)) + "(" + std::to_string(n) + "," + std::to_string(ell) + ")";
      rows.push_back({{"task", std::string(to_string(kind))}, {"n", n}, {"ell", ell}, {"facets", facets}});
      r.add(tag + " all green", green == total, ratio(green, total));
      r.add(tag + (kind == TaskKind::SetAgreement ? " global odd" : " global monochromatic"), global_ok == total,
            ratio(global_ok, total) + (kind == TaskKind::SetAgreement ? ", case B " + ratio(case_b, total) : ""));
    }
  r.artifact["local"] = rows;
  return r;
}

inline std::map<std::uint32_t, DecisionSet> consensus_assignment(Universe& u, int p1_mid, int p0_mid) {
  const auto path = consensus_path(u, u.input_simplex());
  return {{path[0].index, DecisionSet{0}},
          {path[1].index, DecisionSet{p1_mid}},
          {path[2].index, DecisionSet{p0_mid}},
          {path[3].index, DecisionSet{1}}};
}

inline SuiteResult suite_consensus(const Settings& s) {
  SuiteResult r;
  r.name = "consensus";
  json rows = json::array();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Universe u(2, s.limits);
      const auto val = consensus_assignment(u, a, b);
      const Simplex edge = consensus_find_bivalent_edge(u, val);
      const VertexId e0 = *u.member_with_id(edge, ProcessId(0));
      const VertexId e1 = *u.member_with_id(edge, ProcessId(1));
      const ConsensusProof proof = consensus_prove_locally_unsolvable(u, edge, val.at(e0.index), val.at(e1.index));
      const auto path = consensus_path(u, u.input_simplex());
      const Complex base(1, {Simplex{path[0], path[1]}, Simplex{path[1], path[2]}, Simplex{path[2], path[3]}});
      const OracleVerdict oracle = brute_force_local_search(u, consensus_task(val), edge, base, s.oracle_budget);
      const std::string tag = "P1mid=" + std::to_string(a) + ",P0mid=" + std::to_string(b);
      rows.push_back({{"assignment", tag}, {"proof", io::consensus_json(u, proof)}, {"oracle", io::oracle_json(oracle)}});
      r.add(tag + " no local solution", proof.survivors == 0 && proof.candidates.size() == 16,
            "0 of " + std::to_string(proof.candidates.size()) + " colorings survive");
      r.add(tag + " oracle agrees", !oracle.exists && oracle.exhaustive && oracle.space == 16,
            std::to_string(oracle.nodes) + " search nodes");
    }
  r.artifact["consensus"] = rows;
  return r;
}

inline SuiteResult suite_oracle(const Settings& s) {
  SuiteResult r;
  r.name = "oracle";
  json rows = json::array();
  for (TaskKind kind : {TaskKind::SetAgreement, TaskKind::WeakSymmetryBreaking})
    for (auto [n, ell] : {std::pair{3, 1}, {4, 1}}) {
      auto tower = make_tower(n, s);
      Universe& u = tower->universe();
      const Complex& base = tower->level(ell);
      std::size_t agree = 0, total = 0;
      json facets = json::array();
      for (const Simplex& tau : facets_by_key(u, base)) {
        const OracleVerdict v = brute_force_local_search(u, task_for(kind, n, ell), tau, base, s.oracle_budget);
        const bool constructive = theorem_local_solution(kind, *tower, ell, tau).report.all_green(kind);
        agree += v.exists == constructive;
        ++total;
        json row = io::oracle_json(v);
        row["tau"] = io::simplex_json(u, tau);
        row.erase("witness");
        facets.push_back(row);
      }
      const std::string tag = std::string(to_string(kind)) + "(" + std::to_string(n) + "," + std::to_string(ell) + ")";
      rows.push_back({{"task", std::string(to_string(kind))}, {"n", n}, {"ell", ell}, {"facets", facets}});
      r.add(tag + " oracle agrees", agree == total, ratio(agree, total));
    }
  r.artifact["oracle"] = rows;
  return r;
}

inline SuiteResult suite_game(const Settings& s) {
  SuiteResult r;
  r.name = "game";
  json rows = json::array();
  for (TaskKind kind : {TaskKind::SetAgreement, TaskKind::WeakSymmetryBreaking})
    for (auto [n, R] : {std::pair{3, 2}, {3, 3}, {4, 2}}) {
      const GameConfig config{n, R, kind};
      const ProverSummary sum = exhaustive_prover(config, make_tower(n, s));
      rows.push_back(io::summary_json(config, sum));
      const std::string tag = std::string(to_string(kind)) + "(n=" + std::to_string(n) + ",R=" + std::to_string(R) + ")";
      r.add(tag + " survive", sum.survivals == sum.sequences && sum.sequences > 0,
            ratio(sum.survivals, sum.sequences) + " survive");
      r.add(tag + " ledger", sum.ledger_ok == sum.sequences, ratio(sum.ledger_ok, sum.sequences));
      r.add(tag + " errors only outside", sum.census_within_total == 0 && sum.global_census_min >= 1,
            "global census " + std::to_string(sum.global_census_min) + ".." + std::to_string(sum.global_census_max));
    }

  // Negative controls: a tampered reveal and a tampered ledger.
  {
    GameState g = new_game({3, 2, TaskKind::SetAgreement}, make_tower(3, s));
    g = final_reveal(prover_select(g, selectable_facets(g).front()));
    Reveal bad = *g.reveal;
    const Simplex f = bad.chi.facets().front();
    for (VertexId v : f) bad.decisions.set(v, g.universe().id(v).value);
    const AuditVerdict v = audit(g, bad);
    r.add("tampered reveal is caught", !v.legal && !v.survives(), v.witnesses.empty() ? "" : v.witnesses.front());

    GameState h = g;
    for (LedgerEntry& e : h.ledger)
      if (e.level == 1 && e.simplex.size() == 1) {
        e.valency = DecisionSet{0, 1, 2};
        break;
      }
    const AuditVerdict w = audit(h, *h.reveal);
    r.add("tampered ledger is caught", !w.survives() && (!w.containment || !w.validity || !w.shrink),
          w.witnesses.empty() ? "" : w.witnesses.front());
    rows.push_back({{"negative_controls", {{"reveal", io::audit_json(v)}, {"ledger", io::audit_json(w)}}}});
  }
  r.artifact["game"] = rows;
  return r;
}

inline SuiteResult suite_renaming(const Settings& s) {
  SuiteResult r;
  r.name = "renaming";
  const RecursiveIsRenaming small(2), protocol(3);
  {
    Universe u(2, s.limits);
    const ProtocolContract c = check_protocol_contract(u, small, s.renaming);
    r.artifact["contract_n2"] = io::contract_json(c);
    r.add("contract n=2", c.ok && c.symmetric, "decides within " + std::to_string(c.rounds) + " rounds");
  }
  {
    Universe u(3, s.limits);
    const ProtocolContract c = check_protocol_contract(u, protocol, s.renaming);
    r.artifact["contract_n3"] = io::contract_json(c);
    r.add("contract n=3", c.ok && c.symmetric, "decides within " + std::to_string(c.rounds) + " rounds");
  }
  const CoverageVerdict cov = check_claim_complete(protocol, 3, s.renaming);
  r.artifact["coverage"] = io::coverage_json(cov);
  const bool table_ok = cov.table.at(1) == DecisionSet{1} && cov.table.at(2) == DecisionSet::range(1, 3) &&
                        cov.table.at(3) == DecisionSet::range(1, 5);
  r.add("coverage", cov.full && table_ok, "{1}, {1,2,3}, {1..5}");

  auto tower = make_tower(3, s);
  const int ell = 2;
  const auto sample = facets_by_key(tower->universe(), tower->level(ell));
  const ClaimReport claims = verify_lemma_4claims(*tower, ell, protocol, s.renaming_rounds, sample);
  r.artifact["claims"] = io::claims_json(claims);
  r.add("claims 1-4 at ell=2", claims.claim1 && claims.claim2 && claims.claim3 && claims.claim4,
        std::to_string(claims.facets) + " facets, " + std::to_string(claims.comparisons) + " face comparisons");
  r.add("composed names clash-free in 1..4", claims.clash_free && claims.range_split);

  const ValencyTask task = build_renaming_valency_task(3, claims);
  const ExtensionReport ext = check_global_extension(*tower, ell, sample.front(), protocol, s.renaming_rounds, task);
  r.artifact["extension"] = io::extension_json(ext);
  r.add("global extension", ext.ok(), std::to_string(ext.clamped) + " names clamped outside chi^{m+1}(tau)");
  return r;
}

inline SuiteResult suite_geometry(const Settings& s) {
  SuiteResult r;
  r.name = "geometry";
  auto tower = make_tower(3, s);
  Universe& u = tower->universe();
  json rows = json::array();
  for (int ell = 1; ell <= 4; ++ell) {
    Realization real(u, s.geometry);
    const EmbeddingReport rep = check_embedding(real, tower->level(ell));
    rows.push_back({{"ell", ell}, {"delta", s.geometry.delta}, {"embedding", io::embedding_json(rep)}});
    r.add("embedding level " + std::to_string(ell), rep.ok,
          std::to_string(tower->level(ell).facets().size()) + " triangles");
  }
  r.artifact["geometry"] = rows;
  r.artifact["level1"] = io::geometry_json(u, tower->level(1), s.geometry);
  return r;
}

using SuiteFn = std::function<SuiteResult(const Settings&)>;

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"counts", suite_counts},   {"observation", suite_observation}, {"sperner", suite_sperner},
      {"local", suite_local},     {"consensus", suite_consensus},     {"oracle", suite_oracle},
      {"game", suite_game},       {"renaming", suite_renaming},       {"geometry", suite_geometry}};
  return all;
}

inline SuiteResult run_suite(const std::string& name, const Settings& s) {
  for (const auto& [n, fn] : suites())
    if (n == name) {
      const auto t0 = std::chrono::steady_clock::now();
      SuiteResult r = fn(s);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace chromatic::verify
