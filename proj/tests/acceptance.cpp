// Acceptance battery: one PASS/FAIL line per criterion, each with its time
// budget. Usage: acceptance <path to chromatic cli> <scratch dir>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>

#include "chromatic/chromatic.hpp"

using namespace chromatic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_seconds) {
    o.ok = false;
    o.detail += " (over budget " + std::to_string(static_cast<int>(budget_seconds)) + "s)";
  }
  failures += !o.ok;
  std::printf("%s %s [%.2fs] %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::shared_ptr<SubdivisionTower> tower_for(int n) {
  return std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n));
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

Outcome counts() {
  struct Row {
    int n, ell;
    std::size_t facets;
  };
  const Row rows[] = {{3, 1, 13}, {3, 2, 169}, {3, 3, 2197}, {4, 1, 75}, {4, 2, 5625}};
  std::string detail;
  bool ok = true;
  for (const Row& r : rows) {
    Universe u(r.n);
    const Complex k = iterate_chi(u, u.input_simplex(), r.ell);
    const bool row_ok = k.facets().size() == r.facets && (r.n != 3 || k.euler_characteristic() == 1);
    ok = ok && row_ok;
    detail += "(" + std::to_string(r.n) + "," + std::to_string(r.ell) + ")=" + std::to_string(k.facets().size()) + " ";
  }
  return {ok, detail + "euler 1"};
}

Outcome observation() {
  std::size_t total = 0;
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    auto t = tower_for(n);
    const CarrierObservation o = check_carrier_observation(t->universe(), t->simplices(ell));
    if (!o.ok()) return {false, "witness " + t->universe().keys(*o.witness).front()};
    total += o.simplices;
  }
  return {true, std::to_string(total) + " simplexes"};
}

Outcome set_agreement_suite() {
  std::size_t good = 0, total = 0;
  for (auto [n, ell, expected] : {std::tuple{3, 1, 13u}, {3, 2, 169u}, {4, 1, 75u}}) {
    auto t = tower_for(n);
    Universe& u = t->universe();
    const Complex& outer = t->level(ell + 1);
    std::size_t here = 0;
    for (const Simplex& tau : t->level(ell).facets()) {
      const LocalSolution s = theorem_sa_local_solution(*t, ell, tau);
      const bool sperner = is_sperner(u, s.coloring, outer);
      const auto v = check_consistent_complete(u, s.coloring, outer, sa_task(n, ell), t->simplices(ell), 1);
      const std::size_t within = census_fully_colored(u, s.coloring, s.chi_tau).count;
      const ParityVerdict p = sperner_parity_check(u, s.coloring, outer);
      here += sperner && v.consistent && v.complete && within == 0 && p.odd && p.fully_colored >= 1;
    }
    if (t->level(ell).facets().size() != expected) return {false, "facet count"};
    good += here;
    total += expected;
  }
  return {good == total, frac(good, total) + " facets"};
}

Outcome wsb_suite() {
  std::size_t good = 0, total = 0;
  for (auto [n, ell, expected] : {std::tuple{3, 1, 13u}, {3, 2, 169u}, {4, 1, 75u}}) {
    auto t = tower_for(n);
    Universe& u = t->universe();
    const Complex& outer = t->level(ell + 1);
    for (const Simplex& tau : t->level(ell).facets()) {
      const LocalSolution s = theorem_wsb_local_solution(*t, ell, tau);
      const bool sym = is_symmetric(u, s.coloring, outer);
      const auto v = check_consistent_complete(u, s.coloring, outer, wsb_task(n, ell), t->simplices(ell), 1);
      const std::size_t within = census_monochromatic(s.coloring, s.chi_tau).count;
      const std::size_t global = census_monochromatic(s.coloring, outer).count;
      good += sym && v.consistent && v.complete && within == 0 && global >= 1;
    }
    total += expected;
  }
  return {good == total, frac(good, total) + " facets"};
}

Outcome consensus() {
  std::size_t refuted = 0;
  for (int mid1 = 0; mid1 < 2; ++mid1)
    for (int mid0 = 0; mid0 < 2; ++mid0) {
      Universe u(2);
      const auto path = consensus_path(u, u.input_simplex());
      const std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{0}},
                                                     {path[1].index, DecisionSet{mid1}},
                                                     {path[2].index, DecisionSet{mid0}},
                                                     {path[3].index, DecisionSet{1}}};
      const Simplex edge = consensus_find_bivalent_edge(u, val);
      const VertexId a = *u.member_with_id(edge, ProcessId(0));
      const VertexId b = *u.member_with_id(edge, ProcessId(1));
      if (val.at(a.index) == val.at(b.index)) return {false, "edge is not bivalent"};
      const ConsensusProof p = consensus_prove_locally_unsolvable(u, edge, val.at(a.index), val.at(b.index));
      refuted += p.candidates.size() == 16 && p.survivors == 0;
    }
  return {refuted == 4, frac(refuted, 4) + " assignments refuted over 16 colorings each"};
}

Outcome game() {
  std::string detail;
  bool ok = true;
  for (TaskKind kind : {TaskKind::SetAgreement, TaskKind::WeakSymmetryBreaking})
    for (auto [R, expected] : {std::pair{2, 13u}, {3, 169u}}) {
      const ProverSummary s = exhaustive_prover({3, R, kind});
      ok = ok && s.sequences == expected && s.survivals == expected && s.ledger_ok == expected;
      detail += std::string(to_string(kind)) + " R=" + std::to_string(R) + " " + frac(s.survivals, s.sequences) + "; ";
    }
  return {ok, detail};
}

Outcome renaming() {
  const RecursiveIsRenaming protocol(3);
  Universe u(3);
  const ProtocolContract c = check_protocol_contract(u, protocol);
  if (!c.ok) return {false, "contract: " + (c.problems.empty() ? std::string() : c.problems.front())};
  const CoverageVerdict cov = check_claim_complete(protocol, 3);
  if (!cov.full || cov.table.at(1) != DecisionSet{1} || cov.table.at(2) != (DecisionSet{1, 2, 3}) ||
      cov.table.at(3) != (DecisionSet{1, 2, 3, 4, 5}))
    return {false, "coverage table"};

  auto t = tower_for(3);
  const auto facets = facets_by_key(t->universe(), t->level(2));
  std::size_t clash_free = 0;
  for (const Simplex& tau : facets) {
    const ComposedSolution s = compose_algorithm_A(*t, 2, tau, protocol, 3);
    clash_free += check_renaming_output(t->universe(), s.names, s.complex).ok;
  }
  const ClaimReport rep = verify_lemma_4claims(*t, 2, protocol, 3, facets);
  const bool claims = rep.claim1 && rep.claim2 && rep.claim3 && rep.claim4;
  return {clash_free == facets.size() && claims && facets.size() == 169,
          "contract ok, coverage full, " + frac(clash_free, facets.size()) + " clash-free, claims " +
              (claims ? "hold" : "fail") + " over " + std::to_string(rep.comparisons) + " comparisons"};
}

Outcome oracle() {
  std::size_t consensus_ok = 0;
  for (int mid1 = 0; mid1 < 2; ++mid1)
    for (int mid0 = 0; mid0 < 2; ++mid0) {
      Universe u(2);
      const auto path = consensus_path(u, u.input_simplex());
      const std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{0}},
                                                     {path[1].index, DecisionSet{mid1}},
                                                     {path[2].index, DecisionSet{mid0}},
                                                     {path[3].index, DecisionSet{1}}};
      const Simplex edge = consensus_find_bivalent_edge(u, val);
      const Complex base(1, {Simplex{path[0], path[1]}, Simplex{path[1], path[2]}, Simplex{path[2], path[3]}});
      const OracleVerdict v = brute_force_local_search(u, consensus_task(val), edge, base, 1'000'000);
      consensus_ok += !v.exists && v.exhaustive && v.space == 16;
    }

  std::size_t spot = 0, agree = 0;
  for (TaskKind kind : {TaskKind::SetAgreement, TaskKind::WeakSymmetryBreaking}) {
    auto t = tower_for(3);
    Universe& u = t->universe();
    const Complex& base = t->level(1);
    std::vector<Simplex> picks{central_simplex(u, base), base.facets().front(), base.facets().back()};
    for (const Simplex& tau : picks) {
      const OracleVerdict v = brute_force_local_search(u, task_for(kind, 3, 1), tau, base, 50'000'000);
      const bool built = theorem_local_solution(kind, *t, 1, tau).report.all_green(kind);
      agree += v.exists == built;
      ++spot;
    }
  }
  return {consensus_ok == 4 && agree == spot && spot >= 3,
          "consensus " + frac(consensus_ok, 4) + ", spot checks " + frac(agree, spot)};
}

int run_command(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return status;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& cli, const fs::path& scratch) {
  const fs::path a = scratch / "runA", b = scratch / "runB";
  fs::remove_all(a);
  fs::remove_all(b);
  if (run_command(cli + " verify --suite all --out " + a.string()) != 0) return {false, "first run failed"};
  if (run_command(cli + " verify --suite all --out " + b.string()) != 0) return {false, "second run failed"};
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
      return {false, entry.path().filename().string() + " differs"};
    ++files;
  }
  std::size_t files_b = std::distance(fs::directory_iterator(b), fs::directory_iterator{});
  return {files > 0 && files == files_b, std::to_string(files) + " artifacts byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <chromatic cli> <scratch dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  criterion("subdivision-counts", 10, counts);
  criterion("carrier-observation", 10, observation);
  criterion("set-agreement-local-solutions", 120, set_agreement_suite);
  criterion("wsb-local-solutions", 120, wsb_suite);
  criterion("consensus-no-local-solution", 1, consensus);
  criterion("prover-game-exhaustive", 300, game);
  criterion("renaming", 900, renaming);
  criterion("oracle-independence", 300, oracle);
  criterion("determinism", 600, [&] { return determinism(cli, scratch); });

  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
