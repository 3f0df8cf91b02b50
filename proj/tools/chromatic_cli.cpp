// chromatic: batch entry point for subdivisions, valencies, local solvers,
// renaming suites, prover games and the verification battery.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chromatic/chromatic.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace chromatic;
using json = io::json;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::string join_keys(const Universe& u, const Simplex& s) {
  std::string out;
  for (const auto& k : u.keys(s)) out += (out.empty() ? "" : ";") + k;
  return out;
}

// Splits on commas outside parentheses and braces.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// A move is an index into the selectable facets (key order) or a list of
// vertex keys joined by ';'.
Simplex parse_move(GameState& g, const std::string& token) {
  const auto options = selectable_facets(g);
  if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t i = std::stoul(token);
    if (i >= options.size())
      fail(ErrorCode::NotASuccessor, "facet index " + token + " out of range 0.." + std::to_string(options.size() - 1));
    return options[i];
  }
  return io::parse_simplex_text(g.universe(), token);
}

TaskKind parse_kind(const std::string& s) {
  try {
    return parse_task_kind(s);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Limits limits_from(std::size_t budget) {
  Limits l = Limits::from_environment();
  if (budget > 0) l.facet_budget = budget;
  return l;
}

std::string set_text(SmallSet s) { return s.to_string(); }

// ---- subcommands ----

int run_subdivide(int n, int ell, const std::string& json_path, const std::string& svg_path, double delta,
                  std::size_t budget) {
  Universe u(n, limits_from(budget));
  const Complex k = iterate_chi(u, u.input_simplex(), ell);
  std::printf("chi^%d(Delta^%d): %zu facets, %zu vertices, euler %ld\n", ell, n - 1, k.facets().size(),
              k.vertices().size(), k.euler_characteristic());
  if (!json_path.empty()) {
    json out = io::complex_json(u, k);
    if (n == 3 && ell <= 4) out["geometry"] = io::geometry_json(u, k, {delta});
    write_json(json_path, out);
  }
  if (!svg_path.empty()) {
    if (n != 3) throw UsageError("--svg needs n = 3");
    Realization r(u, {delta});
    const EmbeddingReport rep = check_embedding(r, k);
    write_file(svg_path, to_svg(r, k));
    if (!rep.ok) {
      std::printf("embedding check failed at delta %g: %zu flipped, %zu overlapping pairs\n", delta, rep.flipped,
                  rep.overlapping_pairs);
      return kCheckFailed;
    }
  }
  return 0;
}

int run_valency(TaskKind kind, int n, int ell, const std::string& simplex, const std::string& json_path,
                std::size_t budget, int rounds) {
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n, limits_from(budget)));
  Universe& u = tower->universe();
  ValencyTask task;
  if (kind == TaskKind::Renaming) {
    if (n != 3) throw UsageError("renaming valencies are computed for n = 3");
    const RecursiveIsRenaming protocol(n);
    const auto sample = facets_by_key(u, tower->level(ell));
    const ClaimReport rep = verify_lemma_4claims(*tower, ell, protocol, rounds, sample);
    task = build_renaming_valency_task(n, rep);
  } else {
    task = task_for(kind, n, ell);
  }
  std::vector<Simplex> list;
  if (!simplex.empty()) {
    list.push_back(io::parse_simplex_text(u, simplex));
  } else {
    list = tower->simplices(ell);
    std::sort(list.begin(), list.end(), [&](const Simplex& a, const Simplex& b) {
      return a.size() != b.size() ? a.size() < b.size() : key_less(u, a, b);
    });
  }
  json rows = json::array();
  for (const Simplex& s : list) {
    const DecisionSet v = task.val(u, s);
    std::printf("%s %s\n", set_text(v).c_str(), join_keys(u, s).c_str());
    rows.push_back({{"simplex", io::simplex_json(u, s)}, {"valency", io::set_json(v)}});
  }
  if (!json_path.empty())
    write_json(json_path, {{"task", std::string(to_string(kind))}, {"n", n}, {"ell", ell}, {"valencies", rows}});
  return 0;
}

int run_solve_local(TaskKind kind, int n, int ell, const std::string& tau_text, bool all, const std::string& json_path,
                    std::size_t budget) {
  if (kind != TaskKind::SetAgreement && kind != TaskKind::WeakSymmetryBreaking)
    throw UsageError("solve-local supports sa and wsb");
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n, limits_from(budget)));
  Universe& u = tower->universe();
  std::vector<Simplex> targets;
  if (all)
    targets = facets_by_key(u, tower->level(ell));
  else
    targets.push_back(io::parse_simplex_text(u, tau_text));
  std::size_t green = 0;
  json reports = json::array();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const LocalSolution sol = theorem_local_solution(kind, *tower, ell, targets[i]);
    const bool ok = sol.report.all_green(kind);
    green += ok;
    std::printf("%s tau[%zu] within=%zu global=%zu repairs=%zu%s\n", ok ? "green" : "FAILED", i,
                sol.report.census_within, sol.report.census_global, sol.report.repairs,
                sol.chosen ? " case=B" : (kind == TaskKind::SetAgreement ? " case=A" : ""));
    if (!ok)
      for (const Witness& w : sol.report.witnesses)
        std::printf("  witness %s expected %s got %s\n", join_keys(u, w.simplex).c_str(),
                    set_text(w.expected).c_str(), set_text(w.actual).c_str());
    reports.push_back(io::local_solution_json(u, sol, !all));
  }
  std::printf("%zu/%zu all green\n", green, targets.size());
  if (!json_path.empty()) write_json(json_path, reports);
  return green == targets.size() ? 0 : kCheckFailed;
}

int run_renaming(int n, int ell, const std::string& suite, int rounds, std::size_t sample_size,
                 const std::string& json_path, std::size_t budget, int round_cap) {
  if (n != 3) throw UsageError("the renaming suites run for n = 3");
  const RecursiveIsRenaming protocol(n);
  RenamingOptions options;
  options.round_cap = round_cap;
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n, limits_from(budget)));
  Universe& u = tower->universe();
  json out;
  bool ok = true;
  if (suite == "coverage" || suite == "contract") {
    const ProtocolContract c = check_protocol_contract(u, protocol, options);
    const CoverageVerdict cov = check_claim_complete(protocol, n, options);
    out = {{"contract", io::contract_json(c)}, {"coverage", io::coverage_json(cov)}};
    for (const auto& [p, names] : cov.table) std::printf("p=%d names %s\n", p, set_text(names).c_str());
    std::printf("contract %s, coverage %s\n", c.ok ? "ok" : "FAILED", cov.full ? "full" : "incomplete");
    for (const auto& p : c.problems) std::printf("  %s\n", p.c_str());
    ok = c.ok && cov.full;
  } else if (suite == "claims" || suite == "task") {
    if (ell < 1) throw UsageError("--ell must be at least 1");
    auto sample = facets_by_key(u, tower->level(ell));
    if (sample_size > 0 && sample_size < sample.size()) sample.resize(sample_size);
    const ClaimReport rep = verify_lemma_4claims(*tower, ell, protocol, rounds, sample);
    out = {{"claims", io::claims_json(rep)}};
    std::printf("claims over %zu facets: 1 %s, 2 %s, 3 %s, 4 %s, clash-free %s\n", rep.facets,
                rep.claim1 ? "ok" : "FAILED", rep.claim2 ? "ok" : "FAILED", rep.claim3 ? "ok" : "FAILED",
                rep.claim4 ? "ok" : "FAILED", rep.clash_free && rep.range_split ? "ok" : "FAILED");
    for (const auto& [d, names] : rep.by_dimension) std::printf("dim %d -> %s\n", d, set_text(names).c_str());
    for (const auto& w : rep.witnesses) std::printf("  %s\n", w.c_str());
    ok = rep.ok();
    if (suite == "task" && ok) {
      const ValencyTask task = build_renaming_valency_task(n, rep);
      const ExtensionReport ext = check_global_extension(*tower, ell, sample.front(), protocol, rounds, task);
      out["extension"] = io::extension_json(ext);
      std::printf("global extension %s (%zu clamped names)\n", ext.ok() ? "ok" : "FAILED", ext.clamped);
      for (const auto& w : ext.witnesses) std::printf("  %s\n", w.c_str());
      ok = ext.ok();
    }
  } else {
    throw UsageError("unknown renaming suite '" + suite + "'");
  }
  if (!json_path.empty()) write_json(json_path, out);
  return ok ? 0 : kCheckFailed;
}

void print_disclosures(const GameState& g, int phase) {
  const Universe& u = g.universe();
  std::printf("phase %d valencies:\n", phase);
  for (const LedgerEntry& e : g.ledger)
    if (e.phase == phase) std::printf("  L%d %s %s\n", e.level, set_text(e.valency).c_str(), join_keys(u, e.simplex).c_str());
}

void print_choices(const GameState& g) {
  const auto options = selectable_facets(g);
  std::printf("select a facet of chi(sigma_%d):\n", g.phase);
  for (std::size_t i = 0; i < options.size(); ++i)
    std::printf("  [%zu] %s\n", i, join_keys(g.universe(), options[i]).c_str());
}

int finish_game(const GameState& g, const std::string& transcript_path) {
  const GameState done = final_reveal(g);
  const AuditVerdict v = audit(done, *done.reveal);
  std::printf("reveal: %zu facets, %zu violating within, %zu globally\n", done.reveal->chi.facets().size(),
              done.reveal->census_within, done.reveal->census_global);
  std::printf("%s\n", v.name().c_str());
  for (const auto& w : v.witnesses) std::printf("  %s\n", w.c_str());
  if (!transcript_path.empty()) write_json(transcript_path, io::transcript_json(done, v));
  return v.survives() ? 0 : kCheckFailed;
}

int run_game(const GameConfig& config, const std::string& moves, bool exhaustive, bool interactive,
             const std::string& transcript_path, std::size_t budget) {
  const int modes = !moves.empty() + exhaustive + interactive;
  if (modes != 1) throw UsageError("choose exactly one of --moves, --exhaustive, --interactive");
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(std::max(config.n, 1), limits_from(budget)));
  if (exhaustive) {
    const ProverSummary s = exhaustive_prover(config, tower);
    std::printf("%zu/%zu survive\n", s.survivals, s.sequences);
    std::printf("ledger ok %zu/%zu; violating facets within reveals %zu; globally %zu..%zu per game\n", s.ledger_ok,
                s.sequences, s.census_within_total, s.global_census_min, s.global_census_max);
    for (const auto& f : s.failures) std::printf("  %s\n", f.c_str());
    if (!transcript_path.empty()) write_json(transcript_path, io::summary_json(config, s));
    return s.survivals == s.sequences && s.ledger_ok == s.sequences ? 0 : kCheckFailed;
  }
  GameState g = new_game(config, tower);
  if (!moves.empty()) {
    for (const std::string& token : split_top_level(moves)) {
      g = prover_select(g, parse_move(g, token));
      std::printf("phase %d: %s%s\n", g.phase, join_keys(g.universe(), g.current()).c_str(),
                  g.requested.back() ? " (embedded)" : "");
    }
    if (!g.terminal())
      throw UsageError("--moves has " + std::to_string(g.phase) + " moves, the game needs " +
                       std::to_string(config.R - 1));
    return finish_game(g, transcript_path);
  }
  std::string line;
  print_disclosures(g, 0);
  while (!g.terminal()) {
    print_choices(g);
    std::printf("> ");
    std::fflush(stdout);
    if (!std::getline(std::cin, line)) throw UsageError("input ended before the game did");
    if (line.empty()) continue;
    try {
      g = prover_select(g, parse_move(g, line));
    } catch (const Error& e) {
      std::printf("rejected: %s\n", e.what());
      continue;
    }
    if (!g.terminal()) print_disclosures(g, g.phase);
  }
  return finish_game(g, transcript_path);
}

int run_verify(const std::vector<std::string>& requested, const std::string& out_dir, const verify::Settings& settings) {
  std::vector<std::string> names;
  for (const std::string& r : requested) {
    if (r == "all") {
      for (const auto& [n, fn] : verify::suites()) names.push_back(n);
      continue;
    }
    bool known = false;
    for (const auto& [n, fn] : verify::suites()) known = known || n == r;
    if (!known) throw UsageError("unknown suite '" + r + "'");
    names.push_back(r);
  }
  bool all_ok = true;
  for (const std::string& name : names) {
    const verify::SuiteResult r = verify::run_suite(name, settings);
    for (const auto& c : r.checks)
      std::printf("%s %s/%s%s%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), c.name.c_str(), c.detail.empty() ? "" : ": ",
                  c.detail.c_str());
    std::printf("-- %s %s (%.1fs)\n", name.c_str(), r.ok() ? "ok" : "FAILED", r.seconds);
    all_ok = all_ok && r.ok();
    if (!out_dir.empty()) {
      json artifact = r.artifact;
      json checks = json::array();
      for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      artifact["checks"] = checks;
      artifact["ok"] = r.ok();
      write_json(fs::path(out_dir) / (name + ".json"), artifact);
    }
    std::fflush(stdout);
  }
  return all_ok ? 0 : kCheckFailed;
}

bool usage_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidKey:
    case ErrorCode::UnsupportedN:
    case ErrorCode::DimensionOutOfRange:
    case ErrorCode::EmptyIdSet:
    case ErrorCode::NotInComplex:
    case ErrorCode::NotASuccessor:
    case ErrorCode::GameOver:
    case ErrorCode::WrongPhase: return true;
    default: return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic subdivisions, valency tasks and the prover game"};
  app.require_subcommand(1);
  std::size_t budget = 0;
  app.add_option("--budget", budget, "facet budget (default 10000000, or CHROMATIC_FACET_BUDGET)");

  std::string task = "sa", simplex, tau, json_path, svg_path, moves, transcript, suite, out_dir;
  int n = 3, ell = 1, R = 2, rounds = 3, round_cap = 8;
  double delta = GeometryOptions{}.delta;
  bool all = false, exhaustive = false, interactive = false;
  std::size_t sample = 0, oracle_budget = 50'000'000;
  std::vector<std::string> suites{"all"};

  auto* sub = app.add_subcommand("subdivide", "build chi^ell of the input simplex");
  sub->add_option("--n", n, "processes")->check(CLI::Range(1, kMaxProcesses));
  sub->add_option("--ell", ell, "rounds")->check(CLI::Range(0, 8));
  sub->add_option("--json", json_path, "write the complex as JSON");
  sub->add_option("--svg", svg_path, "write an SVG drawing (n = 3)");
  sub->add_option("--delta", delta, "own-id weight offset for the drawing");

  auto* val = app.add_subcommand("valency", "valencies of a valency task");
  val->add_option("--task", task, "sa|wsb|renaming");
  val->add_option("--n", n)->check(CLI::Range(1, kMaxProcesses));
  val->add_option("--ell", ell)->check(CLI::Range(0, 8));
  val->add_option("--simplex", simplex, "vertex keys joined by ';'");
  val->add_option("--rounds", rounds, "renaming protocol rounds");
  val->add_option("--json", json_path);

  auto* solve = app.add_subcommand("solve-local", "local solutions of a valency task");
  solve->add_option("--task", task, "sa|wsb");
  solve->add_option("--n", n)->check(CLI::Range(3, kMaxProcesses));
  solve->add_option("--ell", ell)->check(CLI::Range(0, 8));
  auto* tau_opt = solve->add_option("--tau", tau, "facet keys joined by ';'");
  auto* all_opt = solve->add_flag("--all", all, "every facet of chi^ell");
  tau_opt->excludes(all_opt);
  solve->add_option("--json", json_path);

  auto* ren = app.add_subcommand("renaming", "renaming suites");
  ren->add_option("--n", n)->check(CLI::Range(2, kMaxProcesses));
  ren->add_option("--ell", ell)->check(CLI::Range(0, 8));
  ren->add_option("--suite", suite, "claims|coverage|task")->required();
  ren->add_option("--rounds", rounds, "protocol rounds m");
  ren->add_option("--round-cap", round_cap, "simulation round cap");
  ren->add_option("--sample", sample, "limit the claims to the first K facets");
  ren->add_option("--json", json_path);

  auto* game = app.add_subcommand("game", "play the prover game");
  game->add_option("--task", task, "sa|wsb");
  game->add_option("--n", n);
  game->add_option("--R", R, "rounds of the hypothetical protocol");
  game->add_option("--moves", moves, "comma-separated facet indices or ';'-joined keys");
  game->add_flag("--exhaustive", exhaustive);
  game->add_flag("--interactive", interactive);
  game->add_option("--transcript", transcript, "write the transcript (or summary) as JSON");

  auto* ver = app.add_subcommand("verify", "run the verification battery");
  ver->add_option("--suite", suites, "all|counts|observation|sperner|local|consensus|oracle|game|renaming|geometry")
      ->delimiter(',');
  ver->add_option("--out", out_dir, "directory for JSON artifacts");
  ver->add_option("--delta", delta);
  ver->add_option("--rounds", rounds);
  ver->add_option("--round-cap", round_cap);
  ver->add_option("--oracle-budget", oracle_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sub) return run_subdivide(n, ell, json_path, svg_path, delta, budget);
    if (*val) return run_valency(parse_kind(task), n, ell, simplex, json_path, budget, rounds);
    if (*solve) {
      if (!all && tau.empty()) throw UsageError("give --tau or --all");
      return run_solve_local(parse_kind(task), n, ell, tau, all, json_path, budget);
    }
    if (*ren) return run_renaming(n, ell, suite, rounds, sample, json_path, budget, round_cap);
    if (*game) return run_game({n, R, parse_kind(task)}, moves, exhaustive, interactive, transcript, budget);
    if (*ver) {
      verify::Settings settings;
      settings.limits = limits_from(budget);
      settings.geometry.delta = delta;
      settings.renaming_rounds = rounds;
      settings.renaming.round_cap = round_cap;
      settings.oracle_budget = oracle_budget;
      return run_verify(suites, out_dir, settings);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return usage_code(e.code()) ? kUsage : kCheckFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCheckFailed;
  }
  return kUsage;
}
