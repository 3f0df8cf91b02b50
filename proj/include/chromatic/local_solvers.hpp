#pragma once

// One-round local solutions for the set agreement and WSB valency tasks, and
// the two-process consensus counterexample.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/valency.hpp"

namespace chromatic {

// Which (n-2)-faces of the simplex must show every color. Without a chosen
// face all of them must; with one, that face keeps its own ids instead.
struct SaLemmaMode {
  std::optional<Simplex> chosen;

  static SaLemmaMode case_a() { return {}; }
  static SaLemmaMode case_b(const Simplex& face) { return {face}; }
  bool is_case_b() const { return chosen.has_value(); }
};

namespace detail {
inline bool is_central_of(const Universe& u, VertexId v, IdSet face_ids) { return u.ids(u.view(v)) == face_ids; }

inline Simplex face_without(const Universe& u, const Simplex& s, int id) {
  Simplex out;
  for (VertexId v : s)
    if (u.id(v).value != id) out.insert(v);
  return out;
}

inline int missing_id(const Universe& u, const Simplex& face) {
  const IdSet rest = full_id_set(u.n()) - u.ids(face);
  require(rest.size() == 1, ErrorCode::BadFace, "expected a face missing exactly one id");
  return rest.min();
}
}  // namespace detail

// Colors chi(rho_i), rho_i the face of a facet opposite id i: ids on the
// boundary, and the central simplex arranged so that no (n-2)-simplex of
// chi(rho_i) carries exactly the colors of sigma minus j.
inline Coloring claim_sa_face_coloring(Universe& u, const Simplex& rho_i, int i, int j) {
  const int n = u.n();
  require(i >= 0 && i < n && j >= 0 && j < n, ErrorCode::InvalidArgument, "color out of range");
  const IdSet face = u.ids(rho_i);
  if (face.contains(i)) fail(ErrorCode::BadFace, "face " + face.to_string() + " contains id " + std::to_string(i));
  require(rho_i.size() == n - 1, ErrorCode::BadFace, "the face must have n-1 vertices");

  const Complex k = chi_simplex(u, rho_i);
  Coloring c(k.level(), alphabet_range(0, n - 1));
  std::optional<int> pick;
  if (i != j)
    for (int id : face.values())
      if (id != j) {
        pick = id;
        break;
      }
  for (VertexId v : k.vertices()) {
    const int id = u.id(v).value;
    if (!detail::is_central_of(u, v, face))
      c.set(v, id);
    else if (i == j)
      c.set(v, i);
    else
      c.set(v, id == *pick ? i : j);
  }

  bool uses_i = false;
  c.for_each([&](VertexId, int d) { uses_i = uses_i || d == i; });
  const IdSet avoided = full_id_set(n) - IdSet::single(j);
  bool avoided_hit = false;
  for (const Simplex& f : k.facets()) avoided_hit = avoided_hit || c.decisions(f) == avoided;
  if (!uses_i || avoided_hit)
    fail(ErrorCode::UnsatisfiedPostcondition, "face coloring for i=" + std::to_string(i) + ", j=" + std::to_string(j));
  return c;
}

struct SaLemmaColoring {
  Complex chi;
  Coloring coloring;
  int base_color = 0;
};

// A coloring of chi(rho) with no fully colored facet whose small faces keep
// their ids, and whose (n-2)-faces behave as the mode asks.
inline SaLemmaColoring lemma_sa_coloring(Universe& u, const Simplex& rho, const SaLemmaMode& mode) {
  const int n = u.n();
  require(n >= 3, ErrorCode::UnsupportedN, "the construction needs n >= 3");
  require(rho.size() == n && u.is_chromatic(rho), ErrorCode::BadFace, "expected a facet");
  std::optional<int> chosen_missing;
  if (mode.is_case_b()) {
    require(mode.chosen->size() == n - 1 && mode.chosen->subset_of(rho), ErrorCode::BadFace,
            "the chosen face must be an (n-2)-face of the simplex");
    chosen_missing = detail::missing_id(u, *mode.chosen);
  }
  // The central simplex is monochromatic in a; a must differ from the id
  // missing on the chosen face, or that face and one central vertex would
  // complete all n colors.
  const int a = (chosen_missing && *chosen_missing == 0) ? 1 : 0;

  SaLemmaColoring out{chi_simplex(u, rho), Coloring(u.level(rho) + 1, alphabet_range(0, n - 1)), a};
  std::vector<std::optional<Coloring>> face_colorings(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (i != chosen_missing)
      face_colorings[static_cast<std::size_t>(i)] = claim_sa_face_coloring(u, detail::face_without(u, rho, i), i, a);

  for (VertexId v : out.chi.vertices()) {
    const IdSet seen = u.ids(u.view(v));
    if (seen.size() == n) {
      out.coloring.set(v, a);
    } else if (seen.size() == n - 1) {
      const auto& fc = face_colorings[static_cast<std::size_t>((full_id_set(n) - seen).min())];
      out.coloring.set(v, fc ? fc->at(v) : u.id(v).value);
    } else {
      out.coloring.set(v, u.id(v).value);
    }
  }

  const DecisionIndex index(u, out.coloring, out.chi, u.level(rho));
  const IdSet full = full_id_set(n);
  std::string broken;
  for (const Simplex& f : all_faces(rho)) {
    const DecisionSet d = index.on(f);
    if (f.dim() <= n - 3 && d != u.ids(f)) broken = "small face not id-colored";
    if (f.dim() == n - 2) {
      const bool is_chosen = mode.is_case_b() && f == *mode.chosen;
      if (d != (is_chosen ? u.ids(f) : full)) broken = "an (n-2)-face has the wrong decision set";
    }
    if (f.dim() == n - 1 && d != full) broken = "the simplex does not use every color";
  }
  if (broken.empty() && census_fully_colored(u, out.coloring, out.chi).count != 0) broken = "fully colored facet";
  if (!broken.empty()) fail(ErrorCode::UnsatisfiedPostcondition, "set agreement lemma: " + broken);
  return out;
}

// Two-color version: no monochromatic facet in chi(rho), both colors on
// every (n-2)-face, color 1 on small faces.
inline Coloring lemma_wsb_coloring(Universe& u, const Simplex& rho) {
  const int n = u.n();
  require(n >= 3, ErrorCode::UnsupportedN, "the construction needs n >= 3");
  require(rho.size() == n && u.is_chromatic(rho), ErrorCode::BadFace, "expected a facet");
  const Complex chi = chi_simplex(u, rho);
  Coloring c(chi.level(), {0, 1});
  for (VertexId v : chi.vertices()) {
    const IdSet seen = u.ids(u.view(v));
    const int id = u.id(v).value;
    if (seen.size() <= n - 2)
      c.set(v, 1);
    else if (seen.size() == n - 1)
      c.set(v, !seen.contains(0) ? 0 : (id == seen.min() ? 1 : 0));
    else
      c.set(v, id == 0 ? 1 : 0);
  }

  const DecisionIndex index(u, c, chi, u.level(rho));
  std::string broken;
  for (const Simplex& f : all_faces(rho)) {
    const DecisionSet d = index.on(f);
    if (f.dim() <= n - 3 && d != DecisionSet{1}) broken = "small face not colored 1";
    if (f.dim() >= n - 2 && d != DecisionSet{0, 1}) broken = "face misses a color";
  }
  if (broken.empty() && census_monochromatic(c, chi).count != 0) broken = "monochromatic facet";
  if (!broken.empty()) fail(ErrorCode::UnsatisfiedPostcondition, "WSB lemma: " + broken);
  return c;
}

struct LocalReport {
  bool sperner = false;    // set agreement
  bool symmetric = false;  // WSB
  bool consistent = false;
  bool complete = false;
  std::size_t census_within = 0;
  std::size_t census_global = 0;
  std::size_t repairs = 0;
  std::size_t replicated = 0;
  std::vector<Witness> witnesses;

  bool all_green(TaskKind kind) const {
    const bool shape = kind == TaskKind::SetAgreement ? sperner : symmetric;
    return shape && consistent && complete && census_within == 0;
  }
};

struct LocalSolution {
  TaskKind kind = TaskKind::SetAgreement;
  int ell = 0;
  Simplex tau;
  std::optional<Simplex> embedded_from;
  std::optional<Simplex> chosen;  // set agreement: the boundary face kept id-colored
  Coloring coloring;              // on all of chi^{l+1}(sigma)
  Complex chi_tau;
  LocalReport report;
};

namespace detail {
inline Simplex containing_facet(const Universe& u, const Complex& k, const Simplex& s) {
  require(!s.empty(), ErrorCode::NotInComplex, "empty simplex");
  std::optional<Simplex> best;
  for (std::uint32_t f : k.star(s[0]))
    if (s.subset_of(k.facets()[f]) && (!best || key_less(u, k.facets()[f], *best))) best = k.facets()[f];
  if (!best) fail(ErrorCode::NotInComplex, "simplex is not in the level-" + std::to_string(k.level()) + " complex");
  return *best;
}

inline void resolve_tau(const Universe& u, const Complex& k, const Simplex& input, LocalSolution& out) {
  if (input.size() == u.n() && k.contains(input)) {
    out.tau = input;
    return;
  }
  out.tau = containing_facet(u, k, input);
  out.embedded_from = input;
}

// (n-2)-simplexes of the level complex that lie outside chi(tau)'s facet.
inline std::vector<Simplex> ridges(const Complex& k, int n) { return k.simplices_of_dim(n - 2); }

inline Simplex smallest_id_central_vertex(Universe& u, const Simplex& lambda) {
  const Simplex central = central_of(u, lambda);
  VertexId best = central[0];
  for (VertexId v : central)
    if (u.id(v) < u.id(best)) best = v;
  return Simplex{best};
}
}  // namespace detail

// c_tau on chi^{l+1}(sigma): the lemma coloring on chi(tau), ids elsewhere,
// then one central vertex recolored in every (n-2)-simplex whose subdivision
// would otherwise miss a value its valency promises.
inline LocalSolution theorem_sa_local_solution(SubdivisionTower& tower, int ell, const Simplex& tau_input) {
  Universe& u = tower.universe();
  const int n = u.n();
  require(n >= 3, ErrorCode::UnsupportedN, "the construction needs n >= 3");
  require(ell >= 1, ErrorCode::InvalidArgument, "the construction needs l >= 1");
  const Complex& k = tower.level(ell);
  const Complex& kl = tower.level(ell + 1);
  LocalSolution out;
  out.kind = TaskKind::SetAgreement;
  out.ell = ell;
  detail::resolve_tau(u, k, tau_input, out);

  const IdSet full = full_id_set(n);
  std::vector<Simplex> boundary;
  for (const Simplex& f : faces(out.tau, n - 2))
    if (u.carrier(f) != full) boundary.push_back(f);
  if (boundary.size() > 1)
    fail(ErrorCode::UnsatisfiedPostcondition, "more than one (n-2)-face of tau touches the boundary");
  const SaLemmaMode mode = boundary.empty() ? SaLemmaMode::case_a() : SaLemmaMode::case_b(boundary.front());
  out.chosen = mode.chosen;
  SaLemmaColoring lemma = lemma_sa_coloring(u, out.tau, mode);
  out.chi_tau = std::move(lemma.chi);

  out.coloring = id_coloring(u, kl);
  for (VertexId v : out.chi_tau.vertices()) out.coloring.set(v, lemma.coloring.at(v));

  {
    const DecisionIndex index(u, out.coloring, kl, ell);
    for (const Simplex& lambda : detail::ridges(k, n)) {
      if (u.carrier(lambda) != full) continue;
      const DecisionSet d = index.on(lambda);
      if (d == full) continue;
      const IdSet missing = full - d;
      require(missing.size() == 1, ErrorCode::UnsatisfiedPostcondition, "ridge misses more than one value");
      out.coloring.set(detail::smallest_id_central_vertex(u, lambda)[0], missing.min());
      ++out.report.repairs;
    }
  }

  const ValencyTask task = sa_task(n, ell);
  const ConsistencyVerdict verdict = check_consistent_complete(u, out.coloring, kl, task, tower.simplices(ell), 1);
  out.report.sperner = is_sperner(u, out.coloring, kl);
  out.report.consistent = verdict.consistent;
  out.report.complete = verdict.complete;
  out.report.witnesses = verdict.inconsistent;
  out.report.witnesses.insert(out.report.witnesses.end(), verdict.incomplete.begin(), verdict.incomplete.end());
  out.report.census_within = census_fully_colored(u, out.coloring, out.chi_tau).count;
  out.report.census_global = census_fully_colored(u, out.coloring, kl).count;
  if (!out.report.all_green(TaskKind::SetAgreement))
    fail(ErrorCode::UnsatisfiedPostcondition, "set agreement local solution failed its own checks");
  return out;
}

// b_tau on chi^{l+1}(sigma): the lemma coloring on chi(tau), copied onto
// every symmetric counterpart of its boundary part, 1 elsewhere, then one
// central vertex set to 0 in every (n-2)-simplex still missing 0.
inline LocalSolution theorem_wsb_local_solution(SubdivisionTower& tower, int ell, const Simplex& tau_input) {
  Universe& u = tower.universe();
  const int n = u.n();
  require(n >= 3, ErrorCode::UnsupportedN, "the construction needs n >= 3");
  require(ell >= 1, ErrorCode::InvalidArgument, "the construction needs l >= 1");
  const Complex& k = tower.level(ell);
  const Complex& kl = tower.level(ell + 1);
  LocalSolution out;
  out.kind = TaskKind::WeakSymmetryBreaking;
  out.ell = ell;
  detail::resolve_tau(u, k, tau_input, out);

  const Coloring lemma = lemma_wsb_coloring(u, out.tau);
  out.chi_tau = chi_simplex(u, out.tau);
  out.coloring = constant_coloring(kl, 1, {0, 1});
  for (VertexId v : out.chi_tau.vertices()) out.coloring.set(v, lemma.at(v));

  const IdSet full = full_id_set(n);
  std::map<std::uint32_t, int> copies;
  for (VertexId v : out.chi_tau.vertices()) {
    const IdSet carr = u.carrier(v);
    if (carr == full) continue;
    for (IdSet other : equal_size_faces(n, carr)) {
      const VertexId w = u.relabel(v, order_preserving_map(carr, other, n));
      const int value = lemma.at(v);
      const bool clash_inside = out.chi_tau.has_vertex(w) && lemma.at(w) != value;
      auto [it, fresh] = copies.emplace(w.index, value);
      if (clash_inside || (!fresh && it->second != value))
        fail(ErrorCode::AmbiguousReplication, "two boundary vertices of chi(tau) replicate onto " + u.key(w));
    }
  }
  for (auto [w, value] : copies) out.coloring.set(VertexId{w}, value);
  out.report.replicated = copies.size();

  {
    const DecisionIndex index(u, out.coloring, kl, ell);
    for (const Simplex& lambda : detail::ridges(k, n)) {
      const DecisionSet d = index.on(lambda);
      if (d.contains(0)) continue;
      out.coloring.set(detail::smallest_id_central_vertex(u, lambda)[0], 0);
      ++out.report.repairs;
    }
  }

  const ValencyTask task = wsb_task(n, ell);
  const ConsistencyVerdict verdict = check_consistent_complete(u, out.coloring, kl, task, tower.simplices(ell), 1);
  out.report.symmetric = is_symmetric(u, out.coloring, kl);
  out.report.consistent = verdict.consistent;
  out.report.complete = verdict.complete;
  out.report.witnesses = verdict.inconsistent;
  out.report.witnesses.insert(out.report.witnesses.end(), verdict.incomplete.begin(), verdict.incomplete.end());
  out.report.census_within = census_monochromatic(out.coloring, out.chi_tau).count;
  out.report.census_global = census_monochromatic(out.coloring, kl).count;
  if (!out.report.all_green(TaskKind::WeakSymmetryBreaking))
    fail(ErrorCode::UnsatisfiedPostcondition, "WSB local solution failed its own checks");
  return out;
}

inline LocalSolution theorem_local_solution(TaskKind kind, SubdivisionTower& tower, int ell, const Simplex& tau) {
  switch (kind) {
    case TaskKind::SetAgreement: return theorem_sa_local_solution(tower, ell, tau);
    case TaskKind::WeakSymmetryBreaking: return theorem_wsb_local_solution(tower, ell, tau);
    default: fail(ErrorCode::InvalidArgument, "no one-round construction for " + std::string(to_string(kind)));
  }
}

// ---- two-process consensus ----

// The path chi(sigma) for n = 2, corner to corner: (0,<0>), (1,<01>), (0,<01>), (1,<1>).
inline std::vector<VertexId> consensus_path(Universe& u, const Simplex& edge) {
  require(u.n() == 2 && edge.size() == 2, ErrorCode::InvalidArgument, "consensus needs n = 2 and an edge");
  const VertexId a = *u.member_with_id(edge, ProcessId(0));
  const VertexId b = *u.member_with_id(edge, ProcessId(1));
  return {u.intern(ProcessId(0), Simplex{a}), u.intern(ProcessId(1), edge), u.intern(ProcessId(0), edge),
          u.intern(ProcessId(1), Simplex{b})};
}

// Valencies on the four vertices of chi^1(sigma); the solo corners are forced.
inline Simplex consensus_find_bivalent_edge(Universe& u, const std::map<std::uint32_t, DecisionSet>& valencies) {
  const auto path = consensus_path(u, u.input_simplex());
  auto val = [&](VertexId v) {
    auto it = valencies.find(v.index);
    if (it == valencies.end()) fail(ErrorCode::ForcedValencyViolated, "no valency for " + u.key(v));
    if (it->second != DecisionSet{0} && it->second != DecisionSet{1})
      fail(ErrorCode::ForcedValencyViolated, "valency of " + u.key(v) + " must be {0} or {1}");
    return it->second;
  };
  if (val(path[0]) != DecisionSet{0}) fail(ErrorCode::ForcedValencyViolated, "solo run of process 0 must decide 0");
  if (val(path[3]) != DecisionSet{1}) fail(ErrorCode::ForcedValencyViolated, "solo run of process 1 must decide 1");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (val(path[i]) != val(path[i + 1])) return Simplex{path[i], path[i + 1]};
  fail(ErrorCode::UnsatisfiedPostcondition, "no bivalent edge on a path with distinct endpoints");
}

struct ConsensusCandidate {
  std::array<int, 4> decisions{};  // along the path of chi(edge)
  bool consistent = false;
  bool complete = false;
  bool agreement = false;
};

struct ConsensusProof {
  Simplex edge;
  std::vector<VertexId> path;
  std::vector<ConsensusCandidate> candidates;
  std::size_t survivors = 0;
  std::size_t without_completeness = 0;
  std::size_t without_agreement = 0;
  std::size_t without_consistency = 0;
  std::size_t agreement_only = 0;
};

// Every binary coloring of chi(edge) fails consistency, completeness or
// agreement. `valency_u` and `valency_v` are the singleton valencies of the
// edge's endpoints, ordered by process id.
inline ConsensusProof consensus_prove_locally_unsolvable(Universe& u, const Simplex& edge, DecisionSet valency_0,
                                                          DecisionSet valency_1) {
  require(valency_0.size() == 1 && valency_1.size() == 1 && valency_0 != valency_1, ErrorCode::InvalidArgument,
          "the edge must be bivalent with singleton endpoint valencies");
  ConsensusProof proof;
  proof.edge = edge;
  proof.path = consensus_path(u, edge);
  for (int bits = 0; bits < 16; ++bits) {
    ConsensusCandidate c;
    for (int i = 0; i < 4; ++i) c.decisions[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    const auto& d = c.decisions;
    c.consistent = valency_0.contains(d[0]) && valency_1.contains(d[3]);
    DecisionSet all;
    for (int x : d) all.insert(x);
    c.complete = all == DecisionSet{0, 1};
    c.agreement = d[0] == d[1] && d[1] == d[2] && d[2] == d[3];
    proof.survivors += c.consistent && c.complete && c.agreement;
    proof.without_completeness += c.consistent && c.agreement;
    proof.without_agreement += c.consistent && c.complete;
    proof.without_consistency += c.complete && c.agreement;
    proof.agreement_only += c.agreement;
    proof.candidates.push_back(c);
  }
  return proof;
}

}  // namespace chromatic
