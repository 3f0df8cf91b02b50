#pragma once

// Renaming on top of WSB: an IIS simulator for comparison-based protocols, a
// recursive immediate-snapshot renaming protocol, the two-instance
// composition, and the checks that make the resulting decision sets a
// valency task.

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/local_solvers.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/valency.hpp"

namespace chromatic {

template <class P>
concept RenamingProtocol =
    std::regular<typename P::State> &&
    requires(const P& p, ProcessId id, const typename P::State& s,
             std::span<const std::pair<ProcessId, typename P::State>> seen) {
      { p.initial(id) } -> std::same_as<typename P::State>;
      { p.step(id, s, seen) } -> std::same_as<typename P::State>;
      { p.decision(s) } -> std::same_as<std::optional<int>>;
    };

// Recursive immediate-snapshot renaming. An instance (b, first, dir) owns
// the 2b-1 names first, first+dir, ..., first+dir(2b-2). A process that sees
// b participants of its instance either takes the last name (largest id) or
// moves to the mirrored instance below it; one that sees fewer moves to
// (b-1, first, dir). Instances shrink every round, so with bound n every
// process decides within n rounds.
class RecursiveIsRenaming {
 public:
  struct State {
    int bound = 0;
    int first = 1;
    int dir = 1;
    int name = 0;  // 0 while undecided
    bool operator==(const State&) const = default;
  };

  explicit RecursiveIsRenaming(int n) : n_(n) {}

  State initial(ProcessId) const { return State{n_, 1, 1, 0}; }

  State step(ProcessId self, const State& own, std::span<const std::pair<ProcessId, State>> seen) const {
    if (own.name != 0) return own;
    int peers = 0;
    int top = -1;
    for (const auto& [id, s] : seen)
      if (s.name == 0 && s.bound == own.bound && s.first == own.first && s.dir == own.dir) {
        ++peers;
        top = std::max(top, id.value);
      }
    if (peers == own.bound) {
      const int last = own.first + own.dir * (2 * own.bound - 2);
      if (self.value == top) return State{own.bound, own.first, own.dir, last};
      return State{own.bound - 1, last - own.dir, -own.dir, 0};
    }
    return State{own.bound - 1, own.first, own.dir, 0};
  }

  std::optional<int> decision(const State& s) const {
    if (s.name == 0) return std::nullopt;
    return s.name;
  }

  int bound() const { return n_; }

 private:
  int n_;
};

static_assert(RenamingProtocol<RecursiveIsRenaming>);

// Runs a protocol over iterated immediate snapshots: the state of a vertex is
// the protocol step applied to the states of the vertices in its view.
// Vertices at `input_level` take their state from `initial`.
template <RenamingProtocol P>
class IisSimulator {
 public:
  using State = typename P::State;

  IisSimulator(const Universe& u, const P& protocol, int input_level, std::function<State(VertexId)> initial)
      : u_(u), protocol_(protocol), input_level_(input_level), initial_(std::move(initial)) {}

  const State& state(VertexId v) {
    if (v.index < known_.size() && known_[v.index]) return states_[v.index];
    State s;
    const int lvl = u_.level(v);
    require(lvl >= input_level_, ErrorCode::LevelMismatch, "vertex below the simulation's input level");
    if (lvl == input_level_) {
      s = initial_(v);
    } else {
      const Simplex view = u_.view(v);
      std::vector<std::pair<ProcessId, State>> seen;
      seen.reserve(static_cast<std::size_t>(view.size()));
      std::optional<State> own;
      for (VertexId w : view) {
        seen.emplace_back(u_.id(w), state(w));
        if (u_.id(w) == u_.id(v)) own = seen.back().second;
      }
      s = protocol_.step(u_.id(v), *own, seen);
    }
    if (v.index >= known_.size()) {
      const std::size_t size = std::max<std::size_t>(v.index + 1, u_.size());
      known_.resize(size, false);
      states_.resize(size);
    }
    known_[v.index] = true;
    states_[v.index] = s;
    return states_[v.index];
  }

  std::optional<int> decision(VertexId v) { return protocol_.decision(state(v)); }

 private:
  const Universe& u_;
  const P& protocol_;
  int input_level_;
  std::function<State(VertexId)> initial_;
  std::vector<bool> known_;
  std::vector<State> states_;
};

struct RenamingRun {
  IdSet participants;
  int rounds = 0;
  Complex complex;  // chi^rounds of the participants' face
  Coloring names;
  DecisionSet coverage;
};

struct RenamingOptions {
  int round_cap = 8;
};

// Simulates every IIS execution of the participants until all of them have
// decided, then checks range {1..2p-1} and distinctness on every facet.
template <RenamingProtocol P>
RenamingRun simulate_renaming_decisions(Universe& u, IdSet participants, const P& protocol,
                                        RenamingOptions options = {}) {
  require(!participants.empty() && participants.max() < u.n(), ErrorCode::InvalidArgument,
          "participants must be a non-empty subset of the processes");
  IisSimulator<P> sim(u, protocol, 0, [&](VertexId v) { return protocol.initial(u.id(v)); });
  RenamingRun run;
  run.participants = participants;
  Complex k(0, {u.input_face(participants)});
  for (int r = 1;; ++r) {
    if (r > options.round_cap)
      fail(ErrorCode::RoundCapExceeded, "some execution of " + participants.to_string() + " is undecided after " +
                                            std::to_string(options.round_cap) + " rounds");
    k = chi_complex(u, k);
    bool all = true;
    for (VertexId v : k.vertices()) all = all && sim.decision(v).has_value();
    if (all) {
      run.rounds = r;
      break;
    }
  }
  const int p = participants.size();
  run.names = Coloring(k.level(), alphabet_range(1, 2 * p - 1));
  for (VertexId v : k.vertices()) {
    const int name = *sim.decision(v);
    run.names.set(v, name);
    run.coverage.insert(name);
  }
  for (const Simplex& f : k.facets()) {
    DecisionSet seen;
    for (VertexId v : f) {
      const int name = run.names.at(v);
      if (name < 1 || name > 2 * p - 1)
        fail(ErrorCode::RangeViolation, "name " + std::to_string(name) + " with " + std::to_string(p) +
                                            " participants at " + u.key(v));
      if (seen.contains(name)) fail(ErrorCode::ClashViolation, "two processes decide " + std::to_string(name));
      seen.insert(name);
    }
  }
  run.complex = std::move(k);
  return run;
}

struct ProtocolContract {
  bool ok = true;
  int rounds = 0;  // smallest m by which every execution of every participant set has decided
  std::map<int, DecisionSet> coverage;  // participant count -> names decided in some execution
  bool symmetric = true;
  std::vector<std::string> problems;
};

// The adaptive renaming contract over every participant set, plus symmetry
// under order-preserving relabeling between equal-size participant sets.
template <RenamingProtocol P>
ProtocolContract check_protocol_contract(Universe& u, const P& protocol, RenamingOptions options = {}) {
  ProtocolContract out;
  std::map<std::uint64_t, RenamingRun> runs;
  for (IdSet q : nonempty_subsets(full_id_set(u.n()))) {
    try {
      RenamingRun run = simulate_renaming_decisions(u, q, protocol, options);
      out.rounds = std::max(out.rounds, run.rounds);
      out.coverage[q.size()] |= run.coverage;
      runs.emplace(q.bits(), std::move(run));
    } catch (const Error& e) {
      out.ok = false;
      out.problems.push_back(q.to_string() + ": " + e.what());
    }
  }
  for (auto& [bits, run] : runs)
    for (IdSet other : equal_size_faces(u.n(), run.participants)) {
      const auto map = order_preserving_map(run.participants, other, u.n());
      const auto& target = runs.find(other.bits());
      if (target == runs.end()) continue;
      for (VertexId v : run.complex.vertices()) {
        const VertexId w = u.relabel(v, map);
        if (!target->second.names.has(w) || target->second.names.at(w) != run.names.at(v)) {
          out.symmetric = false;
          out.ok = false;
          out.problems.push_back("decision of " + u.key(v) + " does not commute with relabeling");
          break;
        }
      }
    }
  for (auto& [p, names] : out.coverage)
    if (!names.subset_of(DecisionSet::range(1, 2 * p - 1))) out.ok = false;
  return out;
}

struct CoverageVerdict {
  bool full = true;
  std::map<int, DecisionSet> table;
  std::optional<std::pair<int, int>> missing;  // (participants, name)
};

// Every name 1..2p-1 is decided in some execution with p participants.
template <RenamingProtocol P>
CoverageVerdict check_claim_complete(const P& protocol, int n, RenamingOptions options = {}) {
  Universe u(n);
  CoverageVerdict out;
  for (int p = 1; p <= n; ++p) {
    const RenamingRun run = simulate_renaming_decisions(u, IdSet::range(0, p - 1), protocol, options);
    out.table[p] = run.coverage;
    for (int d = 1; d <= 2 * p - 1; ++d)
      if (!run.coverage.contains(d) && out.full) {
        out.full = false;
        out.missing = std::pair{p, d};
      }
  }
  return out;
}

// Two independent instances of a renaming protocol, one per WSB output. A
// process with bit 1 keeps its name x; one with bit 0 takes 2n-1-x.
template <RenamingProtocol P>
class BitSplit {
 public:
  struct State {
    int bit = 0;
    typename P::State inner;
    bool operator==(const State&) const = default;
  };

  BitSplit(const P& inner, int n) : inner_(inner), n_(n) {}

  State start(ProcessId id, int bit) const { return State{bit, inner_.initial(id)}; }
  State initial(ProcessId id) const { return start(id, 1); }

  State step(ProcessId self, const State& own, std::span<const std::pair<ProcessId, State>> seen) const {
    std::vector<std::pair<ProcessId, typename P::State>> same;
    for (const auto& [id, s] : seen)
      if (s.bit == own.bit) same.emplace_back(id, s.inner);
    return State{own.bit, inner_.step(self, own.inner, same)};
  }

  std::optional<int> decision(const State& s) const {
    const auto x = inner_.decision(s.inner);
    if (!x) return std::nullopt;
    return s.bit == 1 ? *x : 2 * n_ - 1 - *x;
  }

 private:
  const P& inner_;
  int n_;
};

struct ComposedSolution {
  int ell = 0;
  int rounds = 0;
  Simplex tau;
  LocalSolution wsb;  // b_tau
  Complex complex;    // chi^{m+1}(tau)
  Coloring names;     // c_tau on chi^{m+1}(tau)
  RenamingVerdict verdict;
  bool range_split = true;
};

namespace detail {
// Names in the composed algorithm, clamped to {1..2n-2}. Out-of-range names
// only arise from n processes sharing one bit, which b_tau rules out inside
// chi(tau); elsewhere the valency of such a simplex is the full range.
inline int clamp_name(int name, int n) { return std::clamp(name, 1, 2 * n - 2); }
}  // namespace detail

// The algorithm on chi^{m+1}(tau): WSB outputs of b_tau on chi(tau) feed two
// renaming instances for m more rounds.
template <RenamingProtocol P>
ComposedSolution compose_algorithm_A(SubdivisionTower& tower, int ell, const Simplex& tau, const P& protocol,
                                     int rounds) {
  Universe& u = tower.universe();
  const int n = u.n();
  require(n >= 3, ErrorCode::UnsupportedN, "the construction needs n >= 3");
  require(ell >= 2, ErrorCode::InvalidArgument, "the renaming construction needs l >= 2");
  ComposedSolution out;
  out.ell = ell;
  out.rounds = rounds;
  out.wsb = theorem_wsb_local_solution(tower, ell, tau);
  out.tau = out.wsb.tau;
  const BitSplit<P> split(protocol, n);
  const Coloring& bits = out.wsb.coloring;
  IisSimulator<BitSplit<P>> sim(u, split, ell + 1, [&](VertexId v) { return split.start(u.id(v), bits.at(v)); });
  out.complex = iterate_chi(u, out.tau, rounds + 1);
  out.names = Coloring(out.complex.level(), alphabet_range(1, 2 * n - 2));
  for (VertexId v : out.complex.vertices()) {
    const auto name = sim.decision(v);
    if (!name) fail(ErrorCode::RoundCapExceeded, "undecided after " + std::to_string(rounds) + " rounds");
    out.names.set(v, *name);
  }
  out.verdict = check_renaming_output(u, out.names, out.complex);
  SupportMap inputs(u, ell + 1);
  for (const Simplex& f : out.complex.facets()) {
    int ones = 0;
    for (VertexId w : inputs.of(f)) ones += bits.at(w);
    for (VertexId v : f) {
      const int bit = sim.state(v).bit;
      const int name = out.names.at(v);
      if ((bit == 1 && name > 2 * ones - 1) || (bit == 0 && name < 2 * ones)) out.range_split = false;
    }
  }
  return out;
}

struct ClaimReport {
  int ell = 0;
  int rounds = 0;
  std::size_t facets = 0;
  std::size_t comparisons = 0;
  bool claim1 = true;  // range
  bool claim2 = true;  // monotone under inclusion
  bool claim3 = true;  // independent of the containing facet
  bool claim4 = true;  // depends only on dimension
  bool clash_free = true;
  bool range_split = true;
  std::map<int, DecisionSet> by_dimension;
  std::unordered_map<Simplex, DecisionSet, SimplexHash> decision_sets;
  std::vector<std::string> witnesses;

  bool ok() const { return claim1 && claim2 && claim3 && claim4 && clash_free && range_split; }
};

// Decision sets c_tau(chi^{m+1}(gamma)) for every face gamma of every sampled
// facet tau, compared across facets and dimensions.
template <RenamingProtocol P>
ClaimReport verify_lemma_4claims(SubdivisionTower& tower, int ell, const P& protocol, int rounds,
                                 const std::vector<Simplex>& sample) {
  Universe& u = tower.universe();
  const int n = u.n();
  ClaimReport rep;
  rep.ell = ell;
  rep.rounds = rounds;
  const DecisionSet range = DecisionSet::range(1, 2 * n - 2);
  auto describe = [&](const Simplex& s) {
    std::string out;
    for (const auto& k : u.keys(s)) out += (out.empty() ? "" : " ") + k;
    return out;
  };
  for (const Simplex& tau : sample) {
    const ComposedSolution sol = compose_algorithm_A(tower, ell, tau, protocol, rounds);
    ++rep.facets;
    rep.clash_free = rep.clash_free && sol.verdict.ok;
    rep.range_split = rep.range_split && sol.range_split;
    const DecisionIndex index(u, sol.names, sol.complex, ell);
    std::map<Simplex, DecisionSet> local;
    for (const Simplex& g : all_faces(sol.tau)) local[g] = index.on(g);
    if (!local[sol.tau].subset_of(range)) {
      rep.claim1 = false;
      rep.witnesses.push_back("claim 1 at " + describe(sol.tau));
    }
    for (const auto& [g, d] : local) {
      if (g.size() > 1)
        for (const Simplex& h : faces(g, g.dim() - 1))
          if (!local[h].subset_of(d)) {
            rep.claim2 = false;
            rep.witnesses.push_back("claim 2 at " + describe(h) + " inside " + describe(g));
          }
      ++rep.comparisons;
      auto [it, fresh] = rep.decision_sets.emplace(g, d);
      if (!fresh && it->second != d) {
        rep.claim3 = false;
        rep.witnesses.push_back("claim 3 at " + describe(g) + " from " + describe(sol.tau));
      }
      auto [dt, dfresh] = rep.by_dimension.emplace(g.dim(), d);
      if (!dfresh && dt->second != d) {
        rep.claim4 = false;
        rep.witnesses.push_back("claim 4 at " + describe(g));
      }
    }
  }
  return rep;
}

inline void require_claims(const ClaimReport& rep) {
  if (!rep.ok()) fail(ErrorCode::ClaimFailed, rep.witnesses.empty() ? "renaming claims failed" : rep.witnesses.front());
}

// val(gamma) = c_tau(chi^{m+1}(gamma)). Simplexes seen in the verified sample
// use their computed set; others fall back on the per-dimension table, which
// the dimension claim licenses.
inline ValencyTask build_renaming_valency_task(int n, const ClaimReport& rep) {
  require_claims(rep);
  ValencyTask t;
  t.n = n;
  t.level = rep.ell;
  t.kind = TaskKind::Renaming;
  t.overrides = rep.decision_sets;
  const auto table = rep.by_dimension;
  const int ell = rep.ell;
  t.rule = [table, ell](const Universe& u, const Simplex& s) {
    detail::require_member(u, s, ell);
    auto it = table.find(s.dim());
    if (it == table.end()) fail(ErrorCode::ClaimFailed, "no verified decision set for this dimension");
    return it->second;
  };
  return t;
}

struct ExtensionReport {
  std::size_t facets = 0;
  bool consistent = true;
  bool complete = true;
  bool symmetric = true;
  std::size_t clamped = 0;
  std::vector<std::string> witnesses;
  bool ok() const { return consistent && complete && symmetric; }
};

// Runs the composed algorithm on b_tau over all of chi^{l+m+1}(sigma) and
// checks the result against the renaming valency task everywhere.
template <RenamingProtocol P>
ExtensionReport check_global_extension(SubdivisionTower& tower, int ell, const Simplex& tau, const P& protocol,
                                       int rounds, const ValencyTask& task) {
  Universe& u = tower.universe();
  const int n = u.n();
  const LocalSolution wsb = theorem_wsb_local_solution(tower, ell, tau);
  const BitSplit<P> split(protocol, n);
  IisSimulator<BitSplit<P>> sim(u, split, ell + 1,
                                [&](VertexId v) { return split.start(u.id(v), wsb.coloring.at(v)); });
  ExtensionReport rep;
  Coloring names(ell + rounds + 1, alphabet_range(1, 2 * n - 2));
  std::vector<VertexId> boundary;
  const IdSet full = full_id_set(n);
  for (const Simplex& facet : tower.level(ell).facets()) {
    const Complex local = iterate_chi(u, facet, rounds + 1);
    for (VertexId v : local.vertices()) {
      if (names.has(v)) continue;
      const auto x = sim.decision(v);
      if (!x) fail(ErrorCode::RoundCapExceeded, "undecided vertex in the global run");
      const int name = detail::clamp_name(*x, n);
      rep.clamped += name != *x;
      names.set(v, name);
      if (u.carrier(v) != full) boundary.push_back(v);
    }
    const DecisionIndex index(u, names, local, ell);
    for (const Simplex& g : all_faces(facet)) {
      const DecisionSet d = index.on(g);
      const DecisionSet expected = task.val(u, g);
      if (!d.subset_of(expected)) {
        rep.consistent = false;
        rep.witnesses.push_back("inconsistent: " + d.to_string() + " vs " + expected.to_string());
      } else if (d != expected) {
        rep.complete = false;
        rep.witnesses.push_back("incomplete: " + d.to_string() + " vs " + expected.to_string());
      }
    }
    ++rep.facets;
  }
  for (VertexId v : boundary) {
    const IdSet carr = u.carrier(v);
    for (IdSet other : equal_size_faces(n, carr)) {
      const VertexId w = u.relabel(v, order_preserving_map(carr, other, n));
      if (!names.has(w) || names.at(w) != names.at(v)) {
        rep.symmetric = false;
        rep.witnesses.push_back("asymmetric boundary decision");
        break;
      }
    }
  }
  return rep;
}

}  // namespace chromatic
