#pragma once

// Tasks, valency tasks, and the predicates a decision map is judged by.

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/universe.hpp"

namespace chromatic {

enum class TaskKind { Consensus, SetAgreement, WeakSymmetryBreaking, Renaming };

constexpr std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::Consensus: return "consensus";
    case TaskKind::SetAgreement: return "sa";
    case TaskKind::WeakSymmetryBreaking: return "wsb";
    case TaskKind::Renaming: return "renaming";
  }
  return "unknown";
}

inline TaskKind parse_task_kind(std::string_view s) {
  if (s == "sa" || s == "set-agreement") return TaskKind::SetAgreement;
  if (s == "wsb") return TaskKind::WeakSymmetryBreaking;
  if (s == "renaming") return TaskKind::Renaming;
  if (s == "consensus") return TaskKind::Consensus;
  fail(ErrorCode::InvalidArgument, "unknown task '" + std::string(s) + "'");
}

inline std::vector<int> task_alphabet(TaskKind kind, int n) {
  switch (kind) {
    case TaskKind::Consensus: return {0, 1};
    case TaskKind::SetAgreement: return alphabet_range(0, n - 1);
    case TaskKind::WeakSymmetryBreaking: return {0, 1};
    case TaskKind::Renaming: return alphabet_range(1, 2 * n - 2);
  }
  return {};
}

namespace detail {
inline void require_member(const Universe& u, const Simplex& tau, int ell) {
  if (tau.empty() || !u.is_chromatic(tau) || u.level(tau) != ell)
    fail(ErrorCode::NotInComplex, "simplex is not a chromatic simplex of level " + std::to_string(ell));
}
}  // namespace detail

// Set agreement: small simplexes must decide their own ids; from dimension
// n-2 upward anything seen may be decided.
inline DecisionSet sa_valency(const Universe& u, const Simplex& tau, int ell) {
  detail::require_member(u, tau, ell);
  return tau.dim() <= u.n() - 3 ? u.ids(tau) : u.carrier(tau);
}

inline DecisionSet wsb_valency(const Universe& u, const Simplex& tau, int ell) {
  detail::require_member(u, tau, ell);
  return tau.dim() <= u.n() - 3 ? DecisionSet{1} : DecisionSet{0, 1};
}

// A level, a task kind, and a carrier map. The rule is intensional; entries
// in `overrides` replace it for specific simplexes.
struct ValencyTask {
  int n = 0;
  int level = 0;
  TaskKind kind = TaskKind::SetAgreement;
  std::function<DecisionSet(const Universe&, const Simplex&)> rule;
  std::unordered_map<Simplex, DecisionSet, SimplexHash> overrides;

  DecisionSet val(const Universe& u, const Simplex& s) const {
    if (auto it = overrides.find(s); it != overrides.end()) return it->second;
    return rule(u, s);
  }
  std::vector<int> alphabet() const { return task_alphabet(kind, n); }
};

inline ValencyTask sa_task(int n, int ell) {
  return ValencyTask{n, ell, TaskKind::SetAgreement,
                     [ell](const Universe& u, const Simplex& s) { return sa_valency(u, s, ell); }, {}};
}

inline ValencyTask wsb_task(int n, int ell) {
  return ValencyTask{n, ell, TaskKind::WeakSymmetryBreaking,
                     [ell](const Universe& u, const Simplex& s) { return wsb_valency(u, s, ell); }, {}};
}

inline ValencyTask task_for(TaskKind kind, int n, int ell) {
  switch (kind) {
    case TaskKind::SetAgreement: return sa_task(n, ell);
    case TaskKind::WeakSymmetryBreaking: return wsb_task(n, ell);
    default: fail(ErrorCode::InvalidArgument, "no default valency rule for " + std::string(to_string(kind)));
  }
}

struct Witness {
  Simplex simplex;
  DecisionSet expected;
  DecisionSet actual;
};

// Decisions of a level-(l+m) coloring grouped by the level-l simplex each
// vertex depends on, so that c(chi^m(tau)) is a union over faces of tau.
class DecisionIndex {
 public:
  DecisionIndex(const Universe& u, const Coloring& c, const Complex& colored, int ell) {
    require(colored.level() >= ell, ErrorCode::LevelMismatch, "colored complex below the valency level");
    if (colored.level() == ell + 1) {
      for (VertexId v : colored.vertices()) by_support_[u.view(v)].insert(c.at(v));
    } else {
      SupportMap support(u, ell);
      for (VertexId v : colored.vertices()) by_support_[support.of(v)].insert(c.at(v));
    }
  }

  DecisionSet on(const Simplex& tau) const {
    DecisionSet out;
    const std::uint32_t full = (1U << tau.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask)
      if (auto it = by_support_.find(tau.select(mask)); it != by_support_.end()) out |= it->second;
    return out;
  }

 private:
  std::unordered_map<Simplex, DecisionSet, SimplexHash> by_support_;
};

struct ConsistencyVerdict {
  bool consistent = true;
  bool complete = true;
  std::size_t checked = 0;
  std::vector<Witness> inconsistent;
  std::vector<Witness> incomplete;
};

// c(chi^m(tau')) against val(tau') for the given level-l simplexes.
inline ConsistencyVerdict check_consistent_complete(const Universe& u, const Coloring& c, const Complex& colored,
                                                    const ValencyTask& t, const std::vector<Simplex>& simplices,
                                                    int m) {
  if (c.level() != t.level + m || colored.level() != c.level())
    fail(ErrorCode::LevelMismatch, "coloring level " + std::to_string(c.level()) + " is not " +
                                       std::to_string(t.level) + " + " + std::to_string(m));
  const DecisionIndex index(u, c, colored, t.level);
  ConsistencyVerdict v;
  for (const Simplex& s : simplices) {
    const DecisionSet expected = t.val(u, s);
    const DecisionSet actual = index.on(s);
    ++v.checked;
    if (!actual.subset_of(expected)) {
      v.consistent = false;
      v.inconsistent.push_back({s, expected, actual});
    } else if (actual != expected) {
      v.complete = false;
      v.incomplete.push_back({s, expected, actual});
    }
  }
  return v;
}

inline ConsistencyVerdict check_consistent_complete(const Universe& u, const Coloring& c, const Complex& colored,
                                                    const ValencyTask& t, const Complex& base, int m) {
  if (base.level() != t.level) fail(ErrorCode::LevelMismatch, "base complex level differs from the task level");
  return check_consistent_complete(u, c, colored, t, base.simplices(), m);
}

inline bool is_sperner(const Universe& u, const Coloring& c, const Complex& k) {
  for (VertexId v : k.vertices()) {
    const auto d = c.get(v);
    if (!d || !u.carrier(v).contains(*d)) return false;
  }
  return true;
}

// Faces of sigma with the same number of ids as `c`, other than `c`.
inline std::vector<IdSet> equal_size_faces(int n, IdSet c) {
  std::vector<IdSet> out;
  for (IdSet s : nonempty_subsets(full_id_set(n)))
    if (s.size() == c.size() && s != c) out.push_back(s);
  return out;
}

struct SymmetryVerdict {
  bool symmetric = true;
  std::size_t compared = 0;
  std::optional<std::pair<VertexId, VertexId>> witness;
};

// A vertex of chi^L(sigma') depends only on the ids of its carrier, and every
// order-preserving map between equal-dimension faces restricts to the
// order-preserving map between carriers. Comparing each boundary vertex with
// its images under those carrier maps is therefore the full symmetry test.
inline SymmetryVerdict check_symmetric(Universe& u, const Coloring& c, const Complex& k) {
  SymmetryVerdict out;
  const IdSet full = full_id_set(u.n());
  for (VertexId v : k.vertices()) {
    const IdSet carr = u.carrier(v);
    if (carr == full) continue;
    for (IdSet other : equal_size_faces(u.n(), carr)) {
      const VertexId w = u.relabel(v, order_preserving_map(carr, other, u.n()));
      ++out.compared;
      if (!c.has(w) || c.at(w) != c.at(v)) {
        out.symmetric = false;
        out.witness = {v, w};
        return out;
      }
    }
  }
  return out;
}

inline bool is_symmetric(Universe& u, const Coloring& c, const Complex& k) { return check_symmetric(u, c, k).symmetric; }

struct Census {
  std::size_t count = 0;
  std::vector<Simplex> facets;
};

inline Census census_fully_colored(const Universe& u, const Coloring& c, const Complex& within) {
  Census out;
  for (const Simplex& f : within.facets())
    if (c.decisions(f).size() == u.n()) {
      ++out.count;
      out.facets.push_back(f);
    }
  return out;
}

inline Census census_monochromatic(const Coloring& c, const Complex& within) {
  Census out;
  for (const Simplex& f : within.facets())
    if (c.decisions(f).size() == 1) {
      ++out.count;
      out.facets.push_back(f);
    }
  return out;
}

struct RenamingVerdict {
  bool ok = true;
  std::optional<Simplex> range_witness;
  std::optional<Simplex> clash_witness;
};

inline RenamingVerdict check_renaming_output(const Universe& u, const Coloring& c, const Complex& within) {
  RenamingVerdict out;
  const int hi = 2 * u.n() - 2;
  for (const Simplex& f : within.facets()) {
    DecisionSet seen;
    for (VertexId v : f) {
      const int d = c.at(v);
      if (d < 1 || d > hi) {
        out.ok = false;
        if (!out.range_witness) out.range_witness = f;
        continue;
      }
      if (seen.contains(d)) {
        out.ok = false;
        if (!out.clash_witness) out.clash_witness = f;
      }
      seen.insert(d);
    }
  }
  return out;
}

struct TaskInvariantReport {
  bool carrier_map = true;
  bool validity = true;
  bool symmetric = true;
  std::vector<Simplex> witnesses;
  bool ok() const { return carrier_map && validity && symmetric; }
};

// Carrier-map monotonicity over codimension-one faces; validity (val inside
// the carrier) for set agreement; boundary symmetry for WSB.
inline TaskInvariantReport check_task_invariants(Universe& u, const ValencyTask& t, const Complex& k) {
  TaskInvariantReport rep;
  const IdSet full = full_id_set(u.n());
  for (const Simplex& s : k.simplices()) {
    const DecisionSet vs = t.val(u, s);
    if (s.size() > 1)
      for (const Simplex& f : faces(s, s.dim() - 1))
        if (!t.val(u, f).subset_of(vs)) {
          rep.carrier_map = false;
          rep.witnesses.push_back(s);
        }
    if (t.kind == TaskKind::SetAgreement && !vs.subset_of(u.carrier(s))) {
      rep.validity = false;
      rep.witnesses.push_back(s);
    }
    if (t.kind == TaskKind::WeakSymmetryBreaking) {
      const IdSet carr = u.carrier(s);
      if (carr == full) continue;
      for (IdSet other : equal_size_faces(u.n(), carr)) {
        const auto map = order_preserving_map(carr, other, u.n());
        Simplex image;
        for (VertexId v : s) image.insert(u.relabel(v, map));
        if (t.val(u, image) != vs) {
          rep.symmetric = false;
          rep.witnesses.push_back(s);
        }
      }
    }
  }
  return rep;
}

}  // namespace chromatic
