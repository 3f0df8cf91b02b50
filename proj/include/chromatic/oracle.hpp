#pragma once

// Brute-force checks kept apart from the constructions they test: their own
// one-round enumeration, their own backtracking, their own censuses.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/valency.hpp"

namespace chromatic {

namespace oracle_detail {

// Ordered set partitions of `ids`, built from scratch.
inline void partitions(std::uint32_t rest, std::vector<std::uint32_t>& prefix,
                       std::vector<std::vector<std::uint32_t>>& out) {
  if (rest == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::uint32_t block = rest; block != 0; block = (block - 1) & rest) {
    prefix.push_back(block);
    partitions(rest & ~block, prefix, out);
    prefix.pop_back();
  }
}

struct OneRound {
  std::vector<VertexId> vertices;                // sorted
  std::vector<std::vector<std::size_t>> facets;  // indices into vertices
};

// One immediate-snapshot round from the configuration s.
inline OneRound one_round(Universe& u, const Simplex& s) {
  std::uint32_t mask = 0;
  for (VertexId v : s) mask |= 1U << u.id(v).value;
  std::vector<std::vector<std::uint32_t>> parts;
  std::vector<std::uint32_t> prefix;
  partitions(mask, prefix, parts);

  std::vector<std::vector<VertexId>> raw;
  for (const auto& p : parts) {
    std::vector<VertexId> facet;
    std::uint32_t seen = 0;
    for (std::uint32_t block : p) {
      seen |= block;
      std::vector<VertexId> view;
      for (VertexId w : s)
        if ((seen >> u.id(w).value) & 1U) view.push_back(w);
      for (int q = 0; q < kMaxProcesses; ++q)
        if ((block >> q) & 1U) facet.push_back(u.intern(ProcessId(q), Simplex(std::span<const VertexId>(view))));
    }
    raw.push_back(std::move(facet));
  }
  OneRound out;
  std::set<VertexId> all;
  for (const auto& f : raw) all.insert(f.begin(), f.end());
  out.vertices.assign(all.begin(), all.end());
  for (const auto& f : raw) {
    std::vector<std::size_t> idx;
    for (VertexId v : f)
      idx.push_back(static_cast<std::size_t>(std::lower_bound(out.vertices.begin(), out.vertices.end(), v) -
                                             out.vertices.begin()));
    std::sort(idx.begin(), idx.end());
    out.facets.push_back(std::move(idx));
  }
  return out;
}

inline bool legal(TaskKind kind, int distinct, int n) {
  switch (kind) {
    case TaskKind::Consensus: return distinct == 1;
    case TaskKind::SetAgreement: return distinct < n;
    case TaskKind::WeakSymmetryBreaking: return distinct > 1;
    default: fail(ErrorCode::InvalidArgument, "the oracle handles consensus, set agreement and WSB");
  }
}

inline std::uint64_t bit(int value) { return std::uint64_t{1} << value; }

inline std::uint64_t mask_of(DecisionSet s) { return s.bits(); }

// Backtracking over a one-round region. Vertices in `fixed` keep their value.
class Search {
 public:
  Search(Universe& u, const ValencyTask& t, const Simplex& base, const OneRound& region, bool enforce_legality,
         const std::map<VertexId, int>& fixed, std::size_t& nodes, std::size_t budget)
      : u_(u), task_(t), region_(region), legality_(enforce_legality), nodes_(nodes), budget_(budget) {
    const std::size_t nv = region.vertices.size();
    domain_.resize(nv);
    value_.assign(nv, -1);
    std::uint64_t alphabet = 0;
    for (int a : t.alphabet()) alphabet |= bit(a);
    for (std::size_t i = 0; i < nv; ++i) {
      const VertexId v = region.vertices[i];
      if (auto it = fixed.find(v); it != fixed.end()) {
        domain_[i] = bit(it->second);
      } else {
        domain_[i] = mask_of(t.val(u, u.view(v))) & alphabet;
      }
    }
    closing_.resize(nv);
    touching_.resize(nv);
    if (legality_)
      for (std::size_t f = 0; f < region.facets.size(); ++f) closing_[region.facets[f].back()].push_back(f);
    for (std::uint32_t sub = 1; sub < (1U << base.size()); ++sub) {
      const Simplex face = base.select(sub);
      Face entry{mask_of(t.val(u, face)), {}};
      for (std::size_t i = 0; i < nv; ++i)
        if (u.view(region.vertices[i]).subset_of(face)) entry.members.push_back(i);
      for (std::size_t i : entry.members) touching_[i].push_back(faces_.size());
      faces_.push_back(std::move(entry));
    }
  }

  // Calls accept(values) on each full assignment until it returns true.
  template <class Accept>
  bool run(Accept&& accept) {
    return step(0, accept);
  }

  const std::vector<int>& values() const { return value_; }

 private:
  struct Face {
    std::uint64_t expected;
    std::vector<std::size_t> members;
  };

  template <class Accept>
  bool step(std::size_t i, Accept& accept) {
    if (++nodes_ > budget_)
      fail(ErrorCode::ResourceLimit, "oracle search exceeded " + std::to_string(budget_) + " nodes");
    if (i == value_.size()) {
      for (const Face& f : faces_) {
        std::uint64_t got = 0;
        for (std::size_t m : f.members) got |= bit(value_[m]);
        if (got != f.expected) return false;
      }
      return accept(value_);
    }
    for (int a = 0; a < 64; ++a) {
      if (!((domain_[i] >> a) & 1U)) continue;
      value_[i] = a;
      bool ok = true;
      for (std::size_t f : closing_[i]) {
        std::uint64_t seen = 0;
        for (std::size_t m : region_.facets[f]) seen |= bit(value_[m]);
        if (!legal(task_.kind, std::popcount(seen), u_.n())) {
          ok = false;
          break;
        }
      }
      // Faces this vertex belongs to must still be able to reach their valency.
      for (std::size_t f = 0; ok && f < touching_[i].size(); ++f) {
        const Face& face = faces_[touching_[i][f]];
        std::uint64_t reach = 0;
        for (std::size_t m : face.members) reach |= m <= i ? bit(value_[m]) : domain_[m];
        ok = (reach & face.expected) == face.expected;
      }
      if (ok && step(i + 1, accept)) return true;
    }
    value_[i] = -1;
    return false;
  }

  Universe& u_;
  const ValencyTask& task_;
  const OneRound& region_;
  bool legality_;
  std::size_t& nodes_;
  std::size_t budget_;
  std::vector<std::uint64_t> domain_;
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<Face> faces_;
};

}  // namespace oracle_detail

struct OracleVerdict {
  bool exists = false;
  // Nonexistence is always exact: every local solution restricts to the
  // searched region. Existence is exact only when the region is everything.
  bool exhaustive = false;
  std::string scope;
  std::uint64_t space = 0;  // unpruned colorings of chi(tau), saturating
  std::size_t nodes = 0;
  std::size_t neighbors = 0;
  std::vector<std::pair<std::string, int>> witness;  // keys of chi(tau), key order
};

// Looks for decisions on chi(tau) that are consistent and complete for the
// faces of tau and legal on every facet, such that each facet of `base`
// sharing a ridge with tau can be completed consistently around it.
inline OracleVerdict brute_force_local_search(Universe& u, const ValencyTask& t, const Simplex& tau,
                                              const Complex& base, std::size_t budget) {
  require(base.level() == t.level && u.level(tau) == t.level && base.contains(tau) &&
              tau.size() == u.n(),
          ErrorCode::NotInComplex, "tau must be a facet of the task's complex");
  using namespace oracle_detail;
  OracleVerdict out;
  const OneRound region = one_round(u, tau);
  out.space = 1;
  for (std::size_t i = 0; i < region.vertices.size(); ++i)
    out.space = out.space > UINT64_MAX / 64 ? UINT64_MAX : out.space * t.alphabet().size();

  std::vector<Simplex> neighbors;
  for (const Simplex& f : base.facets()) {
    if (f == tau) continue;
    int shared = 0;
    for (VertexId v : f) shared += tau.contains(v);
    if (shared == u.n() - 1) neighbors.push_back(f);
  }
  out.neighbors = neighbors.size();
  out.scope = neighbors.empty() ? "chi(tau)" : "chi(tau) and " + std::to_string(neighbors.size()) + " ridge neighbors";
  std::vector<OneRound> around;
  for (const Simplex& f : neighbors) around.push_back(one_round(u, f));

  Search search(u, t, tau, region, true, {}, out.nodes, budget);
  out.exists = search.run([&](const std::vector<int>& values) {
    std::map<VertexId, int> fixed;
    for (std::size_t i = 0; i < values.size(); ++i) fixed[region.vertices[i]] = values[i];
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
      Search ext(u, t, neighbors[k], around[k], false, fixed, out.nodes, budget);
      if (!ext.run([](const std::vector<int>&) { return true; })) return false;
    }
    return true;
  });
  out.exhaustive = !out.exists || base.facets().size() == 1;
  if (out.exists) {
    for (std::size_t i = 0; i < region.vertices.size(); ++i)
      out.witness.emplace_back(u.key(region.vertices[i]), search.values()[i]);
    std::sort(out.witness.begin(), out.witness.end());
  }
  return out;
}

// Two-process consensus valencies at level 1 given on the four path vertices;
// a simplex gets the union of its vertices' valencies.
inline ValencyTask consensus_task(const std::map<std::uint32_t, DecisionSet>& vertex_valency) {
  auto rule = [vertex_valency](const Universe& u, const Simplex& s) {
    DecisionSet out;
    for (VertexId v : s) {
      auto it = vertex_valency.find(v.index);
      if (it == vertex_valency.end()) fail(ErrorCode::NotInComplex, "no valency for " + u.key(v));
      out |= it->second;
    }
    return out;
  };
  return ValencyTask{2, 1, TaskKind::Consensus, rule, {}};
}

struct ParityVerdict {
  std::size_t fully_colored = 0;
  bool odd = false;
};

inline ParityVerdict sperner_parity_check(const Universe& u, const Coloring& c, const Complex& k) {
  for (VertexId v : k.vertices()) {
    const auto d = c.get(v);
    if (!d || *d < 0 || *d >= kMaxProcesses || !u.carrier(v).contains(*d))
      fail(ErrorCode::NotSperner, "decision at " + u.key(v) + " lies outside its carrier");
  }
  ParityVerdict out;
  for (const Simplex& f : k.facets()) {
    std::uint32_t seen = 0;
    for (VertexId v : f) seen |= 1U << *c.get(v);
    out.fully_colored += std::popcount(seen) == u.n();
  }
  out.odd = out.fully_colored % 2 == 1;
  return out;
}

// Ordered Bell numbers by the binomial recurrence.
inline std::uint64_t fubini_number(int n) {
  std::vector<std::uint64_t> f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (int k = 1; k <= m; ++k) {
      binom = binom * static_cast<std::uint64_t>(m - k + 1) / static_cast<std::uint64_t>(k);
      f[static_cast<std::size_t>(m)] += binom * f[static_cast<std::size_t>(m - k)];
    }
  }
  return f[static_cast<std::size_t>(n)];
}

struct CountVerdict {
  int n = 0;
  int ell = 0;
  std::uint64_t expected = 0;
  std::uint64_t facets = 0;
  std::uint64_t vertices = 0;
  long euler = 0;
  bool ok = false;
};

inline CountVerdict fubini_count_check(Universe& u, int ell) {
  CountVerdict out;
  out.n = u.n();
  out.ell = ell;
  out.expected = 1;
  for (int i = 0; i < ell; ++i) out.expected *= fubini_number(u.n());
  if (out.expected > u.limits().facet_budget)
    fail(ErrorCode::ResourceLimit, std::to_string(out.expected) + " facets exceed the budget");
  const Complex k = iterate_chi(u, u.input_simplex(), ell);
  out.facets = k.facets().size();
  out.vertices = k.vertices().size();
  out.euler = k.euler_characteristic();
  out.ok = out.facets == out.expected && out.euler == 1;
  return out;
}

}  // namespace chromatic
