#pragma once

// The IIS round operator: immediate-snapshot schedules (ordered partitions)
// and the standard chromatic subdivision they induce.

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/universe.hpp"

namespace chromatic {

// One immediate-snapshot execution: a sequence of concurrency classes.
struct OrderedPartition {
  std::vector<IdSet> blocks;
  bool operator==(const OrderedPartition&) const = default;
};

namespace detail {
inline void enumerate_partitions(IdSet remaining, std::vector<IdSet>& prefix, std::vector<OrderedPartition>& out) {
  if (remaining.empty()) {
    out.push_back(OrderedPartition{prefix});
    return;
  }
  for (IdSet block : nonempty_subsets(remaining)) {
    prefix.push_back(block);
    enumerate_partitions(remaining - block, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

// Every ordered partition of `ids`, each exactly once. First blocks are
// visited by size, then by bit pattern.
inline std::vector<OrderedPartition> enumerate_ordered_partitions(IdSet ids) {
  require(!ids.empty(), ErrorCode::EmptyIdSet, "cannot partition an empty id set");
  std::vector<OrderedPartition> out;
  std::vector<IdSet> prefix;
  detail::enumerate_partitions(ids, prefix, out);
  return out;
}

namespace detail {
inline const std::vector<OrderedPartition>& cached_partitions(IdSet ids) {
  static thread_local std::unordered_map<std::uint64_t, std::vector<OrderedPartition>> cache;
  auto it = cache.find(ids.bits());
  if (it == cache.end()) it = cache.emplace(ids.bits(), enumerate_ordered_partitions(ids)).first;
  return it->second;
}

inline Simplex restrict_to_ids(const Universe& u, const Simplex& s, IdSet keep) {
  Simplex out;
  for (VertexId v : s)
    if (keep.contains(u.id(v).value)) out.insert(v);
  return out;
}

// Appends the facets of chi(s) to `out`.
inline void append_chi_facets(Universe& u, const Simplex& s, std::vector<Simplex>& out) {
  for (const OrderedPartition& p : cached_partitions(u.ids(s))) {
    Simplex facet;
    IdSet seen;
    for (IdSet block : p.blocks) {
      seen |= block;
      const Simplex view = restrict_to_ids(u, s, seen);
      for (int i : block.values()) facet.insert(u.intern(ProcessId(i), view));
    }
    out.push_back(facet);
  }
}
}  // namespace detail

// One-round subdivision of a chromatic simplex: one facet per schedule; in the
// facet for blocks B1..Bt the process in Bj sees the vertices of B1 u ... u Bj.
inline Complex chi_simplex(Universe& u, const Simplex& s) {
  require(!s.empty() && u.is_chromatic(s), ErrorCode::InvalidArgument, "chi needs a non-empty chromatic simplex");
  std::vector<Simplex> facets;
  detail::append_chi_facets(u, s, facets);
  return Complex(u.level(s) + 1, std::move(facets));
}

// Subdivides every facet; shared faces glue through canonical vertex identity.
inline Complex chi_complex(Universe& u, const Complex& k) {
  std::size_t expected = 0;
  for (const Simplex& f : k.facets()) expected += detail::cached_partitions(u.ids(f)).size();
  if (expected > u.limits().facet_budget)
    fail(ErrorCode::ResourceLimit, "subdivision would produce " + std::to_string(expected) +
                                       " facets, budget is " + std::to_string(u.limits().facet_budget));
  std::vector<Simplex> facets;
  facets.reserve(expected);
  for (const Simplex& f : k.facets()) detail::append_chi_facets(u, f, facets);
  return Complex(k.level() + 1, std::move(facets));
}

inline Complex iterate_chi(Universe& u, const Simplex& sigma, int ell) {
  require(ell >= 0, ErrorCode::InvalidArgument, "iteration count must be non-negative");
  Complex k(u.level(sigma), {sigma});
  for (int i = 0; i < ell; ++i) k = chi_complex(u, k);
  return k;
}

// chi^l of the input simplex for every l computed so far.
class SubdivisionTower {
 public:
  explicit SubdivisionTower(std::shared_ptr<Universe> u) : u_(std::move(u)) {
    levels_.emplace_back(0, std::vector<Simplex>{u_->input_simplex()});
  }

  Universe& universe() const { return *u_; }
  const std::shared_ptr<Universe>& shared_universe() const { return u_; }
  int n() const { return u_->n(); }

  const Complex& level(int ell) {
    require(ell >= 0, ErrorCode::InvalidArgument, "negative level");
    while (static_cast<int>(levels_.size()) <= ell) levels_.push_back(chi_complex(*u_, levels_.back()));
    return levels_[static_cast<std::size_t>(ell)];
  }

  const std::vector<Simplex>& simplices(int ell) {
    auto it = simplices_.find(ell);
    if (it == simplices_.end()) it = simplices_.emplace(ell, level(ell).simplices()).first;
    return it->second;
  }

 private:
  std::shared_ptr<Universe> u_;
  std::deque<Complex> levels_;  // references stay valid as levels are added
  std::map<int, std::vector<Simplex>> simplices_;
};

// carr(s, chi^l(sigma)): the ids ever seen by the vertices of s, which must
// lie inside sigma.
inline IdSet carrier(const Universe& u, const Simplex& s, const Simplex& sigma) {
  const IdSet c = u.carrier(s);
  if (!c.subset_of(u.carrier(sigma)))
    fail(ErrorCode::NotInComplex, "simplex sees processes outside " + u.carrier(sigma).to_string());
  return c;
}

struct CarrierObservation {
  std::size_t simplices = 0;
  std::size_t full_dimensional = 0;  // dim of the simplex equals dim of its carrier
  std::optional<Simplex> witness;
  bool ok() const { return !witness; }
};

// ids(s) lies inside the carrier of s, with equality when the dimensions
// agree. Carriers are recomputed by unfolding views to level 0.
inline CarrierObservation check_carrier_observation(const Universe& u, const std::vector<Simplex>& simplices) {
  std::unordered_map<std::uint32_t, IdSet> memo;
  std::function<IdSet(VertexId)> unfold = [&](VertexId v) -> IdSet {
    if (u.level(v) == 0) return IdSet::single(u.id(v).value);
    if (auto it = memo.find(v.index); it != memo.end()) return it->second;
    IdSet out;
    for (VertexId w : u.view(v)) out |= unfold(w);
    memo.emplace(v.index, out);
    return out;
  };
  CarrierObservation out;
  for (const Simplex& s : simplices) {
    ++out.simplices;
    IdSet carr;
    for (VertexId v : s) carr |= unfold(v);
    const IdSet ids = u.ids(s);
    const bool full = carr.size() == s.size();
    out.full_dimensional += full;
    if ((!ids.subset_of(carr) || (full && ids != carr)) && !out.witness) out.witness = s;
  }
  return out;
}

// Unfolds views down to a given level: the set of level-`target` vertices a
// vertex (or simplex) transitively depends on. For target = level - 1 this is
// the view; the result is always a simplex of chi^target.
class SupportMap {
 public:
  SupportMap(const Universe& u, int target_level) : u_(u), target_(target_level) {}

  int target_level() const { return target_; }

  const Simplex& of(VertexId v) {
    if (auto it = memo_.find(v.index); it != memo_.end()) return it->second;
    const int lvl = u_.level(v);
    require(lvl >= target_, ErrorCode::LevelMismatch, "vertex below the support level");
    Simplex out;
    if (lvl == target_) {
      out.insert(v);
    } else {
      for (VertexId w : u_.view(v)) out = out.united(of(w));
    }
    return memo_.emplace(v.index, out).first->second;
  }

  Simplex of(const Simplex& s) {
    Simplex out;
    for (VertexId v : s) out = out.united(of(v));
    return out;
  }

 private:
  const Universe& u_;
  int target_;
  std::unordered_map<std::uint32_t, Simplex> memo_;
};

// The facet of chi(s) whose vertices all see the whole of s (the one-block
// schedule).
inline Simplex central_of(Universe& u, const Simplex& s) {
  Simplex out;
  for (VertexId v : s) out.insert(u.intern(u.id(v), s));
  return out;
}

// Central simplex of a complex that must be exactly chi(s) for a single s.
inline Simplex central_simplex(Universe& u, const Complex& k) {
  require(!k.facets().empty(), ErrorCode::NotASingleSubdivision, "empty complex");
  require(k.level() >= 1, ErrorCode::NotASingleSubdivision, "a level-0 complex is not a subdivision");
  Simplex base;
  for (VertexId v : k.vertices())
    for (VertexId w : u.view(v)) {
      if (base.contains(w)) continue;
      if (base.size() == u.n()) fail(ErrorCode::NotASingleSubdivision, "views span more than one simplex");
      base.insert(w);
    }
  if (!u.is_chromatic(base) || chi_simplex(u, base).facets() != k.facets())
    fail(ErrorCode::NotASingleSubdivision, "complex is not the one-round subdivision of one simplex");
  return central_of(u, base);
}

// The order-preserving relabeling: k-th smallest id of src to k-th smallest of dst.
inline std::array<int, kMaxProcesses> order_preserving_map(IdSet src, IdSet dst, int n) {
  require(src.size() == dst.size(), ErrorCode::DimensionMismatch,
          "faces " + src.to_string() + " and " + dst.to_string() + " differ in dimension");
  std::array<int, kMaxProcesses> map{};
  for (int i = 0; i < kMaxProcesses; ++i) map[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < src.size(); ++k) map[static_cast<std::size_t>(src.nth(k))] = dst.nth(k);
  (void)n;
  return map;
}

// Vertex bijection chi^l(src) -> chi^l(dst) induced by the order-preserving
// id relabeling, as sorted (source, image) pairs.
inline std::vector<std::pair<VertexId, VertexId>> symmetry_bijection(Universe& u, IdSet src, IdSet dst, int ell) {
  const auto map = order_preserving_map(src, dst, u.n());
  const Complex domain = iterate_chi(u, u.input_face(src), ell);
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(domain.vertices().size());
  for (VertexId v : domain.vertices()) out.emplace_back(v, u.relabel(v, map));
  return out;
}

}  // namespace chromatic
