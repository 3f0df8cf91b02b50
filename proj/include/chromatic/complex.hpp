#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chromatic/error.hpp"
#include "chromatic/universe.hpp"

namespace chromatic {

inline IdSet ids(const Universe& u, const Simplex& s) { return u.ids(s); }

// All sub-simplexes of `s` of dimension d.
inline std::vector<Simplex> faces(const Simplex& s, int d) {
  if (d < 0 || d > s.dim())
    fail(ErrorCode::DimensionOutOfRange,
         "face dimension " + std::to_string(d) + " outside 0.." + std::to_string(s.dim()));
  std::vector<Simplex> out;
  const std::uint32_t full = (1U << s.size()) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    if (std::popcount(mask) == d + 1) out.push_back(s.select(mask));
  std::sort(out.begin(), out.end());
  return out;
}

// All non-empty faces of `s`, including `s` itself.
inline std::vector<Simplex> all_faces(const Simplex& s) {
  std::vector<Simplex> out;
  const std::uint32_t full = (1U << s.size()) - 1;
  out.reserve(full);
  for (std::uint32_t mask = 1; mask <= full; ++mask) out.push_back(s.select(mask));
  return out;
}

// A chromatic complex stored by its facets; lower simplexes are implicit.
class Complex {
 public:
  Complex() = default;
  Complex(int level, std::vector<Simplex> facets) : level_(level), facets_(std::move(facets)) {
    std::sort(facets_.begin(), facets_.end());
    facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
    build_index();
  }

  int level() const { return level_; }
  const std::vector<Simplex>& facets() const { return facets_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  int dim() const {
    int d = -1;
    for (const Simplex& f : facets_) d = std::max(d, f.dim());
    return d;
  }

  bool has_vertex(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  // Indices (into facets()) of the facets containing v.
  std::span<const std::uint32_t> star(VertexId v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return {};
    const auto pos = static_cast<std::size_t>(it - vertices_.begin());
    return {star_.data() + star_offsets_[pos], star_offsets_[pos + 1] - star_offsets_[pos]};
  }

  bool contains(const Simplex& s) const {
    if (s.empty()) return false;
    for (std::uint32_t f : star(s[0]))
      if (s.subset_of(facets_[f])) return true;
    return false;
  }

  // Every non-empty simplex of the complex, sorted.
  std::vector<Simplex> simplices() const {
    std::vector<Simplex> out;
    for (const Simplex& f : facets_) {
      auto fs = all_faces(f);
      out.insert(out.end(), fs.begin(), fs.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Simplex> simplices_of_dim(int d) const {
    std::vector<Simplex> out;
    for (const Simplex& f : facets_)
      if (f.dim() >= d) {
        auto fs = faces(f, d);
        out.insert(out.end(), fs.begin(), fs.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Alternating count of simplexes by dimension.
  long euler_characteristic() const {
    long chi = 0;
    for (const Simplex& s : simplices()) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
  }

 private:
  void build_index() {
    for (const Simplex& f : facets_) vertices_.insert(vertices_.end(), f.begin(), f.end());
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    star_offsets_.assign(vertices_.size() + 1, 0);
    auto slot = [&](VertexId v) {
      return static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
    };
    for (const Simplex& f : facets_)
      for (VertexId v : f) ++star_offsets_[slot(v) + 1];
    for (std::size_t i = 1; i < star_offsets_.size(); ++i) star_offsets_[i] += star_offsets_[i - 1];
    star_.assign(star_offsets_.back(), 0);
    std::vector<std::size_t> fill(star_offsets_.begin(), star_offsets_.end() - 1);
    for (std::uint32_t i = 0; i < facets_.size(); ++i)
      for (VertexId v : facets_[i]) star_[fill[slot(v)]++] = i;
  }

  int level_ = 0;
  std::vector<Simplex> facets_;
  std::vector<VertexId> vertices_;
  std::vector<std::size_t> star_offsets_;
  std::vector<std::uint32_t> star_;
};

inline bool contains(const Complex& k, const Simplex& s) { return k.contains(s); }

// Facets in canonical key order, for external output.
inline std::vector<Simplex> facets_by_key(const Universe& u, const Complex& k) {
  std::vector<std::pair<std::vector<std::string>, Simplex>> keyed;
  keyed.reserve(k.facets().size());
  for (const Simplex& f : k.facets()) keyed.emplace_back(u.keys(f), f);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Simplex> out;
  for (auto& [_, f] : keyed) out.push_back(f);
  return out;
}

}  // namespace chromatic
