#pragma once

// Vertex store for iterated chromatic subdivisions.
//
// A vertex is a pair (process id, view). At level 0 the view is the input
// vertex itself; at level l > 0 it is a non-empty chromatic set of level l-1
// vertices containing one vertex of the same id. Vertices are interned: two
// vertices are the same handle iff they have the same id and the same view,
// which is exactly equality of canonical keys. This single rule glues the
// subdivisions of adjacent simplexes together.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chromatic/error.hpp"
#include "chromatic/small_set.hpp"

namespace chromatic {

struct VertexId {
  std::uint32_t index = 0;
  constexpr auto operator<=>(const VertexId&) const = default;
};

// A set of vertices, kept sorted by handle. Capacity is bounded by the number
// of processes, so simplexes are cheap value types.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<VertexId> vs) { assign(vs.begin(), vs.end()); }
  explicit Simplex(std::span<const VertexId> vs) { assign(vs.begin(), vs.end()); }

  int size() const { return size_; }
  int dim() const { return size_ - 1; }
  bool empty() const { return size_ == 0; }
  const VertexId* begin() const { return v_.data(); }
  const VertexId* end() const { return v_.data() + size_; }
  VertexId operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  bool contains(VertexId x) const { return std::binary_search(begin(), end(), x); }
  bool subset_of(const Simplex& other) const { return std::includes(other.begin(), other.end(), begin(), end()); }

  void insert(VertexId x) {
    if (contains(x)) return;
    require(size_ < kMaxProcesses, ErrorCode::InvalidArgument, "simplex capacity exceeded");
    v_[static_cast<std::size_t>(size_++)] = x;
    std::sort(v_.begin(), v_.begin() + size_);
  }

  Simplex without(VertexId x) const {
    Simplex out;
    for (VertexId v : *this)
      if (v != x) out.v_[static_cast<std::size_t>(out.size_++)] = v;
    return out;
  }

  Simplex united(const Simplex& other) const {
    Simplex out = *this;
    for (VertexId v : other) out.insert(v);
    return out;
  }

  // Sub-simplex picking the members selected by the bit mask (bit i = i-th member).
  Simplex select(std::uint32_t mask) const {
    Simplex out;
    for (int i = 0; i < size_; ++i)
      if (mask & (1U << i)) out.v_[static_cast<std::size_t>(out.size_++)] = v_[static_cast<std::size_t>(i)];
    return out;
  }

  bool operator==(const Simplex& o) const { return std::equal(begin(), end(), o.begin(), o.end()); }
  auto operator<=>(const Simplex& o) const {
    return std::lexicographical_compare_three_way(begin(), end(), o.begin(), o.end());
  }

 private:
  template <class It>
  void assign(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }

  std::array<VertexId, kMaxProcesses> v_{};
  int size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (VertexId v : s) {
      h ^= v.index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Limits {
  std::size_t facet_budget = 10'000'000;

  // CHROMATIC_FACET_BUDGET overrides the default budget.
  static Limits from_environment() {
    Limits limits;
    if (const char* env = std::getenv("CHROMATIC_FACET_BUDGET"); env != nullptr && *env != '\0')
      limits.facet_budget = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    return limits;
  }
};

// Not thread-safe: interning mutates the table. Share a universe only behind a lock.
class Universe {
 public:
  explicit Universe(int n, Limits limits = {}) : n_(n), limits_(limits) {
    require(n >= 1 && n <= kMaxProcesses, ErrorCode::InvalidArgument,
            "process count must be in 1.." + std::to_string(kMaxProcesses));
    slots_.assign(1024, kEmpty);
    for (int i = 0; i < n; ++i) {
      const auto index = static_cast<std::uint32_t>(records_.size());
      records_.push_back(Record{static_cast<std::uint8_t>(i), 0, 0, 0, std::uint32_t{1} << i, 0});
      place(index);
    }
  }

  int n() const { return n_; }
  const Limits& limits() const { return limits_; }
  void set_limits(Limits limits) { limits_ = limits; }
  std::size_t size() const { return records_.size(); }

  VertexId base(ProcessId p) const {
    require(p.value >= 0 && p.value < n_, ErrorCode::InvalidArgument, "process id out of range");
    return VertexId{static_cast<std::uint32_t>(p.value)};
  }

  // The input simplex {0, ..., n-1} at level 0.
  Simplex input_simplex() const { return input_face(full_id_set(n_)); }
  Simplex input_face(IdSet ids) const {
    Simplex s;
    for (int i : ids.values()) s.insert(base(ProcessId(i)));
    return s;
  }

  ProcessId id(VertexId v) const { return ProcessId(record(v).id); }
  int level(VertexId v) const { return record(v).level; }
  IdSet carrier(VertexId v) const { return IdSet(record(v).carrier); }
  Simplex view(VertexId v) const {
    const Record& r = record(v);
    return Simplex(std::span<const VertexId>(pool_.data() + r.view_offset, r.view_size));
  }

  IdSet ids(const Simplex& s) const {
    IdSet out;
    for (VertexId v : s) out.insert(record(v).id);
    return out;
  }
  IdSet carrier(const Simplex& s) const {
    IdSet out;
    for (VertexId v : s) out |= carrier(v);
    return out;
  }
  int level(const Simplex& s) const { return s.empty() ? 0 : level(s[0]); }

  std::optional<VertexId> member_with_id(const Simplex& s, ProcessId p) const {
    for (VertexId v : s)
      if (record(v).id == p.value) return v;
    return std::nullopt;
  }

  bool is_chromatic(const Simplex& s) const { return ids(s).size() == s.size(); }

  std::optional<VertexId> find(ProcessId p, const Simplex& view) const {
    const std::uint64_t h = hash(p.value, view);
    for (std::size_t i = h & (slots_.size() - 1);; i = (i + 1) & (slots_.size() - 1)) {
      const std::uint32_t slot = slots_[i];
      if (slot == kEmpty) return std::nullopt;
      if (matches(slot, p.value, view)) return VertexId{slot};
    }
  }

  VertexId intern(ProcessId p, const Simplex& view) {
    require(p.value >= 0 && p.value < n_, ErrorCode::InvalidArgument, "process id out of range");
    require(!view.empty(), ErrorCode::InvalidArgument, "a subdivided vertex needs a non-empty view");
    const int lvl = level(view[0]);
    bool has_self = false;
    IdSet seen;
    std::uint32_t carrier_bits = 0;
    for (VertexId u : view) {
      const Record& r = record(u);
      require(r.level == lvl, ErrorCode::InvalidArgument, "view members must share one level");
      require(!seen.contains(r.id), ErrorCode::InvalidArgument, "view must be chromatic");
      seen.insert(r.id);
      has_self = has_self || r.id == p.value;
      carrier_bits |= r.carrier;
    }
    require(has_self, ErrorCode::InvalidArgument, "view must contain the process's own previous vertex");
    require(lvl < 255, ErrorCode::ResourceLimit, "subdivision depth exceeds 254");

    if (auto existing = find(p, view)) return *existing;

    const auto index = static_cast<std::uint32_t>(records_.size());
    require(index != kEmpty, ErrorCode::ResourceLimit, "vertex store exhausted");
    records_.push_back(Record{static_cast<std::uint8_t>(p.value), static_cast<std::uint8_t>(lvl + 1),
                              static_cast<std::uint8_t>(view.size()), 0, carrier_bits,
                              static_cast<std::uint32_t>(pool_.size())});
    for (VertexId u : view) pool_.push_back(u);
    if ((records_.size() + n_) * 2 > slots_.size()) rehash(slots_.size() * 2);
    place(index);
    return VertexId{index};
  }

  // Canonical key: level 0 is `v(<id>)`, otherwise `v(<id>|{k1,...,km})` with
  // the view keys sorted lexicographically.
  const std::string& key(VertexId v) const {
    if (auto it = keys_.find(v.index); it != keys_.end()) return it->second;
    std::string out = "v(" + std::to_string(record(v).id);
    if (record(v).level > 0) {
      std::vector<std::string> parts;
      for (VertexId u : view(v)) parts.push_back(key(u));
      std::sort(parts.begin(), parts.end());
      out += "|{";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += ',';
        out += parts[i];
      }
      out += '}';
    }
    out += ')';
    return keys_.emplace(v.index, std::move(out)).first->second;
  }

  std::vector<std::string> keys(const Simplex& s) const {
    std::vector<std::string> out;
    for (VertexId v : s) out.push_back(key(v));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Parses a canonical key, interning every vertex it mentions.
  VertexId parse_key(std::string_view text) {
    std::size_t pos = 0;
    VertexId v = parse_vertex(text, pos);
    require(pos == text.size(), ErrorCode::InvalidKey, "trailing characters in key '" + std::string(text) + "'");
    return v;
  }

  // Relabels a vertex through a process-id map, recursively through views.
  // `map[i]` is the image of id i.
  VertexId relabel(VertexId v, const std::array<int, kMaxProcesses>& map) {
    const Record r = record(v);
    if (r.level == 0) return base(ProcessId(map[r.id]));
    std::uint64_t code = 0;
    for (int i = 0; i < n_; ++i) code = code * 16 + static_cast<std::uint64_t>(map[static_cast<std::size_t>(i)]);
    const std::uint64_t memo_key = (code << 32) | v.index;
    if (auto it = relabel_memo_.find(memo_key); it != relabel_memo_.end()) return VertexId{it->second};
    Simplex image;
    for (VertexId u : view(v)) image.insert(relabel(u, map));
    const VertexId out = intern(ProcessId(map[r.id]), image);
    relabel_memo_.emplace(memo_key, out.index);
    return out;
  }

 private:
  struct Record {
    std::uint8_t id;
    std::uint8_t level;
    std::uint8_t view_size;
    std::uint8_t reserved;
    std::uint32_t carrier;
    std::uint32_t view_offset;
  };

  static constexpr std::uint32_t kEmpty = 0xffffffffU;

  const Record& record(VertexId v) const {
    require(v.index < records_.size(), ErrorCode::InvalidArgument, "unknown vertex handle");
    return records_[v.index];
  }

  static std::uint64_t hash(int id, const Simplex& view) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(id + 1);
    for (VertexId v : view) {
      h ^= v.index;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    h *= 0x9e3779b97f4a7c15ULL;
    return h ^ (h >> 32);
  }

  std::uint64_t hash_of(std::uint32_t index) const {
    const Record& r = records_[index];
    if (r.level == 0) return hash(r.id, Simplex{});
    return hash(r.id, view(VertexId{index}));
  }

  bool matches(std::uint32_t index, int id, const Simplex& view_query) const {
    const Record& r = records_[index];
    if (r.id != id) return false;
    if (view_query.empty()) return r.level == 0;
    if (r.level == 0 || r.view_size != view_query.size()) return false;
    for (int i = 0; i < view_query.size(); ++i)
      if (pool_[r.view_offset + static_cast<std::uint32_t>(i)] != view_query[i]) return false;
    return true;
  }

  void place(std::uint32_t index) {
    const std::uint64_t h = hash_of(index);
    std::size_t i = h & (slots_.size() - 1);
    while (slots_[i] != kEmpty) i = (i + 1) & (slots_.size() - 1);
    slots_[i] = index;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    for (std::uint32_t i = 0; i < records_.size(); ++i) place(i);
  }

  VertexId parse_vertex(std::string_view text, std::size_t& pos) {
    auto expect = [&](char c) {
      require(pos < text.size() && text[pos] == c, ErrorCode::InvalidKey,
              std::string("expected '") + c + "' at offset " + std::to_string(pos));
      ++pos;
    };
    expect('v');
    expect('(');
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    require(pos > start && pos - start < 4, ErrorCode::InvalidKey, "expected a process id");
    const int id = std::stoi(std::string(text.substr(start, pos - start)));
    require(id < n_, ErrorCode::InvalidKey, "process id out of range in key");
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      return base(ProcessId(id));
    }
    expect('|');
    expect('{');
    Simplex view_set;
    while (true) {
      const VertexId member = parse_vertex(text, pos);
      require(!view_set.contains(member), ErrorCode::InvalidKey, "duplicate view member");
      view_set.insert(member);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect('}');
    expect(')');
    try {
      return intern(ProcessId(id), view_set);
    } catch (const Error& e) {
      fail(ErrorCode::InvalidKey, e.what());
    }
  }

  int n_;
  Limits limits_;
  std::vector<Record> records_;
  std::vector<VertexId> pool_;
  std::vector<std::uint32_t> slots_;
  mutable std::unordered_map<std::uint32_t, std::string> keys_;
  std::unordered_map<std::uint64_t, std::uint32_t> relabel_memo_;
};

// Sort key for deterministic external ordering of simplexes: the sorted list
// of vertex keys, compared lexicographically.
inline bool key_less(const Universe& u, const Simplex& a, const Simplex& b) { return u.keys(a) < u.keys(b); }

}  // namespace chromatic
