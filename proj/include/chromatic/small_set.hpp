#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace chromatic {

inline constexpr int kMaxProcesses = 8;

struct ProcessId {
  int value = 0;

  constexpr ProcessId() = default;
  constexpr explicit ProcessId(int v) : value(v) {}
  constexpr auto operator<=>(const ProcessId&) const = default;
};

// A subset of {0, ..., 63}. Used for process-id sets (faces of the input
// simplex) and for decision sets, whose alphabets never exceed 2n-2 < 64.
class SmallSet {
 public:
  constexpr SmallSet() = default;
  constexpr explicit SmallSet(std::uint64_t bits) : bits_(bits) {}
  constexpr SmallSet(std::initializer_list<int> values) {
    for (int v : values) insert(v);
  }

  static constexpr SmallSet range(int lo, int hi) {  // inclusive
    SmallSet s;
    for (int v = lo; v <= hi; ++v) s.insert(v);
    return s;
  }
  static constexpr SmallSet single(int v) { return SmallSet(std::uint64_t{1} << v); }

  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr bool contains(int v) const { return v >= 0 && v < 64 && ((bits_ >> v) & 1U); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool subset_of(SmallSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(SmallSet other) const { return subset_of(other) && bits_ != other.bits_; }

  constexpr SmallSet operator|(SmallSet o) const { return SmallSet(bits_ | o.bits_); }
  constexpr SmallSet operator&(SmallSet o) const { return SmallSet(bits_ & o.bits_); }
  constexpr SmallSet operator-(SmallSet o) const { return SmallSet(bits_ & ~o.bits_); }
  constexpr SmallSet& operator|=(SmallSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  constexpr int min() const { return std::countr_zero(bits_); }
  constexpr int max() const { return 63 - std::countl_zero(bits_); }

  // Rank of v among members, 0-based.
  constexpr int rank(int v) const { return std::popcount(bits_ & ((std::uint64_t{1} << v) - 1)); }
  // The k-th smallest member, 0-based.
  constexpr int nth(int k) const {
    std::uint64_t b = bits_;
    for (int i = 0; i < k; ++i) b &= b - 1;
    return std::countr_zero(b);
  }

  std::vector<int> values() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : values()) {
      if (!first) s += ',';
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

  constexpr auto operator<=>(const SmallSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

using IdSet = SmallSet;
using DecisionSet = SmallSet;

inline constexpr IdSet full_id_set(int n) { return IdSet::range(0, n - 1); }

// All non-empty subsets of `of`, ordered by size and then by bit pattern.
inline std::vector<SmallSet> nonempty_subsets(SmallSet of) {
  std::vector<SmallSet> out;
  const auto members = of.values();
  const int k = static_cast<int>(members.size());
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    SmallSet s;
    for (int i = 0; i < k; ++i)
      if (mask & (1U << i)) s.insert(members[i]);
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](SmallSet a, SmallSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
  });
  return out;
}

}  // namespace chromatic
