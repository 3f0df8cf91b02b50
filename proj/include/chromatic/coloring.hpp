#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/universe.hpp"

namespace chromatic {

// Decision map on the vertices of some chi^L(sigma). Stored densely by vertex
// handle; vertices that were never assigned report no value.
class Coloring {
 public:
  Coloring() = default;
  Coloring(int level, std::vector<int> alphabet) : level_(level), alphabet_(std::move(alphabet)) {}

  int level() const { return level_; }
  const std::vector<int>& alphabet() const { return alphabet_; }

  void set(VertexId v, int value) {
    require(value > std::numeric_limits<std::int16_t>::min() && value <= std::numeric_limits<std::int16_t>::max(),
            ErrorCode::InvalidArgument, "decision value out of storage range");
    if (v.index >= values_.size()) values_.resize(std::max<std::size_t>(v.index + 1, values_.size() * 2), kUnset);
    if (values_[v.index] == kUnset) ++assigned_;
    values_[v.index] = static_cast<std::int16_t>(value);
  }

  bool has(VertexId v) const { return v.index < values_.size() && values_[v.index] != kUnset; }

  std::optional<int> get(VertexId v) const {
    if (!has(v)) return std::nullopt;
    return values_[v.index];
  }

  int at(VertexId v) const {
    require(has(v), ErrorCode::NotInComplex, "vertex has no decision");
    return values_[v.index];
  }

  std::size_t assigned() const { return assigned_; }

  // Decisions on the vertices of s, as a set.
  DecisionSet decisions(const Simplex& s) const {
    DecisionSet out;
    for (VertexId v : s) out.insert(at(v));
    return out;
  }

  // Restriction to the vertices of a sub-complex.
  Coloring restricted_to(const Complex& k) const {
    Coloring out(level_, alphabet_);
    for (VertexId v : k.vertices()) out.set(v, at(v));
    return out;
  }

  bool total_on(const Complex& k) const {
    for (VertexId v : k.vertices())
      if (!has(v)) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint32_t i = 0; i < values_.size(); ++i)
      if (values_[i] != kUnset) f(VertexId{i}, static_cast<int>(values_[i]));
  }

 private:
  static constexpr std::int16_t kUnset = std::numeric_limits<std::int16_t>::min();

  int level_ = 0;
  std::vector<int> alphabet_;
  std::vector<std::int16_t> values_;
  std::size_t assigned_ = 0;
};

inline std::vector<int> alphabet_range(int lo, int hi) {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

inline Coloring id_coloring(const Universe& u, const Complex& k) {
  Coloring c(k.level(), alphabet_range(0, u.n() - 1));
  for (VertexId v : k.vertices()) c.set(v, u.id(v).value);
  return c;
}

inline Coloring constant_coloring(const Complex& k, int value, std::vector<int> alphabet) {
  Coloring c(k.level(), std::move(alphabet));
  for (VertexId v : k.vertices()) c.set(v, value);
  return c;
}

}  // namespace chromatic
