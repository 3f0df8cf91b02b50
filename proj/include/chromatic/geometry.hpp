#pragma once

// Planar realization of chi^l(triangle) and a combinatorial embedding check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chromatic/complex.hpp"
#include "chromatic/error.hpp"
#include "chromatic/universe.hpp"

namespace chromatic {

struct Point {
  double x = 0;
  double y = 0;
};

struct GeometryOptions {
  // Extra weight on the vertex's own id when averaging its view. Negative
  // values pull a vertex toward the others it saw, which keeps subdivided
  // edge paths monotone.
  double delta = -0.5;
};

class Realization {
 public:
  explicit Realization(const Universe& u, GeometryOptions options = {}) : u_(u), options_(options) {
    require(u.n() == 3, ErrorCode::InvalidArgument, "geometric realization is only defined for n = 3");
    require(1.0 + options.delta > 0.0, ErrorCode::InvalidArgument, "own-id weight must stay positive");
  }

  const Universe& universe() const { return u_; }
  const GeometryOptions& options() const { return options_; }

  Point position(VertexId v) {
    if (auto it = memo_.find(v.index); it != memo_.end()) return it->second;
    Point p;
    if (u_.level(v) == 0) {
      static constexpr std::array<Point, 3> corners{Point{0.0, 0.0}, Point{1.0, 0.0},
                                                    Point{0.5, 0.8660254037844386}};
      p = corners[static_cast<std::size_t>(u_.id(v).value)];
    } else {
      double total = 0;
      const int own = u_.id(v).value;
      for (VertexId w : u_.view(v)) {
        const double weight = u_.id(w).value == own ? 1.0 + options_.delta : 1.0;
        const Point q = position(w);
        p.x += weight * q.x;
        p.y += weight * q.y;
        total += weight;
      }
      p.x /= total;
      p.y /= total;
    }
    memo_.emplace(v.index, p);
    return p;
  }

  // Corners ordered by process id.
  std::array<Point, 3> triangle(const Simplex& f) {
    require(f.size() == 3, ErrorCode::InvalidArgument, "expected a triangle");
    std::array<Point, 3> t{};
    for (VertexId v : f) t[static_cast<std::size_t>(u_.id(v).value)] = position(v);
    return t;
  }

 private:
  const Universe& u_;
  GeometryOptions options_;
  std::unordered_map<std::uint32_t, Point> memo_;
};

namespace detail {
inline double orient(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

// Interiors of two triangles are disjoint iff some edge normal separates them.
inline bool interiors_overlap(const std::array<Point, 3>& s, const std::array<Point, 3>& t, double eps) {
  auto separated_by_edges_of = [eps](const std::array<Point, 3>& a, const std::array<Point, 3>& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      const Point p = a[i];
      const Point q = a[(i + 1) % 3];
      const double nx = q.y - p.y;
      const double ny = p.x - q.x;
      double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
      for (const Point& r : a) {
        const double d = nx * r.x + ny * r.y;
        amin = std::min(amin, d);
        amax = std::max(amax, d);
      }
      for (const Point& r : b) {
        const double d = nx * r.x + ny * r.y;
        bmin = std::min(bmin, d);
        bmax = std::max(bmax, d);
      }
      const double tol = eps * std::hypot(nx, ny);
      if (amax <= bmin + tol || bmax <= amin + tol) return true;
    }
    return false;
  };
  return !separated_by_edges_of(s, t) && !separated_by_edges_of(t, s);
}
}  // namespace detail

struct EmbeddingReport {
  bool ok = true;
  int orientation = 0;
  std::size_t degenerate = 0;
  std::size_t flipped = 0;
  std::size_t overlapping_pairs = 0;
  double area_error = 0;
};

namespace detail {
// Coherent orientation of a pure 2-complex: facets sharing an edge have the
// same colors in the same positions, so coherence flips the id-order sign.
// Returns +1/-1 per facet, or nothing when some edge forces a conflict.
inline std::optional<std::vector<int>> coherent_parity(const Complex& k) {
  std::unordered_map<Simplex, std::vector<std::uint32_t>, SimplexHash> by_edge;
  for (std::uint32_t i = 0; i < k.facets().size(); ++i)
    for (const Simplex& e : faces(k.facets()[i], 1)) by_edge[e].push_back(i);
  std::vector<int> parity(k.facets().size(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t root = 0; root < parity.size(); ++root) {
    if (parity[root] != 0) continue;
    parity[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::uint32_t f = stack.back();
      stack.pop_back();
      for (const Simplex& e : faces(k.facets()[f], 1))
        for (std::uint32_t g : by_edge[e]) {
          if (g == f) continue;
          if (parity[g] == 0) {
            parity[g] = -parity[f];
            stack.push_back(g);
          } else if (parity[g] == parity[f]) {
            return std::nullopt;
          }
        }
    }
  }
  return parity;
}
}  // namespace detail

// Same orientation sign for every facet under a coherent orientation,
// pairwise disjoint interiors, and total area equal to the input triangle.
inline EmbeddingReport check_embedding(Realization& r, const Complex& k) {
  EmbeddingReport rep;
  std::vector<std::array<Point, 3>> tris;
  tris.reserve(k.facets().size());
  for (const Simplex& f : k.facets()) tris.push_back(r.triangle(f));
  const auto parity = detail::coherent_parity(k);
  if (!parity) {
    rep.ok = false;
    rep.flipped = k.facets().size();
    return rep;
  }

  const double scale = std::pow(1.0 / 3.0, k.level());
  const double area_eps = 1e-9 * scale * scale;
  double total = 0;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto& t = tris[i];
    const double o = detail::orient(t[0], t[1], t[2]);
    total += std::abs(o) / 2;
    if (std::abs(o) <= area_eps) {
      ++rep.degenerate;
      continue;
    }
    const int sign = (o > 0 ? 1 : -1) * (*parity)[i];
    if (rep.orientation == 0) rep.orientation = sign;
    if (sign != rep.orientation) ++rep.flipped;
  }

  const int g = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(tris.size()))));
  std::vector<std::vector<std::uint32_t>> grid(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  auto cell = [g](double c) { return std::clamp(static_cast<int>(c * g), 0, g - 1); };
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const Point& p : tris[i]) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    for (int cx = cell(x0); cx <= cell(x1); ++cx)
      for (int cy = cell(y0); cy <= cell(y1); ++cy)
        grid[static_cast<std::size_t>(cx) * static_cast<std::size_t>(g) + static_cast<std::size_t>(cy)].push_back(i);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
  for (const auto& bucket : grid)
    for (std::size_t a = 0; a < bucket.size(); ++a)
      for (std::size_t b = a + 1; b < bucket.size(); ++b)
        if (detail::interiors_overlap(tris[bucket[a]], tris[bucket[b]], 1e-9 * scale))
          hits.emplace_back(std::min(bucket[a], bucket[b]), std::max(bucket[a], bucket[b]));
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  rep.overlapping_pairs = hits.size();
  rep.area_error = std::abs(total - 0.4330127018922193);
  rep.ok = rep.degenerate == 0 && rep.flipped == 0 && rep.overlapping_pairs == 0 && rep.area_error < 1e-9;
  return rep;
}

// Realizes every vertex of k; throws EmbeddingFailed unless the check passes.
inline std::vector<std::pair<VertexId, Point>> geometric_realization(const Universe& u, const Complex& k,
                                                                     GeometryOptions options = {}) {
  require(u.n() == 3, ErrorCode::InvalidArgument, "geometric realization is only defined for n = 3");
  require(k.level() <= 4, ErrorCode::InvalidArgument, "realization is limited to four subdivision levels");
  Realization r(u, options);
  const EmbeddingReport rep = check_embedding(r, k);
  if (!rep.ok)
    fail(ErrorCode::EmbeddingFailed, "delta " + std::to_string(options.delta) + ": " +
                                         std::to_string(rep.flipped) + " flipped, " +
                                         std::to_string(rep.degenerate) + " degenerate, " +
                                         std::to_string(rep.overlapping_pairs) + " overlapping pairs");
  std::vector<std::pair<VertexId, Point>> out;
  out.reserve(k.vertices().size());
  for (VertexId v : k.vertices()) out.emplace_back(v, r.position(v));
  return out;
}

// SVG drawing of a planar complex. `fill` maps a facet to a CSS color (or
// nothing for the default), `dot` maps a vertex to a label drawn beside it.
inline std::string to_svg(Realization& r, const Complex& k,
                          const std::function<std::optional<std::string>(const Simplex&)>& fill = {},
                          const std::function<std::optional<std::string>(VertexId)>& label = {}) {
  static constexpr std::array<const char*, 3> id_colors{"#d62728", "#2ca02c", "#1f77b4"};
  const double size = 600, margin = 20;
  auto px = [&](Point p) { return std::array<double, 2>{margin + p.x * size, margin + (0.8660254037844386 - p.y) * size}; };
  char buf[256];
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"560\" viewBox=\"0 0 640 560\">\n";
  for (const Simplex& f : k.facets()) {
    const auto t = r.triangle(f);
    std::string color = "#ffffff";
    if (fill)
      if (auto c = fill(f)) color = *c;
    const auto a = px(t[0]), b = px(t[1]), c = px(t[2]);
    std::snprintf(buf, sizeof buf, "<polygon points=\"%.3f,%.3f %.3f,%.3f %.3f,%.3f\" fill=\"%s\" stroke=\"#333\" stroke-width=\"0.5\"/>\n",
                  a[0], a[1], b[0], b[1], c[0], c[1], color.c_str());
    out += buf;
  }
  const double radius = std::max(1.0, 4.0 / std::pow(1.6, k.level()));
  for (VertexId v : k.vertices()) {
    const auto p = px(r.position(v));
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.2f\" fill=\"%s\"/>\n", p[0], p[1], radius,
                  id_colors[static_cast<std::size_t>(r.universe().id(v).value)]);
    out += buf;
    if (label)
      if (auto text = label(v)) {
        std::snprintf(buf, sizeof buf, "<text x=\"%.3f\" y=\"%.3f\" font-size=\"%.1f\">", p[0] + radius, p[1] - radius,
                      radius * 3);
        out += buf;
        out += *text;
        out += "</text>\n";
      }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace chromatic
