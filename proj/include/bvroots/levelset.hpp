// Marching-squares extraction of level curves of sgn(f) and |f|, and line
// integrals along them.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace bvroots {

enum class LevelSource { SignLevel, NormLevel };

inline constexpr std::ptrdiff_t kNoEdge = -1;

/// One straight piece of a level curve inside a single grid cell. edge0/edge1
/// are the grid edges the endpoints sit on, or kNoEdge when the endpoint was
/// produced by clipping inside the cell.
struct Segment {
  Point p0, p1;
  std::size_t cell_i = 0, cell_j = 0;
  std::ptrdiff_t edge0 = kNoEdge, edge1 = kNoEdge;

  double length() const { return distance(p0, p1); }
  Point midpoint() const { return {0.5 * (p0.x + p1.x), 0.5 * (p0.y + p1.y)}; }
};

struct LevelCurveSet {
  std::vector<Segment> segments;
  double total_length = 0.0;
  LevelSource source = LevelSource::SignLevel;
  cplx level{};
  bool degenerate = false;  ///< some cells lie entirely on the level (positive-area level set)

  bool empty() const { return segments.empty(); }

  void recompute_length() {
    total_length = 0.0;
    for (const auto& s : segments) total_length += s.length();
  }

  /// Grid edges crossed by the curve, sorted and unique.
  std::vector<std::size_t> crossed_edges() const {
    std::vector<std::size_t> out;
    for (const auto& s : segments) {
      if (s.edge0 != kNoEdge) out.push_back(static_cast<std::size_t>(s.edge0));
      if (s.edge1 != kNoEdge) out.push_back(static_cast<std::size_t>(s.edge1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

namespace detail {

struct EdgePoint {
  Point p;
  std::size_t edge;
};

// Crossing of the zero level on the edge between nodes a < b. Always computed
// from the lower-index node so adjacent cells agree bit for bit.
inline EdgePoint edge_crossing(const Grid2D& g, const std::vector<double>& v, std::size_t edge) {
  const auto [a, b] = g.edge_nodes(edge);
  const double t = v[a] / (v[a] - v[b]);
  const std::size_t i = a % g.nx(), j = a / g.nx();
  if (b == a + 1) return {{g.x(i) + t * g.hx(), g.y(j)}, edge};
  return {{g.x(i), g.y(j) + t * g.hy()}, edge};
}

}  // namespace detail

/// Zero contour of node values v by marching squares with linear edge
/// interpolation. Nodes with v >= 0 are "inside". Saddle cells are resolved by
/// the sign of the cell-centre average. Cells whose four corners all satisfy
/// |v| <= flat_tol are skipped and reported through `degenerate`.
inline std::vector<Segment> marching_squares(const Grid2D& g, const std::vector<double>& v, double flat_tol,
                                             bool* degenerate = nullptr) {
  std::vector<Segment> out;
  for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
    for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
      const std::size_t c[4] = {g.index(i, j), g.index(i + 1, j), g.index(i + 1, j + 1), g.index(i, j + 1)};
      if (std::abs(v[c[0]]) <= flat_tol && std::abs(v[c[1]]) <= flat_tol && std::abs(v[c[2]]) <= flat_tol &&
          std::abs(v[c[3]]) <= flat_tol) {
        if (degenerate) *degenerate = true;
        continue;
      }
      const bool in[4] = {v[c[0]] >= 0, v[c[1]] >= 0, v[c[2]] >= 0, v[c[3]] >= 0};
      // bottom, right, top, left
      const std::size_t edges[4] = {g.horizontal_edge(i, j), g.vertical_edge(i + 1, j), g.horizontal_edge(i, j + 1),
                                    g.vertical_edge(i, j)};
      const bool crossed[4] = {in[0] != in[1], in[1] != in[2], in[3] != in[2], in[0] != in[3]};
      const int count = crossed[0] + crossed[1] + crossed[2] + crossed[3];
      if (count == 0) continue;
      auto emit = [&](int ea, int eb) {
        const auto pa = detail::edge_crossing(g, v, edges[ea]);
        const auto pb = detail::edge_crossing(g, v, edges[eb]);
        out.push_back({pa.p, pb.p, i, j, static_cast<std::ptrdiff_t>(pa.edge), static_cast<std::ptrdiff_t>(pb.edge)});
      };
      if (count == 2) {
        int e[2], n = 0;
        for (int k = 0; k < 4; ++k)
          if (crossed[k]) e[n++] = k;
        emit(e[0], e[1]);
        continue;
      }
      const double centre = 0.25 * (v[c[0]] + v[c[1]] + v[c[2]] + v[c[3]]);
      if ((centre >= 0) == in[0]) {
        // corners 0 and 2 connect through the centre: cut off corners 1 and 3
        emit(0, 1);
        emit(2, 3);
      } else {
        emit(3, 0);
        emit(1, 2);
      }
    }
  }
  return out;
}

/// Default threshold below which sgn(f) is treated as undefined.
inline double default_zero_eps(const ComplexField& f) { return 1e-8 * max_abs(f); }

/// E = sgn(f)^{-1}(y): zero contour of Im(f conj(y)) restricted to where
/// Re(f conj(y)) > zero_eps. Segments are clipped linearly at that bound.
inline LevelCurveSet extract_sign_level(const ComplexField& f, cplx y, double zero_eps) {
  if (std::abs(std::abs(y) - 1.0) > 1e-12) throw std::invalid_argument("extract_sign_level: direction must be unit");
  if (!(zero_eps > 0.0)) throw std::invalid_argument("extract_sign_level: zero_eps must be positive");
  const Grid2D& g = f.grid();
  std::vector<double> im(g.size()), re(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx rotated = f[k] * std::conj(y);
    im[k] = rotated.imag();
    re[k] = rotated.real();
  }
  LevelCurveSet set;
  set.source = LevelSource::SignLevel;
  set.level = y;
  const double flat = 1e-14 * std::max(max_abs(f), std::numeric_limits<double>::min());
  auto raw = marching_squares(g, im, flat, &set.degenerate);

  // Re(f conj y) at an edge crossing, by linear interpolation along the edge.
  auto re_at = [&](const Segment& s, bool first) {
    const std::ptrdiff_t e = first ? s.edge0 : s.edge1;
    const auto [a, b] = g.edge_nodes(static_cast<std::size_t>(e));
    const double t = im[a] / (im[a] - im[b]);
    return (1.0 - t) * re[a] + t * re[b];
  };
  for (auto s : raw) {
    const double q0 = re_at(s, true) - zero_eps, q1 = re_at(s, false) - zero_eps;
    if (q0 <= 0 && q1 <= 0) continue;
    if (q0 <= 0 || q1 <= 0) {
      const double t = q0 / (q0 - q1);
      const Point cut{s.p0.x + t * (s.p1.x - s.p0.x), s.p0.y + t * (s.p1.y - s.p0.y)};
      if (q0 <= 0) {
        s.p0 = cut;
        s.edge0 = kNoEdge;
      } else {
        s.p1 = cut;
        s.edge1 = kNoEdge;
      }
    }
    set.segments.push_back(s);
  }
  set.recompute_length();
  return set;
}

/// |f|^{-1}(y) for a positive level y.
inline LevelCurveSet extract_norm_level(const ComplexField& f, double y) {
  if (!(y > 0.0)) throw std::invalid_argument("extract_norm_level: level must be positive");
  const Grid2D& g = f.grid();
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = std::abs(f[k]) - y;
  LevelCurveSet set;
  set.source = LevelSource::NormLevel;
  set.level = y;
  set.segments = marching_squares(g, v, 1e-12 * std::max(1.0, y), &set.degenerate);
  set.recompute_length();
  return set;
}

/// Midpoint rule: sum over segments of integrand(midpoint) * length, with the
/// integrand bilinearly interpolated from node values.
inline double curve_integral(const LevelCurveSet& curves, const RealField& integrand) {
  double sum = 0.0;
  for (const auto& s : curves.segments) sum += interpolate(integrand, s.midpoint()) * s.length();
  return sum;
}

/// Groups segments into connected pieces (segments sharing a grid edge).
/// Returns one list of segment indices per piece, ordered by first segment.
inline std::vector<std::vector<std::size_t>> connected_pieces(const LevelCurveSet& curves) {
  const std::size_t n = curves.segments.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<std::pair<std::size_t, std::size_t>> by_edge;
  for (std::size_t k = 0; k < n; ++k) {
    if (curves.segments[k].edge0 != kNoEdge) by_edge.emplace_back(curves.segments[k].edge0, k);
    if (curves.segments[k].edge1 != kNoEdge) by_edge.emplace_back(curves.segments[k].edge1, k);
  }
  std::sort(by_edge.begin(), by_edge.end());
  for (std::size_t k = 1; k < by_edge.size(); ++k)
    if (by_edge[k].first == by_edge[k - 1].first) {
      const std::size_t a = find(by_edge[k].second), b = find(by_edge[k - 1].second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> pieces;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t root = find(k);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(pieces.size());
      pieces.emplace_back();
    }
    pieces[static_cast<std::size_t>(slot[root])].push_back(k);
  }
  return pieces;
}

}  // namespace bvroots
