// Packing of disks D_k = {|z - p_k| < 1/k} into (0,4) x (0,2) and the field
// f = sum_k h_k(z) (z - p_k) / 2^k, each term winding once around p_k.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cut_select.hpp"
#include "grid.hpp"
#include "radical.hpp"

namespace bvroots {

struct Disk {
  std::size_t k = 0;
  Point centre;
  double radius = 0.0;
};

struct DisksSpec {
  std::size_t N = 0;
  std::vector<Disk> disks;

  double covered_area() const {
    double s = 0.0;
    for (const auto& d : disks) s += std::numbers::pi * d.radius * d.radius;
    return s;
  }
};

/// Disk k sits in column n (2^{n-1} <= k < 2^n): squares of side 2^{2-n}
/// stacked over [0,2], the column starting at x = 4 (1 - 2^{1-n}).
inline DisksSpec make_disks_spec(std::size_t N) {
  if (N < 1) throw std::invalid_argument("make_disks_spec: N must be at least 1");
  DisksSpec s;
  s.N = N;
  for (std::size_t k = 1; k <= N; ++k) {
    std::size_t n = 1;
    while ((std::size_t{1} << n) <= k) ++n;
    const double side = std::ldexp(1.0, 2 - static_cast<int>(n));
    const double x0 = 4.0 * (1.0 - std::ldexp(1.0, 1 - static_cast<int>(n)));
    const auto idx = static_cast<double>(k - (std::size_t{1} << (n - 1)));
    s.disks.push_back({k, {x0 + 0.5 * side, idx * side + 0.5 * side}, 1.0 / static_cast<double>(k)});
  }
  return s;
}

/// 6 s^5 - 15 s^4 + 10 s^3 clamped to [0,1].
inline double smoothstep5(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

/// 1 on |z - p| <= 1/(2k), 0 on |z - p| >= 1/k.
inline double disk_bump(const Disk& d, cplx z) {
  const double kk = static_cast<double>(d.k * d.k);
  const double q = kk * std::norm(z - cplx(d.centre.x, d.centre.y));
  return 1.0 - smoothstep5((q - 0.25) / 0.75);
}

/// Grid on [0,4] x [0,2] with spacing 1/(4N).
inline Grid2D disks_grid(std::size_t N) {
  if (N < 1) throw std::invalid_argument("disks_grid: N must be at least 1");
  return Grid2D(0.0, 4.0, 0.0, 2.0, 16 * N + 1, 8 * N + 1);
}

inline ComplexField build_disks_field(std::size_t N, const Grid2D& grid) {
  const DisksSpec spec = make_disks_spec(N);
  if (grid.xmin() > 0.0 || grid.xmax() < 4.0 || grid.ymin() > 0.0 || grid.ymax() < 2.0)
    throw std::invalid_argument("build_disks_field: grid must cover (0,4) x (0,2)");
  const double limit = 1.0 / (4.0 * static_cast<double>(N)) * (1.0 + 1e-12);
  if (grid.hx() > limit || grid.hy() > limit) throw Error("build_disks_field: resolution insufficient for disk N");
  ComplexField f(grid);
  for (const auto& d : spec.disks) {
    const double w = std::ldexp(1.0, -static_cast<int>(d.k));
    const cplx p(d.centre.x, d.centre.y);
    const auto i0 = static_cast<std::size_t>(std::max(0.0, std::floor((d.centre.x - d.radius - grid.xmin()) / grid.hx())));
    const auto j0 = static_cast<std::size_t>(std::max(0.0, std::floor((d.centre.y - d.radius - grid.ymin()) / grid.hy())));
    const auto i1 = std::min(grid.nx() - 1, static_cast<std::size_t>(std::ceil((d.centre.x + d.radius - grid.xmin()) / grid.hx())));
    const auto j1 = std::min(grid.ny() - 1, static_cast<std::size_t>(std::ceil((d.centre.y + d.radius - grid.ymin()) / grid.hy())));
    for (std::size_t j = j0; j <= j1; ++j)
      for (std::size_t i = i0; i <= i1; ++i) {
        const cplx z(grid.x(i), grid.y(j));
        const double h = disk_bump(d, z);
        if (h > 0.0) f(i, j) += h * (z - p) * w;
      }
  }
  return f;
}

struct DiskCut {
  std::size_t k = 0;
  long long winding = 0;
  MonodromyDecision decision = MonodromyDecision::ContinuousExists;
  cplx direction{1.0, 0.0};
  double length = 0.0;
  LevelCurveSet curve;  ///< in the coordinates of the full grid
};

struct DisksCutReport {
  std::size_t N = 0;
  std::vector<DiskCut> disks;
  double total_length = 0.0;
  double lower_bound = 0.0;  ///< sum_{k<=N} 1/(2k)
};

inline double half_harmonic(std::size_t N) {
  double s = 0.0;
  for (std::size_t k = 1; k <= N; ++k) s += 0.5 / static_cast<double>(k);
  return s;
}

/// Radical pipeline run on a window around each disk: winding on a square
/// loop inside the inner disk, then the minimal-J sign-level cut anchored at
/// the centre. The zero threshold is relative to max |f| over the disk.
inline DisksCutReport disks_cut_report(std::size_t N, const ComplexField& field, double r = 2.0,
                                       std::size_t K = 16) {
  const DisksSpec spec = make_disks_spec(N);
  const Grid2D& g = field.grid();
  DisksCutReport rep;
  rep.N = N;
  rep.lower_bound = half_harmonic(N);
  const Rationality q = detect_rational(r);
  for (const auto& d : spec.disks) {
    const auto node_i = [&](double x) {
      return static_cast<long long>(std::llround((x - g.xmin()) / g.hx()));
    };
    const auto node_j = [&](double y) {
      return static_cast<long long>(std::llround((y - g.ymin()) / g.hy()));
    };
    const long long ic = node_i(d.centre.x), jc = node_j(d.centre.y);
    const long long wx = static_cast<long long>(std::ceil(d.radius / g.hx())) + 2;
    const long long wy = static_cast<long long>(std::ceil(d.radius / g.hy())) + 2;
    const auto clamp_i = [&](long long v) { return static_cast<std::size_t>(std::clamp<long long>(v, 0, static_cast<long long>(g.nx()) - 1)); };
    const auto clamp_j = [&](long long v) { return static_cast<std::size_t>(std::clamp<long long>(v, 0, static_cast<long long>(g.ny()) - 1)); };
    const std::size_t i0 = clamp_i(ic - wx), i1 = clamp_i(ic + wx), j0 = clamp_j(jc - wy), j1 = clamp_j(jc + wy);
    const Grid2D wg(g.x(i0), g.x(i1), g.y(j0), g.y(j1), i1 - i0 + 1, j1 - j0 + 1);
    ComplexField w(wg);
    for (std::size_t j = j0; j <= j1; ++j)
      for (std::size_t i = i0; i <= i1; ++i) w(i - i0, j - j0) = field(i, j);

    DiskCut dc;
    dc.k = d.k;
    double wmax = 0.0;
    for (std::size_t j = 0; j < wg.ny(); ++j)
      for (std::size_t i = 0; i < wg.nx(); ++i)
        if (distance(wg.node(i, j), d.centre) < d.radius) wmax = std::max(wmax, std::abs(w(i, j)));
    if (wmax == 0.0) throw Error("disks_cut_length: field vanishes on a disk");
    const auto li = static_cast<std::size_t>(ic) - i0, lj = static_cast<std::size_t>(jc) - j0;
    const auto m = static_cast<std::size_t>(std::max(1LL, std::llround(0.5 / (static_cast<double>(d.k) * g.hx()))));
    dc.winding = winding_along_loop(w, rectangle_loop(wg, li - m, lj - m, li + m, lj + m));
    dc.decision = winding_admits_continuous_root(dc.winding, q) ? MonodromyDecision::ContinuousExists
                                                                : MonodromyDecision::CutRequired;
    if (dc.decision == MonodromyDecision::CutRequired) {
      ScanOptions so;
      so.zero_eps = 1e-8 * wmax;
      so.skip_empty = true;
      so.anchor = [&](const Segment& s) {
        return s.cell_i + 1 >= li && s.cell_i <= li && s.cell_j + 1 >= lj && s.cell_j <= lj;
      };
      const DirectionScan scan = scan_directions(w, r, K, so);
      dc.direction = scan.best.direction;
      dc.length = scan.best.curve.total_length;
      dc.curve = scan.best.curve;
      for (auto& s : dc.curve.segments) {
        s.cell_i += i0;
        s.cell_j += j0;
        s.edge0 = s.edge1 = kNoEdge;
      }
    }
    rep.total_length += dc.length;
    rep.disks.push_back(std::move(dc));
  }
  return rep;
}

inline double disks_cut_length(std::size_t N, const ComplexField& field, double r = 2.0) {
  return disks_cut_report(N, field, r).total_length;
}

/// max |grad f| over the nodes inside each disk (k = 1..N).
inline std::vector<double> disk_gradient_maxima(std::size_t N, const ComplexField& field) {
  const DisksSpec spec = make_disks_spec(N);
  const auto [dx, dy] = gradient(field);
  const Grid2D& g = field.grid();
  std::vector<double> out(N, 0.0);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const cplx z(g.x(i), g.y(j));
      for (const auto& d : spec.disks)
        if (std::abs(z - cplx(d.centre.x, d.centre.y)) < d.radius)
          out[d.k - 1] = std::max(out[d.k - 1], jacobian_norm(dx(i, j), dy(i, j)));
    }
  return out;
}

}  // namespace bvroots
