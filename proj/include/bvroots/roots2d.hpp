// Root fields of monic polynomials with coefficients sampled on a 2D grid:
// discriminant, permutation holonomy around its zeros, cuts along sign-level
// sets of the discriminant and row tracks glued across uncut edges.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "cut_select.hpp"
#include "grid.hpp"
#include "levelset.hpp"
#include "polyroots.hpp"
#include "radical.hpp"
#include "variation.hpp"

namespace bvroots {

using Permutation = std::vector<std::size_t>;  ///< sheet i ends on start sheet perm[i]

inline bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

/// "()" for the identity, otherwise 1-based cycles without fixed points, e.g. "(1 2)(3 5 4)".
inline std::string cycle_notation(const Permutation& p) {
  std::vector<std::uint8_t> seen(p.size(), 0);
  std::string out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == s) continue;
    out += '(';
    for (std::size_t k = s; !seen[k]; k = p[k]) {
      seen[k] = 1;
      if (k != s) out += ' ';
      out += std::to_string(k + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace detail {

inline void check_coefficients(const std::vector<ComplexField>& a) {
  if (a.empty()) throw std::invalid_argument("root field: need at least one coefficient field");
  for (const auto& f : a)
    if (!(f.grid() == a.front().grid())) throw std::invalid_argument("root field: coefficient grids differ");
}

inline std::vector<cplx> coefficients_at(const std::vector<ComplexField>& a, std::size_t k) {
  std::vector<cplx> c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j][k];
  return c;
}

inline double min_separation(std::span<const cplx> roots) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) s = std::min(s, std::abs(roots[i] - roots[j]));
  return s;
}

}  // namespace detail

inline ComplexField discriminant_field(const std::vector<ComplexField>& a) {
  detail::check_coefficients(a);
  if (a.size() < 2) throw std::invalid_argument("discriminant_field: degree must be at least 2");
  ComplexField d(a.front().grid());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = discriminant(detail::coefficients_at(a, k));
  return d;
}

/// Roots continued by minimal matching around a closed loop of grid nodes.
/// Throws when the loop comes too close to a root collision for the matching
/// to be trusted.
inline Permutation plaquette_holonomy(const std::vector<ComplexField>& a, const GridLoop& loop,
                                      double disc_threshold = -1.0) {
  detail::check_coefficients(a);
  if (loop.nodes.size() < 3) throw std::invalid_argument("plaquette_holonomy: loop needs at least 3 nodes");
  const std::size_t n = a.size();
  if (n >= 2 && disc_threshold > 0.0)
    for (std::size_t k : loop.nodes)
      if (std::abs(discriminant(detail::coefficients_at(a, k))) <= disc_threshold)
        throw Error("plaquette_holonomy: loop passes too close to a discriminant zero");
  const std::vector<cplx> start = solve_pointwise(detail::coefficients_at(a, loop.nodes.front()));
  std::vector<cplx> cur = start;
  for (std::size_t s = 1; s <= loop.nodes.size(); ++s) {
    const std::size_t k = loop.nodes[s % loop.nodes.size()];
    const auto roots = solve_pointwise(detail::coefficients_at(a, k));
    auto next = match_to(cur, roots);
    double step = 0.0;
    for (std::size_t i = 0; i < n; ++i) step = std::max(step, std::abs(next[i] - cur[i]));
    if (n >= 2 && 2.0 * step >= std::min(detail::min_separation(cur), detail::min_separation(next)))
      throw Error("plaquette_holonomy: loop passes too close to a discriminant zero");
    cur = std::move(next);
  }
  // cur is a reordering of start; recover it.
  const auto back = match_to(cur, start);
  Permutation perm(n);
  for (std::size_t i = 0; i < n; ++i)
    perm[i] = static_cast<std::size_t>(std::find(start.begin(), start.end(), back[i]) - start.begin());
  return perm;
}

struct HolonomyEntry {
  Point location;
  GridLoop loop;
  Permutation permutation;
  std::string cycles;
};

struct HolonomyReport {
  std::vector<HolonomyEntry> clusters;
  bool nontrivial = false;
};

struct RootFieldOptions {
  double cluster_factor = 1e-6;  ///< discriminant zero threshold relative to max|disc|
  double collision_factor = 1e-6;  ///< collision threshold relative to the largest root scale
  double p = 1.0;  ///< exponent for the per-sheet weak L^p entry
  bool predictor = true;
};

struct RootField {
  Grid2D grid;
  std::size_t n = 0;
  std::vector<ComplexField> sheets;
  ComplexField discriminant;
  std::vector<BranchCut> cuts;  ///< one per cluster with nontrivial holonomy
  LevelCurveSet cut;  ///< union of all cut curves
  std::vector<std::size_t> cut_edges;
  std::vector<double> cut_jumps;  ///< max over sheets of |lambda_i(a) - lambda_i(b)| per cut edge
  HolonomyReport holonomy;
  std::vector<VariationReport> variation;
  Mask collision;
  double max_reconstruction_error = 0.0;
  double max_magnitude_excess = -std::numeric_limits<double>::infinity();  ///< max |lambda_i| - 2 root_scale(a)

  std::vector<cplx> tuple(std::size_t k) const {
    std::vector<cplx> t(n);
    for (std::size_t s = 0; s < n; ++s) t[s] = sheets[s][k];
    return t;
  }
};

namespace detail {

struct Run {
  std::size_t j = 0, i0 = 0, i1 = 0;  ///< inclusive column range
};

// Minimal-matching track along one run, the reference extrapolated linearly.
inline void track_run(const Run& run, const Grid2D& g, const std::vector<std::vector<cplx>>& roots,
                      std::vector<std::vector<cplx>>& lam, bool predictor) {
  const std::size_t n = roots.front().size();
  lam[g.index(run.i0, run.j)] = roots[g.index(run.i0, run.j)];
  std::vector<cplx> ref(n);
  for (std::size_t i = run.i0 + 1; i <= run.i1; ++i) {
    const auto& prev = lam[g.index(i - 1, run.j)];
    if (predictor && i >= run.i0 + 2) {
      const auto& older = lam[g.index(i - 2, run.j)];
      for (std::size_t s = 0; s < n; ++s) ref[s] = 2.0 * prev[s] - older[s];
    } else {
      ref = prev;
    }
    lam[g.index(i, run.j)] = match_to(ref, roots[g.index(i, run.j)]);
  }
}

}  // namespace detail

/// Root field with one cut per discriminant-zero cluster of nontrivial
/// holonomy. Throws Error when the glued tracks still swap sheets across
/// some uncut edge.
inline RootField build_root_field(const std::vector<ComplexField>& a, std::size_t K,
                                  const RootFieldOptions& opt = {}) {
  detail::check_coefficients(a);
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("build_root_field: degree must be at least 2");
  const Grid2D& g = a.front().grid();
  RootField rf{g, n, {}, discriminant_field(a), {}, {}, {}, {}, {}, {}, Mask(g), 0.0,
               -std::numeric_limits<double>::infinity()};
  const double dmax = max_abs(rf.discriminant);
  if (dmax == 0.0) throw Error("build_root_field: discriminant vanishes identically");
  const double disc_eps = opt.cluster_factor * dmax;

  // Holonomy around each cluster; cuts for the nontrivial ones.
  const auto clusters = find_zero_clusters(rf.discriminant, disc_eps);
  rf.cut.source = LevelSource::SignLevel;
  for (const auto& c : clusters) {
    if (c.touches_boundary) throw Error("build_root_field: discriminant zero cluster touches the domain boundary");
    HolonomyEntry e;
    e.location = c.centre;
    e.loop = rectangle_loop(g, c.i0, c.j0, c.i1, c.j1);
    e.permutation = plaquette_holonomy(a, e.loop, disc_eps);
    e.cycles = cycle_notation(e.permutation);
    if (!is_identity(e.permutation)) {
      rf.holonomy.nontrivial = true;
      ScanOptions so;
      so.skip_empty = true;
      so.anchor = [&c](const Segment& s) {
        return s.cell_i + 1 >= c.i0 && s.cell_i <= c.i1 && s.cell_j + 1 >= c.j0 && s.cell_j <= c.j1;
      };
      DirectionScan scan;
      try {
        scan = scan_directions(rf.discriminant, static_cast<double>(n * (n - 1)), K, so);
      } catch (const Error&) {
        throw Error("build_root_field: nontrivial holonomy but no cut curve leaves the cluster");
      }
      rf.cuts.push_back(scan.best);
      // clusters sharing a cut piece contribute it once
      for (const auto& seg : scan.best.curve.segments) {
        const bool dup = std::any_of(rf.cut.segments.begin(), rf.cut.segments.end(), [&](const Segment& o) {
          return o.cell_i == seg.cell_i && o.cell_j == seg.cell_j && o.edge0 == seg.edge0 && o.edge1 == seg.edge1;
        });
        if (!dup) rf.cut.segments.push_back(seg);
      }
    }
    rf.holonomy.clusters.push_back(std::move(e));
  }
  rf.cut.recompute_length();
  rf.cut_edges = rf.cut.crossed_edges();
  std::vector<std::uint8_t> is_cut(g.edge_count(), 0);
  for (std::size_t e : rf.cut_edges) is_cut[e] = 1;

  // Pointwise roots and collisions.
  std::vector<std::vector<cplx>> roots(g.size());
  double scale = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto c = detail::coefficients_at(a, k);
    roots[k] = solve_pointwise(c);
    scale = std::max(scale, root_scale(c));
  }
  const double collide = opt.collision_factor * std::max(scale, std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < g.size(); ++k) rf.collision[k] = detail::min_separation(roots[k]) <= collide;

  // Runs: maximal row segments of non-colliding nodes joined by uncut edges.
  std::vector<detail::Run> runs;
  std::vector<std::size_t> run_of(g.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    std::size_t i = 0;
    while (i < g.nx()) {
      if (rf.collision(i, j)) {
        ++i;
        continue;
      }
      detail::Run r{j, i, i};
      while (r.i1 + 1 < g.nx() && !rf.collision(r.i1 + 1, j) && !is_cut[g.horizontal_edge(r.i1, j)]) ++r.i1;
      for (std::size_t q = r.i0; q <= r.i1; ++q) run_of[g.index(q, j)] = runs.size();
      runs.push_back(r);
      i = r.i1 + 1;
    }
  }
  std::vector<std::vector<cplx>> lam(g.size());
  for (const auto& r : runs) detail::track_run(r, g, roots, lam, opt.predictor);

  // Glue runs breadth-first through the uncut vertical edge of largest
  // root separation (ties to the smallest column).
  auto separation = [&](std::size_t k) { return detail::min_separation(roots[k]); };
  std::vector<std::uint8_t> placed(runs.size(), 0);
  for (std::size_t seed = 0; seed < runs.size(); ++seed) {
    if (placed[seed]) continue;
    placed[seed] = 1;
    std::queue<std::size_t> todo;
    todo.push(seed);
    while (!todo.empty()) {
      const detail::Run r = runs[todo.front()];
      todo.pop();
      for (int dir : {-1, 1}) {
        if ((dir < 0 && r.j == 0) || (dir > 0 && r.j + 1 == g.ny())) continue;
        const std::size_t jn = dir < 0 ? r.j - 1 : r.j + 1;
        // best edge per neighbouring run
        std::vector<std::pair<std::size_t, std::size_t>> best;  // (run, column)
        for (std::size_t i = r.i0; i <= r.i1; ++i) {
          const std::size_t nb = g.index(i, jn);
          const std::size_t rn = run_of[nb];
          if (rn == std::numeric_limits<std::size_t>::max() || placed[rn]) continue;
          if (is_cut[g.vertical_edge(i, std::min(r.j, jn))]) continue;
          const double w = std::min(separation(g.index(i, r.j)), separation(nb));
          auto it = std::find_if(best.begin(), best.end(), [rn](const auto& b) { return b.first == rn; });
          if (it == best.end())
            best.emplace_back(rn, i);
          else if (w > std::min(separation(g.index(it->second, r.j)), separation(g.index(it->second, jn))))
            it->second = i;
        }
        for (const auto& [rn, col] : best) {
          const auto& ref = lam[g.index(col, r.j)];
          const auto& mine = lam[g.index(col, jn)];
          // permutation taking the run's sheet order to the reference order
          const auto matched = match_to(ref, mine);
          Permutation perm(n);
          for (std::size_t s = 0; s < n; ++s)
            perm[s] = static_cast<std::size_t>(std::find(mine.begin(), mine.end(), matched[s]) - mine.begin());
          const detail::Run& other = runs[rn];
          for (std::size_t q = other.i0; q <= other.i1; ++q) {
            auto& t = lam[g.index(q, other.j)];
            std::vector<cplx> re(n);
            for (std::size_t s = 0; s < n; ++s) re[s] = t[perm[s]];
            t = std::move(re);
          }
          placed[rn] = 1;
          todo.push(rn);
        }
      }
    }
  }

  // Collision nodes copy the order of an assigned neighbour across an uncut edge.
  for (bool progress = true; progress;) {
    progress = false;
    bool pending = false;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!lam[k].empty()) continue;
      const std::size_t i = k % g.nx(), j = k / g.nx();
      const std::pair<std::size_t, std::size_t> nbs[4] = {
          {i > 0 ? k - 1 : k, i > 0 ? g.horizontal_edge(i - 1, j) : 0},
          {i + 1 < g.nx() ? k + 1 : k, i + 1 < g.nx() ? g.horizontal_edge(i, j) : 0},
          {j > 0 ? k - g.nx() : k, j > 0 ? g.vertical_edge(i, j - 1) : 0},
          {j + 1 < g.ny() ? k + g.nx() : k, j + 1 < g.ny() ? g.vertical_edge(i, j) : 0}};
      for (const auto& [nb, e] : nbs) {
        if (nb == k || lam[nb].empty() || is_cut[e]) continue;
        lam[k] = match_to(lam[nb], roots[k]);
        break;
      }
      if (lam[k].empty())
        pending = true;
      else
        progress = true;
    }
    if (!progress && pending)
      for (std::size_t k = 0; k < g.size(); ++k)
        if (lam[k].empty()) {
          lam[k] = roots[k];
          progress = true;
          break;
        }
  }

  // No hidden sheet swap across any uncut edge.
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (is_cut[e]) continue;
    const auto [u, v] = g.edge_nodes(e);
    const double identity = matching_cost(lam[u], lam[v]);
    const double best = matching_cost(lam[u], match_to(lam[u], lam[v]));
    if (identity > best + 1e-9 * std::max(scale, best))
      throw Error("build_root_field: nontrivial holonomy is not separated by the cuts");
  }

  rf.sheets.assign(n, ComplexField(g));
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (std::size_t s = 0; s < n; ++s) rf.sheets[s][k] = lam[k][s];
    const auto c = detail::coefficients_at(a, k);
    rf.max_reconstruction_error = std::max(rf.max_reconstruction_error, reconstruction_error(lam[k], c));
    double m = 0.0;
    for (const auto& v : lam[k]) m = std::max(m, std::abs(v));
    rf.max_magnitude_excess = std::max(rf.max_magnitude_excess, m - 2.0 * root_scale(c));
  }
  for (std::size_t e : rf.cut_edges) {
    const auto [u, v] = g.edge_nodes(e);
    double jump = 0.0;
    for (std::size_t s = 0; s < n; ++s) jump = std::max(jump, std::abs(lam[u][s] - lam[v][s]));
    rf.cut_jumps.push_back(jump);
  }
  const Mask zero = zero_mask(rf.discriminant, disc_eps);
  for (const auto& sheet : rf.sheets) rf.variation.push_back(variation_decompose(sheet, rf.cut, &zero, opt.p));
  return rf;
}

/// Number of cells avoiding cut edges and collisions whose corner loop
/// carries a nontrivial permutation under minimal matching of the assigned
/// tuples.
inline std::size_t nontrivial_plaquettes(const RootField& rf) {
  const Grid2D& g = rf.grid;
  std::vector<std::uint8_t> is_cut(g.edge_count(), 0);
  for (std::size_t e : rf.cut_edges) is_cut[e] = 1;
  std::size_t count = 0;
  for (std::size_t j = 0; j + 1 < g.ny(); ++j)
    for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
      if (is_cut[g.horizontal_edge(i, j)] || is_cut[g.horizontal_edge(i, j + 1)] || is_cut[g.vertical_edge(i, j)] ||
          is_cut[g.vertical_edge(i + 1, j)])
        continue;
      const std::size_t corners[4] = {g.index(i, j), g.index(i + 1, j), g.index(i + 1, j + 1), g.index(i, j + 1)};
      bool collide = false;
      for (std::size_t k : corners) collide = collide || rf.collision[k];
      if (collide) continue;
      const auto start = rf.tuple(corners[0]);
      auto cur = start;
      for (int s = 1; s <= 4; ++s) cur = match_to(cur, rf.tuple(corners[s % 4]));
      if (cur != start) ++count;
    }
  return count;
}

}  // namespace bvroots
