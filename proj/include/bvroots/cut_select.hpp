// Choice of the branch-cut direction y in S^1: sample candidates, filter
// near-critical values of sgn(f), and minimise J(y) = int_E |f|^{1/r} dH^1.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "levelset.hpp"

namespace bvroots {

struct BranchCut {
  cplx direction{1.0, 0.0};
  LevelCurveSet curve;
  double jump_functional = 0.0;
  bool regular = true;
};

struct Candidate {
  std::size_t index = 0;
  cplx direction{};
  double jump_functional = 0.0;
  bool regular = true;
  LevelCurveSet curve;
};

struct DirectionScan {
  std::vector<Candidate> candidates;
  BranchCut best;
  std::size_t best_index = 0;

  std::size_t regular_count() const {
    return static_cast<std::size_t>(std::count_if(candidates.begin(), candidates.end(),
                                                  [](const Candidate& c) { return c.regular; }));
  }
};

struct ScanOptions {
  double zero_eps = -1.0;          ///< negative: 1e-8 * max|f|
  double regularity_factor = 1e-3;  ///< tau = factor * median |grad sgn f| over the curve
  /// Optional filter keeping only some connected pieces of each candidate
  /// curve (used to attach a cut to one zero cluster).
  std::function<bool(const Segment&)> anchor;
  /// Candidates whose (anchored) curve is empty are not eligible.
  bool skip_empty = false;
};

inline cplx unit_direction(std::size_t j, std::size_t K) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(K));
}

namespace detail {

inline RealField sign_gradient_magnitude(const ComplexField& f, double zero_eps) {
  const ComplexField sgn = map_field(f, [zero_eps](const cplx& v) {
    const double a = std::abs(v);
    return a > zero_eps ? v / a : cplx{};
  });
  const auto [dx, dy] = gradient(sgn);
  RealField out(f.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::sqrt(std::norm(dx[k]) + std::norm(dy[k]));
  return out;
}

inline LevelCurveSet keep_anchored(const LevelCurveSet& curve, const std::function<bool(const Segment&)>& anchor) {
  LevelCurveSet out = curve;
  out.segments.clear();
  for (const auto& piece : connected_pieces(curve)) {
    const bool attached =
        std::any_of(piece.begin(), piece.end(), [&](std::size_t k) { return anchor(curve.segments[k]); });
    if (!attached) continue;
    for (std::size_t k : piece) out.segments.push_back(curve.segments[k]);
  }
  std::sort(out.segments.begin(), out.segments.end(), [](const Segment& a, const Segment& b) {
    return a.cell_j != b.cell_j ? a.cell_j < b.cell_j : a.cell_i < b.cell_i;
  });
  out.recompute_length();
  return out;
}

}  // namespace detail

/// J(y) for each y_j = exp(2 pi i j / K); best is the regular candidate of
/// smallest J, ties going to the smallest j.
inline DirectionScan scan_directions(const ComplexField& f, double r, std::size_t K, const ScanOptions& opt = {}) {
  if (!(r > 0.0)) throw std::invalid_argument("scan_directions: r must be positive");
  if (K < 8) throw std::invalid_argument("scan_directions: need at least 8 candidates");
  const double fmax = max_abs(f);
  if (fmax == 0.0) throw std::invalid_argument("scan_directions: field is identically zero");
  const double zero_eps = opt.zero_eps > 0.0 ? opt.zero_eps : 1e-8 * fmax;

  const RealField weight = map_field(f, [r](const cplx& v) { return std::pow(std::abs(v), 1.0 / r); });
  const RealField sgrad = detail::sign_gradient_magnitude(f, zero_eps);

  DirectionScan scan;
  scan.candidates.reserve(K);
  for (std::size_t j = 0; j < K; ++j) {
    Candidate c;
    c.index = j;
    c.direction = unit_direction(j, K);
    c.curve = extract_sign_level(f, c.direction, zero_eps);
    if (opt.anchor) c.curve = detail::keep_anchored(c.curve, opt.anchor);
    c.jump_functional = curve_integral(c.curve, weight);
    if (!c.curve.empty()) {
      std::vector<double> g;
      g.reserve(c.curve.segments.size());
      for (const auto& s : c.curve.segments) g.push_back(interpolate(sgrad, s.midpoint()));
      std::vector<double> sorted = g;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
      const double tau = opt.regularity_factor * sorted[sorted.size() / 2];
      c.regular = *std::min_element(g.begin(), g.end()) >= tau;
    }
    scan.candidates.push_back(std::move(c));
  }

  std::size_t best = K;
  for (std::size_t j = 0; j < K; ++j) {
    const auto& c = scan.candidates[j];
    if (!c.regular || (opt.skip_empty && c.curve.empty())) continue;
    if (best == K || c.jump_functional < scan.candidates[best].jump_functional) best = j;
  }
  if (best == K) throw Error("scan_directions: no regular candidate direction");
  const auto& b = scan.candidates[best];
  scan.best_index = best;
  scan.best = BranchCut{b.direction, b.curve, b.jump_functional, b.regular};
  return scan;
}

struct TailEntry {
  double threshold = 0.0;
  double fraction = 0.0;
  double product = 0.0;  ///< fraction * threshold
};

struct TailReport {
  std::vector<TailEntry> ladder;
  double bound = 0.0;
  double max_product = 0.0;
  bool monotone = true;
  bool passed = true;
};

/// Markov-type tail check: fraction(T) = #{y : J(y) > T} / K along the ladder
/// T = J_ref * 2^k, k = -6..8, where J_ref is the median J over candidates.
inline TailReport verify_level_tail(const DirectionScan& scan, double bound) {
  if (scan.regular_count() < 16) throw std::invalid_argument("verify_level_tail: need at least 16 regular candidates");
  std::vector<double> js;
  for (const auto& c : scan.candidates) js.push_back(c.jump_functional);
  std::vector<double> sorted = js;
  std::sort(sorted.begin(), sorted.end());
  double ref = sorted[sorted.size() / 2];
  if (ref <= 0.0) ref = 1.0;
  TailReport rep;
  rep.bound = bound;
  const double K = static_cast<double>(js.size());
  double previous = std::numeric_limits<double>::infinity();
  for (int k = -6; k <= 8; ++k) {
    TailEntry e;
    e.threshold = std::ldexp(ref, k);
    e.fraction = static_cast<double>(std::count_if(js.begin(), js.end(), [&](double v) { return v > e.threshold; })) / K;
    e.product = e.fraction * e.threshold;
    rep.max_product = std::max(rep.max_product, e.product);
    if (e.fraction > previous) rep.monotone = false;
    previous = e.fraction;
    rep.ladder.push_back(e);
  }
  rep.passed = rep.monotone && rep.max_product <= bound;
  return rep;
}

struct GrowthEntry {
  double level = 0.0;
  double length = 0.0;
  double value = 0.0;  ///< level^{1/s} * length
};

struct GrowthReport {
  std::vector<GrowthEntry> entries;
  double median = 0.0;
  double bound = 0.0;
  bool passed = true;
};

/// y^{1/s} H^1(|f|^{-1}(y)) per level; the median over levels is checked
/// against `bound`.
inline GrowthReport verify_norm_level_growth(const ComplexField& f, double s, const std::vector<double>& levels,
                                             double bound = std::numeric_limits<double>::infinity()) {
  if (!(s > 0.0)) throw std::invalid_argument("verify_norm_level_growth: s must be positive");
  if (levels.empty()) throw std::invalid_argument("verify_norm_level_growth: no levels");
  GrowthReport rep;
  rep.bound = bound;
  for (double y : levels) {
    if (!(y > 0.0)) throw std::invalid_argument("verify_norm_level_growth: levels must be positive");
    const LevelCurveSet c = extract_norm_level(f, y);
    if (c.degenerate) throw Error("verify_norm_level_growth: degenerate level " + std::to_string(y));
    rep.entries.push_back({y, c.total_length, std::pow(y, 1.0 / s) * c.total_length});
  }
  std::vector<double> v;
  for (const auto& e : rep.entries) v.push_back(e.value);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  rep.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  rep.passed = rep.median <= bound;
  return rep;
}

}  // namespace bvroots
