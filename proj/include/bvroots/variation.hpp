// Discrete BV decomposition (L^1 + absolutely continuous + jump), weak L^p
// quasinorms and the one-dimensional weak-L^p check for radicals.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "levelset.hpp"
#include "radical.hpp"

namespace bvroots {

struct VariationReport {
  double l1 = 0.0;
  double ac_part = 0.0;
  double jump_part = 0.0;
  double bv_total = 0.0;
  double weak_lp = 0.0;
  double p = 1.0;
};

/// sup_{s>0} s * |{|g| > s}|^{1/p} for samples that each carry cell_measure:
/// the sorted scan max_k v_(k) (k * cell_measure)^{1/p}.
inline double weak_lp_quasinorm(std::span<const double> samples, double p, double cell_measure) {
  if (samples.empty()) throw std::invalid_argument("weak_lp_quasinorm: empty input");
  if (!(p >= 1.0)) throw std::invalid_argument("weak_lp_quasinorm: p must be >= 1");
  std::vector<double> v(samples.size());
  std::transform(samples.begin(), samples.end(), v.begin(), [](double s) { return std::abs(s); });
  std::sort(v.begin(), v.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    best = std::max(best, v[k] * std::pow(static_cast<double>(k + 1) * cell_measure, 1.0 / p));
  return best;
}

/// (sum |g|^p * cell_measure)^{1/p}
inline double lp_norm(std::span<const double> samples, double p, double cell_measure) {
  double s = 0.0;
  for (double v : samples) s += std::pow(std::abs(v), p);
  return std::pow(s * cell_measure, 1.0 / p);
}

/// Per-cell absolutely continuous gradient magnitudes (cells touching a cut
/// edge or the zero mask are excluded).
struct CellGradients {
  std::vector<double> magnitude;
  double cell_measure = 0.0;
};

namespace detail {

inline std::vector<std::uint8_t> edge_flags(const Grid2D& g, const LevelCurveSet& cut) {
  std::vector<std::uint8_t> flags(g.edge_count(), 0);
  for (std::size_t e : cut.crossed_edges()) flags[e] = 1;
  return flags;
}

}  // namespace detail

inline CellGradients off_cut_gradients(const ComplexField& lambda, const LevelCurveSet& cut, const Mask* zero) {
  const Grid2D& g = lambda.grid();
  const auto flags = detail::edge_flags(g, cut);
  CellGradients out;
  out.cell_measure = g.cell_area();
  for (std::size_t j = 0; j + 1 < g.ny(); ++j)
    for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
      if (flags[g.horizontal_edge(i, j)] || flags[g.horizontal_edge(i, j + 1)] || flags[g.vertical_edge(i, j)] ||
          flags[g.vertical_edge(i + 1, j)])
        continue;
      if (zero && ((*zero)(i, j) || (*zero)(i + 1, j) || (*zero)(i, j + 1) || (*zero)(i + 1, j + 1))) continue;
      const cplx dx = ((lambda(i + 1, j) - lambda(i, j)) + (lambda(i + 1, j + 1) - lambda(i, j + 1))) / (2.0 * g.hx());
      const cplx dy = ((lambda(i, j + 1) - lambda(i, j)) + (lambda(i + 1, j + 1) - lambda(i + 1, j))) / (2.0 * g.hy());
      out.magnitude.push_back(jacobian_norm(dx, dy));
    }
  return out;
}

/// Trapezoidal L^1 norm.
inline double l1_norm(const ComplexField& lambda) {
  const Grid2D& g = lambda.grid();
  double s = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double wy = (j == 0 || j + 1 == g.ny()) ? 0.5 : 1.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double wx = (i == 0 || i + 1 == g.nx()) ? 0.5 : 1.0;
      s += wx * wy * std::abs(lambda(i, j));
    }
  }
  return s * g.cell_area();
}

/// Sum over cut segments of |lambda+ - lambda-| times segment length, the
/// one-sided values taken at the two nodes of each grid edge the segment
/// crosses.
inline double jump_integral(const ComplexField& lambda, const LevelCurveSet& cut) {
  const Grid2D& g = lambda.grid();
  double s = 0.0;
  for (const auto& seg : cut.segments) {
    double jump = 0.0;
    int count = 0;
    for (std::ptrdiff_t e : {seg.edge0, seg.edge1}) {
      if (e == kNoEdge) continue;
      const auto [a, b] = g.edge_nodes(static_cast<std::size_t>(e));
      jump += std::abs(lambda[a] - lambda[b]);
      ++count;
    }
    if (count > 0) s += jump / count * seg.length();
  }
  return s;
}

/// BV decomposition of a sampled function with a jump set along `cut`.
inline VariationReport variation_decompose(const ComplexField& lambda, const LevelCurveSet& cut, const Mask* zero,
                                           double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("variation_decompose: p must be >= 1");
  VariationReport rep;
  rep.p = p;
  rep.l1 = l1_norm(lambda);
  const CellGradients grads = off_cut_gradients(lambda, cut, zero);
  double ac = 0.0;
  for (double v : grads.magnitude) ac += v;
  rep.ac_part = ac * grads.cell_measure;
  rep.jump_part = jump_integral(lambda, cut);
  rep.bv_total = rep.l1 + rep.ac_part + rep.jump_part;
  rep.weak_lp = grads.magnitude.empty() ? 0.0 : weak_lp_quasinorm(grads.magnitude, p, grads.cell_measure);
  return rep;
}

inline VariationReport variation_decompose(const SbvField& sbv, double p) {
  return variation_decompose(sbv.lambda, sbv.cut_curve(), &sbv.zero_mask, p);
}

/// Same field with lambda multiplied by c (cut and zero mask unchanged).
inline SbvField scale_selection(const SbvField& sbv, cplx c) {
  SbvField out = sbv;
  out.lambda = scale_field(sbv.lambda, c);
  return out;
}

/// Discrete L^p seminorm of the off-cut gradient: both the norm and the
/// integral of |grad|^p.
struct SobolevSeminorm {
  double norm = 0.0;
  double energy = 0.0;
};

inline SobolevSeminorm off_cut_lp_seminorm(const SbvField& sbv, double p) {
  const CellGradients grads = off_cut_gradients(sbv.lambda, sbv.cut_curve(), &sbv.zero_mask);
  double s = 0.0;
  for (double v : grads.magnitude) s += std::pow(v, p);
  s *= grads.cell_measure;
  return {std::pow(s, 1.0 / p), s};
}

// --- one-dimensional checks ---------------------------------------------------

/// Uniform samples of a real function on a closed interval.
struct Samples1D {
  double a = 0.0, b = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double step() const { return (b - a) / static_cast<double>(values.size() - 1); }
  double t(std::size_t k) const {
    return a + (b - a) * static_cast<double>(k) / static_cast<double>(values.size() - 1);
  }

  template <typename Fn>
  static Samples1D sample(Fn&& fn, double a, double b, std::size_t n) {
    if (n < 3 || !(a < b)) throw std::invalid_argument("Samples1D: need n >= 3 on a nonempty interval");
    Samples1D s{a, b, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) s.values[k] = fn(s.t(k));
    return s;
  }
};

/// Second-order finite-difference derivative (same stencils as the 2D grid).
inline std::vector<double> derivative_1d(const std::vector<double>& v, double h) {
  if (v.size() < 3) throw std::invalid_argument("derivative_1d: need at least 3 samples");
  std::vector<double> out(v.size());
  detail::differentiate_line(v.data(), out.data(), v.size(), 1, h);
  return out;
}

/// Hölder quotient sup |g(s)-g(t)|/|s-t|^alpha over pairs within a window of
/// 8 samples plus seeded random pairs.
inline double hoelder_1d(const std::vector<double>& v, double h, double alpha, const HolderOptions& opt = {}) {
  double best = 0.0;
  const std::size_t n = v.size();
  auto q = [&](std::size_t a, std::size_t b) {
    const double d = static_cast<double>(b > a ? b - a : a - b) * h;
    return std::abs(v[a] - v[b]) / std::pow(d, alpha);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b <= a + opt.window && b < n; ++b) best = std::max(best, q(a, b));
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < opt.random_pairs; ++s) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a != b) best = std::max(best, q(a, b));
  }
  return best;
}

struct GGReport {
  double r = 2.0;
  int k = 1;
  double alpha = 1.0;
  double p = 2.0;
  double lhs = 0.0;       ///< ||lambda'||_{p,w,I}
  double rhs_core = 0.0;  ///< max{Höld_alpha(f^(k))^{1/r} |I|^{1/p}, ||f'||_inf^{1/r}}
  double ratio = 0.0;
  double baseline = std::numeric_limits<double>::infinity();
  bool passed = true;
};

/// lambda' of lambda = |f|^{1/r} off the zero set of f, through
/// lambda' = (1/r) |f|^{1/r - 1} (|f|)' with f' by finite differences.
/// Nodes where f vanishes are dropped.
inline std::vector<double> radical_derivative_1d(const Samples1D& f, double r) {
  const auto df = derivative_1d(f.values, f.step());
  std::vector<double> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double v = f.values[k];
    if (v == 0.0) continue;
    out.push_back(std::pow(std::abs(v), 1.0 / r - 1.0) * std::abs(df[k]) / r);
  }
  return out;
}

/// Weak-L^p bound for continuous radicals on an interval, with 1/p + 1/r = 1.
inline GGReport gg_check_1d(const Samples1D& f, double r, int k, double alpha,
                            double baseline = std::numeric_limits<double>::infinity(), const HolderOptions& opt = {}) {
  if (k < 1 || !(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("gg_check_1d: need k >= 1, alpha in (0,1]");
  if (std::abs(r - (static_cast<double>(k) + alpha)) > 1e-12 * r) throw std::invalid_argument("gg_check_1d: r != k + alpha");
  GGReport rep;
  rep.r = r;
  rep.k = k;
  rep.alpha = alpha;
  rep.p = r / (r - 1.0);
  rep.baseline = baseline;
  const double h = f.step();
  const auto dl = radical_derivative_1d(f, r);
  rep.lhs = dl.empty() ? 0.0 : weak_lp_quasinorm(dl, rep.p, h);

  std::vector<double> dk = f.values;
  std::vector<double> d1;
  for (int order = 1; order <= k; ++order) {
    dk = derivative_1d(dk, h);
    if (order == 1) d1 = dk;
  }
  double sup_d1 = 0.0;
  for (double v : d1) sup_d1 = std::max(sup_d1, std::abs(v));
  const double hold = hoelder_1d(dk, h, alpha, opt);
  rep.rhs_core = std::max(std::pow(hold, 1.0 / r) * std::pow(f.b - f.a, 1.0 / rep.p), std::pow(sup_d1, 1.0 / r));
  rep.ratio = rep.rhs_core > 0.0 ? rep.lhs / rep.rhs_core : 0.0;
  rep.passed = rep.ratio <= baseline;
  return rep;
}

struct RatioReport {
  double bv_total = 0.0;
  double norm_total = 0.0;
  double ratio = 0.0;
  double baseline = std::numeric_limits<double>::infinity();
  bool passed = true;
};

/// ||lambda||_BV / ||f||_{C^{k,alpha}}^{1/r}, checked against a frozen baseline.
inline RatioReport verify_radical_bound(const SbvField& sbv, const HolderEstimate& norm,
                                        double baseline = std::numeric_limits<double>::infinity()) {
  if (static_cast<double>(norm.k) + norm.alpha < std::max(sbv.r, 2.0) - 1e-12)
    throw std::invalid_argument("verify_radical_bound: need k + alpha >= max(r, 2)");
  RatioReport rep;
  rep.bv_total = variation_decompose(sbv, 1.0).bv_total;
  rep.norm_total = norm.total;
  rep.ratio = norm.total > 0.0 ? rep.bv_total / std::pow(norm.total, 1.0 / sbv.r) : 0.0;
  rep.baseline = baseline;
  rep.passed = rep.ratio <= baseline;
  return rep;
}

}  // namespace bvroots
