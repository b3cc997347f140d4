// Single-valued radicals f^{1/r}: exponent case split, monodromy
// classification by winding numbers of sgn(f), and construction with one
// branch cut along a sign-level curve, extended by zero on f^{-1}(0).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "cut_select.hpp"
#include "grid.hpp"
#include "levelset.hpp"

namespace bvroots {

struct Rationality {
  enum class Kind { Integer, Rational, Irrational };
  Kind kind = Kind::Irrational;
  long long num = 0;  ///< numerator a (or n for integers)
  long long den = 1;  ///< denominator b, coprime with a

  std::string to_string() const {
    switch (kind) {
      case Kind::Integer: return "Integer(" + std::to_string(num) + ")";
      case Kind::Rational: return "Rational(" + std::to_string(num) + "," + std::to_string(den) + ")";
      default: return "Irrational";
    }
  }
};

/// Continued-fraction detection: r is rational a/b when a convergent with
/// b <= max_den reproduces r to a few ulps.
inline Rationality detect_rational(double r, long long max_den = 1000000) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("detect_rational: r must be positive and finite");
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = r;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (a > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    if (std::abs(static_cast<double>(p2) / static_cast<double>(q2) - r) <= tol) {
      Rationality out;
      out.num = p2;
      out.den = q2;
      out.kind = q2 == 1 ? Rationality::Kind::Integer : Rationality::Kind::Rational;
      return out;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
  }
  return {};
}

enum class RadicalCase { PowerOnly, PowerTimesRadical, Direct };

inline const char* to_string(RadicalCase c) {
  switch (c) {
    case RadicalCase::PowerOnly: return "PowerOnly";
    case RadicalCase::PowerTimesRadical: return "PowerTimesRadical";
    default: return "Direct";
  }
}

/// r = ell + beta with ell in N, beta in (0,1].
///   PowerOnly:         ell = 0, 1/beta = m in N        -> lambda = f^m
///   PowerTimesRadical: ell = 0, 1/beta not in N        -> lambda = f^floor(1/beta) * mu,
///                                                         mu^{reduced_r} = f, reduced_r = 1/{1/beta}
///   Direct:            r > 1                           -> lambda = exp(log f / r)
struct RadicalPlan {
  double r = 1.0;
  long long ell = 0;
  double beta = 1.0;
  RadicalCase kind = RadicalCase::Direct;
  long long prepower = 0;
  double reduced_r = 0.0;
  Rationality rationality;
};

inline RadicalPlan reduce_exponent(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("reduce_exponent: r must be positive");
  RadicalPlan plan;
  plan.r = r;
  plan.rationality = detect_rational(r);
  const auto& q = plan.rationality;
  if (q.kind == Rationality::Kind::Integer) {
    plan.ell = q.num - 1;
    plan.beta = 1.0;
  } else if (q.kind == Rationality::Kind::Rational) {
    plan.ell = q.num / q.den;
    plan.beta = static_cast<double>(q.num % q.den) / static_cast<double>(q.den);
  } else {
    plan.ell = static_cast<long long>(std::floor(r));
    plan.beta = r - static_cast<double>(plan.ell);
  }
  if (plan.ell > 0) {
    plan.kind = RadicalCase::Direct;
    plan.reduced_r = r;
    return plan;
  }
  // ell == 0: 1/beta = 1/r
  if (q.kind == Rationality::Kind::Integer) {  // r == 1
    plan.kind = RadicalCase::PowerOnly;
    plan.prepower = 1;
  } else if (q.kind == Rationality::Kind::Rational) {
    // 1/r = den/num
    if (q.num == 1) {
      plan.kind = RadicalCase::PowerOnly;
      plan.prepower = q.den;
    } else {
      plan.kind = RadicalCase::PowerTimesRadical;
      plan.prepower = q.den / q.num;
      plan.reduced_r = static_cast<double>(q.num) / static_cast<double>(q.den % q.num);
    }
  } else {
    const double inv = 1.0 / r;
    plan.kind = RadicalCase::PowerTimesRadical;
    plan.prepower = static_cast<long long>(std::floor(inv));
    plan.reduced_r = 1.0 / (inv - std::floor(inv));
  }
  return plan;
}

// --- zero clusters and winding numbers -------------------------------------

/// Closed loop of grid nodes (first node not repeated at the end).
struct GridLoop {
  std::vector<std::size_t> nodes;
};

/// Counter-clockwise boundary of the node rectangle [i0,i1] x [j0,j1].
inline GridLoop rectangle_loop(const Grid2D& g, std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
  if (i0 >= i1 || j0 >= j1 || i1 >= g.nx() || j1 >= g.ny()) throw std::invalid_argument("rectangle_loop: bad rectangle");
  GridLoop loop;
  for (std::size_t i = i0; i < i1; ++i) loop.nodes.push_back(g.index(i, j0));
  for (std::size_t j = j0; j < j1; ++j) loop.nodes.push_back(g.index(i1, j));
  for (std::size_t i = i1; i > i0; --i) loop.nodes.push_back(g.index(i, j1));
  for (std::size_t j = j1; j > j0; --j) loop.nodes.push_back(g.index(i0, j));
  return loop;
}

/// Phase increment in (-pi, pi] from a to b.
inline double phase_step(cplx a, cplx b) {
  double d = std::arg(b) - std::arg(a);
  if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

/// Winding number of sgn(f) along the loop (sum of wrapped phase steps).
inline long long winding_along_loop(const ComplexField& f, const GridLoop& loop) {
  double total = 0.0;
  const std::size_t n = loop.nodes.size();
  for (std::size_t k = 0; k < n; ++k) total += phase_step(f[loop.nodes[k]], f[loop.nodes[(k + 1) % n]]);
  return std::llround(total / (2.0 * std::numbers::pi));
}

/// Connected set of cells carrying zeros of a field, with the node rectangle
/// used as its surrounding loop.
struct ZeroCluster {
  std::vector<std::size_t> cells;  ///< cell index j*(nx-1)+i
  std::size_t i0 = 0, j0 = 0, i1 = 0, j1 = 0;  ///< loop rectangle (nodes)
  bool touches_boundary = false;
  Point centre;
};

/// Cells holding a zero: the phase of f winds around the cell, or a corner has
/// |f| <= zero_eps. Clusters are 8-connected components whose loop rectangles
/// (cell box grown by `margin` cells) are merged while they overlap.
inline std::vector<ZeroCluster> find_zero_clusters(const ComplexField& f, double zero_eps, std::size_t margin = 2) {
  const Grid2D& g = f.grid();
  const std::size_t cx = g.nx() - 1, cy = g.ny() - 1;
  std::vector<std::uint8_t> marked(cx * cy, 0);
  for (std::size_t j = 0; j < cy; ++j)
    for (std::size_t i = 0; i < cx; ++i) {
      const cplx c[4] = {f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)};
      bool zero = false;
      for (const auto& v : c) zero = zero || std::abs(v) <= zero_eps;
      if (!zero) {
        double w = 0.0;
        for (int k = 0; k < 4; ++k) w += phase_step(c[k], c[(k + 1) % 4]);
        zero = std::llround(w / (2.0 * std::numbers::pi)) != 0;
      }
      marked[j * cx + i] = zero;
    }

  struct Box {
    long long i0, j0, i1, j1;
    std::vector<std::size_t> cells;
  };
  std::vector<Box> boxes;
  std::vector<std::uint8_t> seen(marked.size(), 0);
  const auto m = static_cast<long long>(margin);
  for (std::size_t start = 0; start < marked.size(); ++start) {
    if (!marked[start] || seen[start]) continue;
    Box b{std::numeric_limits<long long>::max(), std::numeric_limits<long long>::max(), -1, -1, {}};
    std::queue<std::size_t> todo;
    todo.push(start);
    seen[start] = 1;
    while (!todo.empty()) {
      const std::size_t c = todo.front();
      todo.pop();
      b.cells.push_back(c);
      const auto ci = static_cast<long long>(c % cx), cj = static_cast<long long>(c / cx);
      b.i0 = std::min(b.i0, ci);
      b.j0 = std::min(b.j0, cj);
      b.i1 = std::max(b.i1, ci);
      b.j1 = std::max(b.j1, cj);
      for (long long dj = -1; dj <= 1; ++dj)
        for (long long di = -1; di <= 1; ++di) {
          const long long ni = ci + di, nj = cj + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<long long>(cx) || nj >= static_cast<long long>(cy)) continue;
          const auto n = static_cast<std::size_t>(nj) * cx + static_cast<std::size_t>(ni);
          if (marked[n] && !seen[n]) {
            seen[n] = 1;
            todo.push(n);
          }
        }
    }
    // cell box -> node rectangle grown by the margin
    b.i0 -= m;
    b.j0 -= m;
    b.i1 += 1 + m;
    b.j1 += 1 + m;
    boxes.push_back(std::move(b));
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < boxes.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < boxes.size() && !merged; ++b) {
        auto& A = boxes[a];
        auto& B = boxes[b];
        if (A.i0 <= B.i1 && B.i0 <= A.i1 && A.j0 <= B.j1 && B.j0 <= A.j1) {
          A.i0 = std::min(A.i0, B.i0);
          A.j0 = std::min(A.j0, B.j0);
          A.i1 = std::max(A.i1, B.i1);
          A.j1 = std::max(A.j1, B.j1);
          A.cells.insert(A.cells.end(), B.cells.begin(), B.cells.end());
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
      }
  }
  std::vector<ZeroCluster> out;
  for (auto& b : boxes) {
    ZeroCluster z;
    std::sort(b.cells.begin(), b.cells.end());
    z.cells = std::move(b.cells);
    z.touches_boundary = b.i0 < 0 || b.j0 < 0 || b.i1 >= static_cast<long long>(g.nx()) ||
                         b.j1 >= static_cast<long long>(g.ny());
    z.i0 = static_cast<std::size_t>(std::max(0LL, b.i0));
    z.j0 = static_cast<std::size_t>(std::max(0LL, b.j0));
    z.i1 = static_cast<std::size_t>(std::min<long long>(static_cast<long long>(g.nx()) - 1, b.i1));
    z.j1 = static_cast<std::size_t>(std::min<long long>(static_cast<long long>(g.ny()) - 1, b.j1));
    double sx = 0.0, sy = 0.0;
    for (std::size_t c : z.cells) {
      sx += g.x(c % cx) + 0.5 * g.hx();
      sy += g.y(c / cx) + 0.5 * g.hy();
    }
    z.centre = {sx / static_cast<double>(z.cells.size()), sy / static_cast<double>(z.cells.size())};
    out.push_back(std::move(z));
  }
  return out;
}

enum class MonodromyDecision { ContinuousExists, CutRequired };

inline const char* to_string(MonodromyDecision d) {
  return d == MonodromyDecision::ContinuousExists ? "ContinuousExists" : "CutRequired";
}

struct MonodromyClass {
  std::vector<long long> winding_numbers;
  std::vector<ZeroCluster> clusters;
  MonodromyDecision decision = MonodromyDecision::ContinuousExists;
  Rationality rationality;
};

/// A continuous r-th root exists iff every winding number w satisfies
/// w in nZ (r = n), w in aZ (r = a/b), w = 0 (r irrational).
inline bool winding_admits_continuous_root(long long w, const Rationality& q) {
  switch (q.kind) {
    case Rationality::Kind::Integer:
    case Rationality::Kind::Rational: return w % q.num == 0;
    default: return w == 0;
  }
}

inline MonodromyClass classify_monodromy(const ComplexField& f, double r, double zero_eps = -1.0) {
  if (!(r > 0.0)) throw std::invalid_argument("classify_monodromy: r must be positive");
  const double fmax = max_abs(f);
  if (fmax == 0.0) throw Error("classify_monodromy: field is identically zero");
  if (zero_eps <= 0.0) zero_eps = 1e-8 * fmax;
  MonodromyClass out;
  out.rationality = detect_rational(r);
  out.clusters = find_zero_clusters(f, zero_eps);
  for (const auto& c : out.clusters) {
    if (c.touches_boundary)
      throw Error("classify_monodromy: zero cluster near (" + std::to_string(c.centre.x) + ", " +
                  std::to_string(c.centre.y) + ") touches the boundary");
    const long long w = winding_along_loop(f, rectangle_loop(f.grid(), c.i0, c.j0, c.i1, c.j1));
    out.winding_numbers.push_back(w);
    if (!winding_admits_continuous_root(w, out.rationality)) out.decision = MonodromyDecision::CutRequired;
  }
  return out;
}

// --- construction ------------------------------------------------------------

struct SbvField {
  ComplexField lambda;
  std::optional<BranchCut> cut;
  double r = 1.0;
  Mask zero_mask;
  RadicalPlan plan;

  /// Segments of the discontinuity curve (empty when there is no cut).
  LevelCurveSet cut_curve() const { return cut ? cut->curve : LevelCurveSet{}; }
};

namespace detail {

inline cplx integer_power(cplx v, long long n) {
  cplx out = 1.0;
  for (; n > 0; n >>= 1) {
    if (n & 1) out *= v;
    v *= v;
  }
  return out;
}

// exp((log|f| + i theta) / r) with theta in [arg y, arg y + 2 pi).
inline ComplexField radical_with_cut(const ComplexField& f, double r, cplx direction, const Mask& zero) {
  ComplexField out(f.grid());
  const double base = std::arg(direction);
  const cplx rot = std::conj(direction);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (zero[k]) continue;
    double phi = std::arg(f[k] * rot);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    out[k] = std::polar(std::pow(std::abs(f[k]), 1.0 / r), (base + phi) / r);
  }
  return out;
}

// Phase continued along a breadth-first spanning forest of the non-zero
// nodes. Single valued whenever the monodromy admits a continuous root.
inline ComplexField radical_by_continuation(const ComplexField& f, double r, const Mask& zero) {
  const Grid2D& g = f.grid();
  ComplexField out(g);
  std::vector<double> phase(g.size(), 0.0);
  std::vector<std::uint8_t> done(g.size(), 0);
  for (std::size_t seed = 0; seed < g.size(); ++seed) {
    if (zero[seed] || done[seed]) continue;
    phase[seed] = std::arg(f[seed]);
    done[seed] = 1;
    std::queue<std::size_t> todo;
    todo.push(seed);
    while (!todo.empty()) {
      const std::size_t k = todo.front();
      todo.pop();
      out[k] = std::polar(std::pow(std::abs(f[k]), 1.0 / r), phase[k] / r);
      const std::size_t i = k % g.nx(), j = k / g.nx();
      const std::size_t nb[4] = {i + 1 < g.nx() ? k + 1 : k, i > 0 ? k - 1 : k, j + 1 < g.ny() ? k + g.nx() : k,
                                 j > 0 ? k - g.nx() : k};
      for (std::size_t n : nb) {
        if (n == k || zero[n] || done[n]) continue;
        phase[n] = phase[k] + phase_step(f[k], f[n]);
        done[n] = 1;
        todo.push(n);
      }
    }
  }
  return out;
}

}  // namespace detail

inline Mask zero_mask(const ComplexField& f, double zero_eps) {
  Mask m(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) m[k] = std::abs(f[k]) <= zero_eps;
  return m;
}

/// lambda with lambda^r = f off the zero mask and lambda = 0 on it. With a
/// cut, the logarithm's branch cut is the ray R_+ cut.direction; without one,
/// the monodromy must admit a continuous root and the phase is continued.
inline SbvField construct_radical(const ComplexField& f, double r, const std::optional<BranchCut>& cut,
                                  double zero_eps = -1.0) {
  SbvField out;
  out.r = r;
  out.plan = reduce_exponent(r);
  out.cut = cut;
  const double fmax = max_abs(f);
  if (zero_eps <= 0.0) zero_eps = 1e-8 * fmax;
  out.zero_mask = fmax == 0.0 ? Mask(f.grid(), 1) : zero_mask(f, zero_eps);
  if (fmax == 0.0) {
    out.lambda = ComplexField(f.grid());
    out.cut.reset();
    return out;
  }

  const RadicalPlan& plan = out.plan;
  if (plan.kind == RadicalCase::PowerOnly) {
    out.lambda = map_field(f, [&](const cplx& v) { return detail::integer_power(v, plan.prepower); });
    for (std::size_t k = 0; k < f.size(); ++k)
      if (out.zero_mask[k]) out.lambda[k] = 0.0;
    out.cut.reset();
    return out;
  }

  const double root_r = plan.reduced_r;
  ComplexField mu;
  if (cut) {
    mu = detail::radical_with_cut(f, root_r, cut->direction, out.zero_mask);
  } else {
    const MonodromyClass mono = classify_monodromy(f, root_r, zero_eps);
    if (mono.decision == MonodromyDecision::CutRequired)
      throw Error("construct_radical: monodromy requires a branch cut but none was given");
    mu = detail::radical_by_continuation(f, root_r, out.zero_mask);
  }
  if (plan.kind == RadicalCase::PowerTimesRadical)
    for (std::size_t k = 0; k < f.size(); ++k) mu[k] *= detail::integer_power(f[k], plan.prepower);
  out.lambda = std::move(mu);
  return out;
}

}  // namespace bvroots
