// Uniform 2D grids, sampled scalar fields, finite differences and Hölder norm
// estimates.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bvroots {

using cplx = std::complex<double>;

/// Base class for pipeline failures (numerical breakdown, unresolvable input).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

/// Axis-aligned rectangle sampled at nx * ny nodes, row-major (x fastest).
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(double xmin, double xmax, double ymin, double ymax, std::size_t nx, std::size_t ny)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), nx_(nx), ny_(ny) {
    if (!(xmin < xmax) || !(ymin < ymax))
      throw std::invalid_argument("Grid2D: empty domain rectangle");
    if (nx < 2 || ny < 2) throw std::invalid_argument("Grid2D: need at least 2 samples per axis");
    hx_ = (xmax - xmin) / static_cast<double>(nx - 1);
    hy_ = (ymax - ymin) / static_cast<double>(ny - 1);
  }

  /// Square grid with n samples per axis.
  static Grid2D square(double lo, double hi, std::size_t n) { return {lo, hi, lo, hi, n, n}; }

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  std::size_t size() const { return nx_ * ny_; }
  double cell_area() const { return hx_ * hy_; }

  double x(std::size_t i) const {
    return xmin_ + (xmax_ - xmin_) * static_cast<double>(i) / static_cast<double>(nx_ - 1);
  }
  double y(std::size_t j) const {
    return ymin_ + (ymax_ - ymin_) * static_cast<double>(j) / static_cast<double>(ny_ - 1);
  }
  Point node(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }

  bool contains(Point p, double tol = 1e-12) const {
    const double tx = tol * (xmax_ - xmin_);
    const double ty = tol * (ymax_ - ymin_);
    return p.x >= xmin_ - tx && p.x <= xmax_ + tx && p.y >= ymin_ - ty && p.y <= ymax_ + ty;
  }

  // Edge numbering: horizontal edges (i,j)-(i+1,j) first, then vertical
  // edges (i,j)-(i,j+1).
  std::size_t horizontal_edge_count() const { return (nx_ - 1) * ny_; }
  std::size_t edge_count() const { return horizontal_edge_count() + nx_ * (ny_ - 1); }
  std::size_t horizontal_edge(std::size_t i, std::size_t j) const { return j * (nx_ - 1) + i; }
  std::size_t vertical_edge(std::size_t i, std::size_t j) const {
    return horizontal_edge_count() + j * nx_ + i;
  }
  /// Node indices (a, b) of an edge with a < b.
  std::pair<std::size_t, std::size_t> edge_nodes(std::size_t e) const {
    if (e < horizontal_edge_count()) {
      const std::size_t j = e / (nx_ - 1), i = e % (nx_ - 1);
      return {index(i, j), index(i + 1, j)};
    }
    e -= horizontal_edge_count();
    const std::size_t j = e / nx_, i = e % nx_;
    return {index(i, j), index(i, j + 1)};
  }

  bool operator==(const Grid2D&) const = default;

 private:
  double xmin_ = 0.0, xmax_ = 1.0, ymin_ = 0.0, ymax_ = 1.0;
  std::size_t nx_ = 2, ny_ = 2;
  double hx_ = 1.0, hy_ = 1.0;
};

/// Values sampled at every node of a grid.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(Grid2D grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}
  Field(Grid2D grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("Field: value count does not match grid");
  }

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  T& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  T& operator[](std::size_t k) { return values_[k]; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

 private:
  Grid2D grid_;
  std::vector<T> values_;
};

using ComplexField = Field<cplx>;
using RealField = Field<double>;
using Mask = Field<std::uint8_t>;

template <typename T>
double max_abs(const Field<T>& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, static_cast<double>(std::abs(v)));
  return m;
}

template <typename T, typename Fn>
auto map_field(const Field<T>& f, Fn&& fn) {
  using R = decltype(fn(std::declval<const T&>()));
  Field<R> out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = fn(f[k]);
  return out;
}

inline RealField abs_field(const ComplexField& f) {
  return map_field(f, [](const cplx& v) { return std::abs(v); });
}

/// Pointwise multiplication by a scalar.
inline ComplexField scale_field(const ComplexField& f, cplx c) {
  return map_field(f, [c](const cplx& v) { return c * v; });
}

/// Bilinear interpolation; points outside the grid are clamped to it.
template <typename T>
T interpolate(const Field<T>& f, Point p) {
  const Grid2D& g = f.grid();
  const double u = std::clamp((p.x - g.xmin()) / g.hx(), 0.0, static_cast<double>(g.nx() - 1));
  const double v = std::clamp((p.y - g.ymin()) / g.hy(), 0.0, static_cast<double>(g.ny() - 1));
  const std::size_t i = std::min(static_cast<std::size_t>(u), g.nx() - 2);
  const std::size_t j = std::min(static_cast<std::size_t>(v), g.ny() - 2);
  const double s = u - static_cast<double>(i), t = v - static_cast<double>(j);
  return (1 - s) * (1 - t) * f(i, j) + s * (1 - t) * f(i + 1, j) + (1 - s) * t * f(i, j + 1) +
         s * t * f(i + 1, j + 1);
}

namespace detail {

// Second-order derivative along a strided line of n samples with spacing h.
// Central in the interior, one-sided three-point at both ends.
template <typename T>
void differentiate_line(const T* in, T* out, std::size_t n, std::size_t stride, double h) {
  const double inv2h = 1.0 / (2.0 * h);
  out[0] = (-3.0 * in[0] + 4.0 * in[stride] - in[2 * stride]) * inv2h;
  for (std::size_t k = 1; k + 1 < n; ++k) out[k * stride] = (in[(k + 1) * stride] - in[(k - 1) * stride]) * inv2h;
  const std::size_t l = (n - 1) * stride;
  out[l] = (3.0 * in[l] - 4.0 * in[l - stride] + in[l - 2 * stride]) * inv2h;
}

}  // namespace detail

template <typename T>
Field<T> derivative_x(const Field<T>& f) {
  const Grid2D& g = f.grid();
  if (g.nx() < 3) throw std::invalid_argument("derivative_x: grid too small (nx < 3)");
  Field<T> out(g);
  for (std::size_t j = 0; j < g.ny(); ++j)
    detail::differentiate_line(&f[g.index(0, j)], &out[g.index(0, j)], g.nx(), 1, g.hx());
  return out;
}

template <typename T>
Field<T> derivative_y(const Field<T>& f) {
  const Grid2D& g = f.grid();
  if (g.ny() < 3) throw std::invalid_argument("derivative_y: grid too small (ny < 3)");
  Field<T> out(g);
  for (std::size_t i = 0; i < g.nx(); ++i)
    detail::differentiate_line(&f[g.index(i, 0)], &out[g.index(i, 0)], g.ny(), g.nx(), g.hy());
  return out;
}

/// (d/dx, d/dy) by second-order finite differences; exact on quadratics.
template <typename T>
std::pair<Field<T>, Field<T>> gradient(const Field<T>& f) {
  return {derivative_x(f), derivative_y(f)};
}

/// Largest singular value of the real 2x2 Jacobian of a complex-valued map
/// with partials dx, dy. Equals |f'| for holomorphic f.
inline double jacobian_norm(cplx dx, cplx dy) {
  const double a = dx.real(), b = dy.real(), c = dx.imag(), d = dy.imag();
  const double s = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::max(0.0, s * s - 4.0 * det * det);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

inline double jacobian_norm(double dx, double dy) { return std::hypot(dx, dy); }

struct HolderEstimate {
  int k = 0;
  double alpha = 1.0;
  double sup_derivatives = 0.0;  ///< sup over |gamma| <= k and nodes of |d^gamma f|
  double hoelder_seminorm = 0.0;  ///< max over |gamma| = k of the sampled Hölder quotient
  double total = 0.0;
  std::vector<double> sup_by_order;  ///< max |d^gamma f| per order |gamma| = 0..k
};

struct HolderOptions {
  std::size_t window = 8;
  std::size_t random_pairs = 10000;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

template <typename T>
double sampled_hoelder(const Field<T>& f, double alpha, const HolderOptions& opt) {
  const Grid2D& g = f.grid();
  const auto nx = static_cast<std::ptrdiff_t>(g.nx()), ny = static_cast<std::ptrdiff_t>(g.ny());
  const auto w = static_cast<std::ptrdiff_t>(opt.window);
  auto quotient = [&](std::ptrdiff_t i1, std::ptrdiff_t j1, std::ptrdiff_t i2, std::ptrdiff_t j2) {
    const double d = std::hypot(static_cast<double>(i2 - i1) * g.hx(), static_cast<double>(j2 - j1) * g.hy());
    const double num = std::abs(f(static_cast<std::size_t>(i1), static_cast<std::size_t>(j1)) -
                                f(static_cast<std::size_t>(i2), static_cast<std::size_t>(j2)));
    return alpha == 1.0 ? num / d : num / std::pow(d, alpha);
  };
  double best = 0.0;
  for (std::ptrdiff_t j = 0; j < ny; ++j)
    for (std::ptrdiff_t i = 0; i < nx; ++i)
      for (std::ptrdiff_t dj = 0; dj <= w && j + dj < ny; ++dj)
        for (std::ptrdiff_t di = (dj == 0 ? 1 : -w); di <= w; ++di) {
          const std::ptrdiff_t i2 = i + di;
          if (i2 < 0 || i2 >= nx) continue;
          best = std::max(best, quotient(i, j, i2, j + dj));
        }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (std::size_t s = 0; s < opt.random_pairs; ++s) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    best = std::max(best, quotient(static_cast<std::ptrdiff_t>(a % g.nx()), static_cast<std::ptrdiff_t>(a / g.nx()),
                                   static_cast<std::ptrdiff_t>(b % g.nx()), static_cast<std::ptrdiff_t>(b / g.nx())));
  }
  return best;
}

}  // namespace detail

/// Estimate of the C^{k,alpha} norm: sup of all derivatives up to order k plus
/// the Hölder seminorm of the order-k derivatives. The seminorm is sampled on
/// all node pairs within a window plus a seeded set of random global pairs.
template <typename T>
HolderEstimate holder_norm_estimate(const Field<T>& f, int k, double alpha, const HolderOptions& opt = {}) {
  if (k < 0) throw std::invalid_argument("holder_norm_estimate: k must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("holder_norm_estimate: alpha must lie in (0,1]");
  const Grid2D& g = f.grid();
  const std::size_t need = std::max<std::size_t>(static_cast<std::size_t>(k) + 2, k > 0 ? 3 : 2);
  if (g.nx() < need || g.ny() < need) throw std::invalid_argument("holder_norm_estimate: grid too coarse for order k");

  HolderEstimate est;
  est.k = k;
  est.alpha = alpha;
  // derivatives[a] holds d_x^a d_y^(order-a) f for the current order.
  std::vector<Field<T>> derivatives{f};
  for (int order = 0;; ++order) {
    double sup = 0.0;
    for (const auto& d : derivatives) sup = std::max(sup, max_abs(d));
    est.sup_by_order.push_back(sup);
    est.sup_derivatives = std::max(est.sup_derivatives, sup);
    if (order == k) break;
    std::vector<Field<T>> next;
    next.reserve(derivatives.size() + 1);
    next.push_back(derivative_y(derivatives.front()));
    for (const auto& d : derivatives) next.push_back(derivative_x(d));
    derivatives = std::move(next);
  }
  for (const auto& d : derivatives)
    est.hoelder_seminorm = std::max(est.hoelder_seminorm, detail::sampled_hoelder(d, alpha, opt));
  est.total = est.sup_derivatives + est.hoelder_seminorm;
  return est;
}

}  // namespace bvroots
