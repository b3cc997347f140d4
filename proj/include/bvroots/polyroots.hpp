// Pointwise roots of monic polynomials P_a(Z) = Z^n + a_1 Z^{n-1} + ... + a_n,
// elementary symmetric reconstruction and the discriminant via the Sylvester
// resultant of P and P'.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "assignment.hpp"
#include "grid.hpp"

namespace bvroots {

/// max_j |a_j|^{1/j}; roots satisfy |lambda| <= 2 * root_scale(a).
inline double root_scale(std::span<const cplx> a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s = std::max(s, std::pow(std::abs(a[j]), 1.0 / static_cast<double>(j + 1)));
  return s;
}

/// Roots of Z^n + a_1 Z^{n-1} + ... + a_n as eigenvalues of the companion
/// matrix, after rescaling Z = s W with s = root_scale(a). Trailing zero
/// coefficients are deflated exactly.
inline std::vector<cplx> solve_pointwise(std::span<const cplx> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("solve_pointwise: degree must be at least 1");
  for (const auto& c : a)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error("solve_pointwise: non-finite coefficient");
  std::size_t m = n;
  while (m > 0 && a[m - 1] == cplx{}) --m;
  std::vector<cplx> roots(n, cplx{});
  if (m == 0) return roots;
  const double s = root_scale(a.first(m));
  if (m == 1) {
    roots[0] = -a[0];
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  double sj = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    sj *= s;
    companion(0, static_cast<Eigen::Index>(j)) = -a[j] / sj;
  }
  for (std::size_t k = 1; k < m; ++k) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("solve_pointwise: eigenvalue iteration did not converge");
  for (std::size_t k = 0; k < m; ++k) roots[k] = s * solver.eigenvalues()(static_cast<Eigen::Index>(k));
  return roots;
}

/// Coefficients (a_1..a_n) of prod (Z - lambda_i): a_j = (-1)^j e_j(lambda).
inline std::vector<cplx> coefficients_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> e(roots.size() + 1, cplx{});
  e[0] = 1.0;
  for (std::size_t k = 0; k < roots.size(); ++k)
    for (std::size_t j = k + 1; j >= 1; --j) e[j] -= roots[k] * e[j - 1];
  return {e.begin() + 1, e.end()};
}

/// max_j |a_j(roots) - a_j| / s^j with s = root_scale(a) (0 when everything
/// vanishes exactly).
inline double reconstruction_error(std::span<const cplx> roots, std::span<const cplx> a) {
  const auto b = coefficients_from_roots(roots);
  const double s = root_scale(a);
  double err = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = std::abs(b[j] - a[j]);
    if (d == 0.0) continue;
    const double scale = std::pow(s, static_cast<double>(j + 1));
    err = std::max(err, scale > 0.0 ? d / scale : std::numeric_limits<double>::infinity());
  }
  return err;
}

/// Discriminant of the monic P_a: (-1)^{n(n-1)/2} Res(P, P'), with the
/// resultant as the determinant of the (2n-1) x (2n-1) Sylvester matrix.
inline cplx discriminant(std::span<const cplx> a) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("discriminant: degree must be at least 2");
  const std::size_t N = 2 * n - 1;
  std::vector<cplx> p(n + 1), dp(n);
  p[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) p[j + 1] = a[j];
  for (std::size_t j = 0; j < n; ++j) dp[j] = static_cast<double>(n - j) * p[j];
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  // n-1 shifted copies of P, then n shifted copies of P'.
  for (std::size_t r = 0; r + 1 < n; ++r)
    for (std::size_t j = 0; j <= n; ++j) S(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + j)) = p[j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j)
      S(static_cast<Eigen::Index>(n - 1 + r), static_cast<Eigen::Index>(r + j)) = dp[j];
  const cplx res = S.partialPivLu().determinant();
  return ((n * (n - 1) / 2) % 2 == 0) ? res : -res;
}

/// Reorders `next` so that slot i holds the root matched to reference[i] by
/// the minimal-total-distance perfect matching.
inline std::vector<cplx> match_to(std::span<const cplx> reference, std::span<const cplx> next) {
  const std::size_t n = reference.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = std::abs(reference[i] - next[j]);
  const auto assignment = min_cost_assignment(cost, n);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = next[assignment[i]];
  return out;
}

/// Sum of |a_i - b_i|.
inline double matching_cost(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace bvroots
