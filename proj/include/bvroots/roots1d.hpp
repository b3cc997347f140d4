// Continuous root tracking of monic polynomial families along a parameter
// interval, and the discrete W^{1,p} check of the tracked roots.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "polyroots.hpp"
#include "variation.hpp"

namespace bvroots {

/// Coefficients a_1..a_n sampled at increasing parameters t.
struct CoeffCurve {
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<cplx> coeffs;  ///< sample-major, n per sample

  std::size_t samples() const { return t.size(); }
  std::span<const cplx> at(std::size_t k) const { return std::span<const cplx>(coeffs).subspan(k * n, n); }

  /// Coefficient functions evaluated at `count` evenly spaced parameters.
  static CoeffCurve sample(const std::vector<std::function<cplx(double)>>& a, double t0, double t1, std::size_t count) {
    if (a.empty()) throw std::invalid_argument("CoeffCurve: degree must be at least 1");
    if (count < 2 || !(t0 < t1)) throw std::invalid_argument("CoeffCurve: need >= 2 samples on an increasing interval");
    CoeffCurve c;
    c.n = a.size();
    c.t.resize(count);
    c.coeffs.resize(count * c.n);
    for (std::size_t k = 0; k < count; ++k) {
      c.t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(count - 1);
      for (std::size_t j = 0; j < c.n; ++j) {
        c.coeffs[k * c.n + j] = a[j](c.t[k]);
        if (!std::isfinite(c.coeffs[k * c.n + j].real()) || !std::isfinite(c.coeffs[k * c.n + j].imag()))
          throw std::invalid_argument("CoeffCurve: non-finite coefficient");
      }
    }
    return c;
  }

  void validate() const {
    if (n == 0 || coeffs.size() != n * t.size()) throw std::invalid_argument("CoeffCurve: inconsistent sizes");
    for (std::size_t k = 1; k < t.size(); ++k)
      if (!(t[k] > t[k - 1])) throw std::invalid_argument("CoeffCurve: parameters must increase strictly");
  }
};

struct RootTrack {
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<cplx> lambda;  ///< sample-major, n per sample
  double max_step_jump = 0.0;

  std::span<const cplx> at(std::size_t k) const { return std::span<const cplx>(lambda).subspan(k * n, n); }
  cplx operator()(std::size_t k, std::size_t sheet) const { return lambda[k * n + sheet]; }
};

struct TrackOptions {
  /// Match against the linear extrapolation 2 lambda_k - lambda_{k-1}
  /// instead of lambda_k.
  bool predictor = false;
  /// Initial ordering; empty means solver order at t_0.
  std::vector<cplx> initial;
};

/// Roots at t_0 in solver order, then each sample matched to its predecessor
/// by the minimal-total-distance perfect matching.
inline RootTrack match_continuous(const CoeffCurve& curve, const TrackOptions& opt = {}) {
  curve.validate();
  if (curve.samples() < 2) throw std::invalid_argument("match_continuous: need at least 2 samples");
  const std::size_t n = curve.n;
  RootTrack track;
  track.n = n;
  track.t = curve.t;
  track.lambda.resize(curve.coeffs.size());
  std::vector<cplx> prev = opt.initial.empty() ? solve_pointwise(curve.at(0)) : opt.initial;
  if (prev.size() != n) throw std::invalid_argument("match_continuous: initial tuple has wrong size");
  std::copy(prev.begin(), prev.end(), track.lambda.begin());
  std::vector<cplx> older;
  std::vector<cplx> reference(n);
  for (std::size_t k = 1; k < curve.samples(); ++k) {
    const auto roots = solve_pointwise(curve.at(k));
    if (opt.predictor && !older.empty())
      for (std::size_t i = 0; i < n; ++i) reference[i] = 2.0 * prev[i] - older[i];
    else
      reference = prev;
    auto next = match_to(reference, roots);
    for (std::size_t i = 0; i < n; ++i) track.max_step_jump = std::max(track.max_step_jump, std::abs(next[i] - prev[i]));
    std::copy(next.begin(), next.end(), track.lambda.begin() + static_cast<std::ptrdiff_t>(k * n));
    older = std::move(prev);
    prev = std::move(next);
  }
  return track;
}

struct SobolevReport {
  double p = 1.0;
  std::vector<double> sheet_norms;  ///< ||lambda_i'||_{L^p} per sheet
  std::vector<double> sheet_energy;  ///< int |lambda_i'|^p per sheet
  double lhs = 0.0;  ///< max over sheets of the norm
  double energy = 0.0;  ///< max over sheets of the energy
  double rhs_core = 0.0;  ///< max_j ||a_j||_{C^{n-1,1}}^{1/j}
  double ratio = 0.0;
  bool in_theorem_range = true;  ///< p < n/(n-1)
  double baseline = std::numeric_limits<double>::infinity();
  bool passed = true;
};

/// C^{k,1} norm estimate of a sampled complex curve on its parameter grid:
/// sup of derivatives up to order k plus the Lipschitz constant of the k-th.
inline double curve_holder_norm(const std::vector<double>& t, const std::vector<cplx>& values, int k,
                                const HolderOptions& opt = {}) {
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) {
    re[s] = values[s].real();
    im[s] = values[s].imag();
  }
  auto sup_abs = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) m = std::max(m, std::hypot(x[s], y[s]));
    return m;
  };
  double sup = sup_abs(re, im);
  for (int order = 1; order <= k; ++order) {
    re = derivative_1d(re, h);
    im = derivative_1d(im, h);
    sup = std::max(sup, sup_abs(re, im));
  }
  // Lipschitz constant of the complex k-th derivative, via |Re| and |Im| parts.
  const double lip = std::hypot(hoelder_1d(re, h, 1.0, opt), hoelder_1d(im, h, 1.0, opt));
  return sup + lip;
}

/// Discrete ||lambda'||_{L^p}: forward differences with midpoint weights.
inline SobolevReport sobolev_check(const RootTrack& track, const CoeffCurve& curve, double p,
                                   double baseline = std::numeric_limits<double>::infinity()) {
  if (!(p >= 1.0)) throw std::invalid_argument("sobolev_check: p must be >= 1");
  const std::size_t n = track.n;
  SobolevReport rep;
  rep.p = p;
  rep.baseline = baseline;
  rep.in_theorem_range = n == 1 || p < static_cast<double>(n) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < track.t.size(); ++k) {
      const double dt = track.t[k + 1] - track.t[k];
      s += std::pow(std::abs(track(k + 1, i) - track(k, i)) / dt, p) * dt;
    }
    rep.sheet_energy.push_back(s);
    rep.sheet_norms.push_back(std::pow(s, 1.0 / p));
    rep.lhs = std::max(rep.lhs, rep.sheet_norms.back());
    rep.energy = std::max(rep.energy, s);
  }
  if (curve.samples() >= 3) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<cplx> aj(curve.samples());
      for (std::size_t k = 0; k < curve.samples(); ++k) aj[k] = curve.at(k)[j];
      const double norm = curve_holder_norm(curve.t, aj, static_cast<int>(n) - 1);
      rep.rhs_core = std::max(rep.rhs_core, std::pow(norm, 1.0 / static_cast<double>(j + 1)));
    }
  }
  rep.ratio = rep.rhs_core > 0.0 ? rep.lhs / rep.rhs_core : 0.0;
  rep.passed = rep.ratio <= baseline;
  return rep;
}

}  // namespace bvroots
