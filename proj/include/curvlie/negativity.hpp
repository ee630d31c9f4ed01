#pragma once

#include <cstdint>
#include <random>

#include "curvlie/geometry.hpp"
#include "curvlie/jordan.hpp"

namespace curvlie {

struct NegativityResult {
  double max_K = 0;
  Vec x;  ///< orthonormal pair spanning the best plane found
  Vec y;
};

struct ScanOptions {
  int samples = 10000;
  int ascent_steps = 100;
  double step = 1e-2;
  std::uint64_t seed = 0;
};

namespace detail {

/// Gram-Schmidt for the metric; returns false when x, y are dependent.
inline bool orthonormal_pair(const MetricAlgebra& g, Vec& x, Vec& y) {
  const double nx = std::sqrt(g.inner(x, x));
  if (!(nx > 1e-12)) return false;
  x /= nx;
  y -= g.inner(x, y) * x;
  const double ny = std::sqrt(g.inner(y, y));
  if (!(ny > 1e-12)) return false;
  y /= ny;
  return true;
}

}  // namespace detail

/// Largest sectional curvature found by random sampling of 2-planes followed
/// by finite-difference ascent. A lower bound for the true maximum.
inline NegativityResult negativity_scan(const MetricAlgebra& g, const ScanOptions& opt = {}) {
  g.validate();
  const int n = g.dim();
  if (n < 2) throw InputError("negativity_scan: dimension must be at least 2");
  const Tensor R = riemann(g);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  auto K = [&](const Vec& x, const Vec& y) { return riemann_form(g, R, x, y, y, x); };

  NegativityResult best;
  best.max_K = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.samples; ++s) {
    Vec x(n), y(n);
    for (int i = 0; i < n; ++i) x(i) = nd(rng);
    for (int i = 0; i < n; ++i) y(i) = nd(rng);
    if (!detail::orthonormal_pair(g, x, y)) continue;
    const double k = K(x, y);
    if (k > best.max_K) best = {k, x, y};
  }
  if (best.x.size() == 0) throw ComputationError("negativity_scan: no admissible sample");

  Vec x = best.x, y = best.y;
  double cur = best.max_K;
  const double h = 1e-6;
  for (int it = 0; it < opt.ascent_steps; ++it) {
    Vec gx(n), gy(n);
    for (int i = 0; i < n; ++i) {
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      Vec y1 = y, y2 = y;
      double kp = detail::orthonormal_pair(g, xp, y1) ? K(xp, y1) : cur;
      double km = detail::orthonormal_pair(g, xm, y2) ? K(xm, y2) : cur;
      gx(i) = (kp - km) / (2 * h);
    }
    for (int i = 0; i < n; ++i) {
      Vec yp = y, ym = y;
      yp(i) += h;
      ym(i) -= h;
      Vec x1 = x, x2 = x;
      double kp = detail::orthonormal_pair(g, x1, yp) ? K(x1, yp) : cur;
      double km = detail::orthonormal_pair(g, x2, ym) ? K(x2, ym) : cur;
      gy(i) = (kp - km) / (2 * h);
    }
    if (std::max(gx.norm(), gy.norm()) < 1e-12) break;
    double step = opt.step;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt, step *= 0.5) {
      Vec xn = x + step * gx, yn = y + step * gy;
      if (!detail::orthonormal_pair(g, xn, yn)) continue;
      const double k = K(xn, yn);
      if (k > cur) {
        x = xn;
        y = yn;
        cur = k;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  best = {cur, x, y};
  return best;
}

/// Inner product on n(D), in its standard basis, for which ad(A) restricted to
/// n has positive-definite symmetric part: Jordan chains of D are rescaled by
/// powers of eps so the nilpotent part is small, and A gets length 1/t.
/// Large t makes every sectional curvature negative when D is in delta+.
inline Mat adapted_gram(const Mat& d, double t, const ToleranceConfig& tc = {}) {
  const int m = static_cast<int>(d.rows());
  RealJordanResult jr = real_jordan_form(d, tc);
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (const auto& b : jr.blocks) {
    lo = std::min(lo, b.re);
    hi = std::max(hi, std::hypot(b.re, b.im));
  }
  if (!(lo > 0)) throw PreconditionError("adapted_gram: eigenvalues must have positive real part");
  const double eps = 0.25 * lo / std::max(1.0, hi / lo);
  Vec scale(m);
  int row = 0;
  for (const auto& b : jr.blocks) {
    const int w = b.im > 0 ? 2 : 1;
    for (int k = 0; k < b.size; ++k)
      for (int r = 0; r < w; ++r) scale(row++) = std::pow(eps, k);
  }
  const Mat B = jr.P * scale.asDiagonal();
  const Mat Bi = B.inverse();
  Mat g = Mat::Zero(m + 1, m + 1);
  g.topLeftCorner(m, m) = Bi.transpose() * Bi;
  g(m, m) = 1.0 / (t * t);
  return 0.5 * (g + g.transpose());
}

}  // namespace curvlie
