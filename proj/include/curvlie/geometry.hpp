#pragma once

#include <optional>
#include <vector>

#include "curvlie/metric.hpp"
#include "curvlie/tolerance.hpp"

namespace curvlie {

/// Dense cubic array of fixed rank over {0..n-1}; the last index varies fastest.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int rank) : n_(n), rank_(rank) {
    size_t sz = 1;
    for (int r = 0; r < rank; ++r) sz *= static_cast<size_t>(n);
    v_.assign(sz, 0.0);
  }

  int dim() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<double>& data() const { return v_; }

  template <class... I>
  double& operator()(I... idx) {
    return v_[index(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return v_[index(idx...)];
  }

  double max_abs() const {
    double m = 0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  template <class... I>
  size_t index(I... idx) const {
    size_t k = 0;
    ((k = k * static_cast<size_t>(n_) + static_cast<size_t>(idx)), ...);
    return k;
  }
  int n_ = 0;
  int rank_ = 0;
  std::vector<double> v_;
};

/// U(x, y), defined by <U(x,y), z> = 1/2 <x, [z,y]> + 1/2 <y, [z,x]>.
inline Vec u_map(const MetricAlgebra& g, const Vec& x, const Vec& y) {
  const int n = g.dim();
  if (x.size() != n || y.size() != n) throw InputError("u_map: vector has wrong dimension");
  Vec w(n);
  for (int k = 0; k < n; ++k) {
    Vec ek = Vec::Unit(n, k);
    w(k) = 0.5 * g.inner(x, bracket(g.alg, ek, y)) + 0.5 * g.inner(y, bracket(g.alg, ek, x));
  }
  return g.gram.ldlt().solve(w);
}

/// gamma(i, j, k): nabla_{e_i} e_j = sum_k gamma(i, j, k) e_k.
inline Tensor levi_civita(const MetricAlgebra& g) {
  g.validate();
  const int n = g.dim();
  Tensor gam(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec v = u_map(g, Vec::Unit(n, i), Vec::Unit(n, j)) + 0.5 * g.alg.basis_bracket(i, j);
      for (int k = 0; k < n; ++k) gam(i, j, k) = v(k);
    }
  return gam;
}

/// R(e_i, e_j) e_k = sum_l R(i, j, k, l) e_l with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
inline Tensor riemann(const MetricAlgebra& g, const Tensor& gam) {
  const int n = g.dim();
  Tensor R(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m)
            s += gam(j, k, m) * gam(i, m, l) - gam(i, k, m) * gam(j, m, l) - g.alg.c(i, j, m) * gam(m, k, l);
          R(i, j, k, l) = s;
        }
  return R;
}

inline Tensor riemann(const MetricAlgebra& g) { return riemann(g, levi_civita(g)); }

/// Ric(X, Y) = trace of Z -> R(Z, X) Y.
inline Mat ricci_contraction(const Tensor& R) {
  const int n = R.dim();
  Mat ric = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i) ric(a, b) += R(i, a, b, i);
  return ric;
}

/// Closed-form Ricci tensor in terms of U and brackets, evaluated in an
/// orthonormal frame and expressed back in the original basis.
inline Mat ricci_formula(const MetricAlgebra& g) {
  const int n = g.dim();
  Mat P = orthonormal_frame(g.gram);
  MetricAlgebra o(change_basis(g.alg, P));
  const LieAlgebra& L = o.alg;
  std::vector<Vec> e(n);
  for (int i = 0; i < n; ++i) e[i] = Vec::Unit(n, i);
  Vec uu = Vec::Zero(n);  // sum_i U(e_i, e_i)
  for (int i = 0; i < n; ++i) uu += u_map(o, e[i], e[i]);
  Mat ric = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec& X = e[a];
      const Vec& Y = e[b];
      double s = -u_map(o, X, Y).dot(uu);
      const Vec xy = bracket(L, X, Y);
      for (int i = 0; i < n; ++i) {
        const Vec& E = e[i];
        const Vec ex = bracket(L, E, X), ey = bracket(L, E, Y);
        s += -0.5 * E.dot(bracket(L, xy, E));
        s += u_map(o, E, Y).dot(u_map(o, E, X));
        s += -0.75 * bracket(L, ex, Y).dot(E);
        s += -0.25 * Y.dot(bracket(L, E, ex));
        s += 0.25 * X.dot(bracket(L, ey, E));
        s += 0.25 * E.dot(bracket(L, ey, X));
        s += -0.75 * ex.dot(ey);
      }
      ric(a, b) = s;
    }
  Mat Pi = P.inverse();
  return Pi.transpose() * ric * Pi;
}

/// Ricci tensor by contraction of R, cross-checked against the closed form.
inline Mat ricci(const MetricAlgebra& g, const Tensor& R, const ToleranceConfig& tc = {}) {
  Mat a = ricci_contraction(R);
  Mat b = ricci_formula(g);
  const double dev = max_abs(Mat(a - b));
  if (dev > tc.tol_curv * std::max(1.0, max_abs(a)))
    throw InternalError("ricci: contraction and closed form disagree by " + std::to_string(dev));
  return 0.5 * (a + a.transpose());
}

inline Mat ricci(const MetricAlgebra& g, const ToleranceConfig& tc = {}) { return ricci(g, riemann(g), tc); }

/// <R(x,y)z, w>.
inline double riemann_form(const MetricAlgebra& g, const Tensor& R, const Vec& x, const Vec& y, const Vec& z,
                           const Vec& w) {
  const int n = g.dim();
  Vec gw = g.gram * w;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0) continue;
      for (int k = 0; k < n; ++k) {
        if (z(k) == 0) continue;
        const double f = x(i) * y(j) * z(k);
        for (int l = 0; l < n; ++l) s += f * R(i, j, k, l) * gw(l);
      }
    }
  }
  return s;
}

/// <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2).
inline double sectional(const MetricAlgebra& g, const Tensor& R, const Vec& x, const Vec& y) {
  const int n = g.dim();
  if (x.size() != n || y.size() != n) throw InputError("sectional: vector has wrong dimension");
  const double xx = g.inner(x, x), yy = g.inner(y, y), xy = g.inner(x, y);
  const double area = xx * yy - xy * xy;
  if (!(area > 1e-24 * std::max(1e-300, xx * yy))) throw InputError("sectional: vectors are linearly dependent");
  return riemann_form(g, R, x, y, y, x) / area;
}

inline double sectional(const MetricAlgebra& g, const Vec& x, const Vec& y) { return sectional(g, riemann(g), x, y); }

inline double scalar_curvature(const MetricAlgebra& g, const Mat& ric) {
  return g.gram.ldlt().solve(ric).trace();
}

/// lambda with Ric = lambda <.,.>, if any (lambda = scalar / dim).
inline std::optional<double> is_einstein(const MetricAlgebra& g, const Mat& ric, const ToleranceConfig& tc = {}) {
  const double lambda = scalar_curvature(g, ric) / g.dim();
  if (max_abs(Mat(ric - lambda * g.gram)) <= tc.tol_curv) return lambda;
  return std::nullopt;
}

inline std::optional<double> is_einstein(const MetricAlgebra& g, const ToleranceConfig& tc = {}) {
  return is_einstein(g, ricci(g, tc), tc);
}

/// (nabla_{e_w} R)(e_i, e_j) e_k, component m.
inline Tensor nabla_r(const Tensor& gam, const Tensor& R) {
  const int n = R.dim();
  Tensor out(n, 5);
  for (int w = 0; w < n; ++w)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int m = 0; m < n; ++m) {
            double s = 0;
            for (int p = 0; p < n; ++p) {
              s += R(i, j, k, p) * gam(w, p, m);
              s -= gam(w, i, p) * R(p, j, k, m);
              s -= gam(w, j, p) * R(i, p, k, m);
              s -= gam(w, k, p) * R(i, j, p, m);
            }
            out(w, i, j, k, m) = s;
          }
  return out;
}

struct CurvatureReport {
  MetricAlgebra frame;  ///< the orthonormal frame all tensors refer to
  Mat basis;            ///< columns: frame vectors in the input basis
  Tensor u;             ///< u(i, j, k): U(e_i, e_j) component k
  Tensor connection;
  Tensor riemann;
  Mat ricci;
  double scalar = 0;
  std::optional<double> einstein;
  Tensor nabla_r;
  double nabla_r_norm = 0;
  bool symmetric_space = false;
};

inline CurvatureReport curvature_report(const MetricAlgebra& g, const ToleranceConfig& tc = {}) {
  g.validate(tc);
  CurvatureReport r;
  r.basis = orthonormal_frame(g.gram);
  r.frame = MetricAlgebra(change_basis(g.alg, r.basis));
  const int n = g.dim();
  r.u = Tensor(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec v = u_map(r.frame, Vec::Unit(n, i), Vec::Unit(n, j));
      for (int k = 0; k < n; ++k) r.u(i, j, k) = v(k);
    }
  r.connection = levi_civita(r.frame);
  r.riemann = riemann(r.frame, r.connection);
  r.ricci = ricci(r.frame, r.riemann, tc);
  r.scalar = scalar_curvature(r.frame, r.ricci);
  r.einstein = is_einstein(r.frame, r.ricci, tc);
  r.nabla_r = nabla_r(r.connection, r.riemann);
  r.nabla_r_norm = r.nabla_r.max_abs();
  r.symmetric_space = r.nabla_r_norm <= tc.tol_curv;
  return r;
}

}  // namespace curvlie
