#pragma once

#include <string>
#include <vector>

#include "curvlie/extension.hpp"
#include "curvlie/geometry.hpp"

namespace curvlie {

/// Decomposition test g = R A + a1 + a2 for a negatively curved symmetric space.
struct HeintzeReport {
  bool a = false;  ///< [g', a2] = 0
  bool b = false;  ///< D0 = lambda on a1, 2 lambda on a2; S0 a derivation
  bool c = false;  ///< J maps are a Clifford system
  bool pass = false;
  std::string failed_at;  ///< "a", "b", "c" or "" when passing
  double lambda = 0;
  int dim_a1 = 0;
  int dim_a2 = 0;
  double dev_a = 0;
  double dev_b = 0;
  double dev_c = 0;
  std::vector<Mat> J;
};

inline HeintzeReport heintze_check(const MetricAlgebra& g_in, const ToleranceConfig& tc = {}) {
  g_in.validate(tc);
  const MetricAlgebra g = orthonormalize(g_in);
  const int n = g.dim();
  HeintzeReport rep;
  SncVerdict v = snc_test_auto(g, tc);
  if (!v.is_snc) throw PreconditionError("heintze_check: not an SNC algebra (" + v.reason + ")");
  const Mat& Q = v.derived.basis;  // orthonormal, the frame is orthonormal
  const Vec A = *v.witness_A;

  // a2 = [g', g'], a1 its orthogonal complement inside g'
  Subspace a2 = bracket_span(g.alg, Q, Q, tc.tol_struct);
  Mat comp = Q - a2.basis * (a2.basis.transpose() * Q);
  Mat a1 = column_space(comp, tc.tol_struct, tc.tol_struct);
  rep.dim_a1 = static_cast<int>(a1.cols());
  rep.dim_a2 = a2.dim();
  Mat basis(n, rep.dim_a1 + rep.dim_a2);
  basis << a1, a2.basis;

  // (a)
  for (int i = 0; i < Q.cols(); ++i)
    for (int j = 0; j < a2.dim(); ++j)
      rep.dev_a = std::max(rep.dev_a, max_abs(bracket(g.alg, Q.col(i), a2.basis.col(j))));
  rep.a = rep.dev_a <= tc.tol_curv;
  if (!rep.a) {
    rep.failed_at = "a";
    return rep;
  }

  // (b)
  const int m1 = rep.dim_a1, m2 = rep.dim_a2, m = m1 + m2;
  Mat D = basis.transpose() * ad(g.alg, A) * basis;
  Mat D0 = 0.5 * (D + D.transpose());
  Mat S0 = 0.5 * (D - D.transpose());
  rep.lambda = m1 > 0 ? D0.topLeftCorner(m1, m1).diagonal().mean() : 0.5 * D0.bottomRightCorner(m2, m2).diagonal().mean();
  Mat target = Mat::Zero(m, m);
  for (int i = 0; i < m1; ++i) target(i, i) = rep.lambda;
  for (int i = m1; i < m; ++i) target(i, i) = 2 * rep.lambda;
  rep.dev_b = max_abs(Mat(D0 - target));
  LieAlgebra gp = restrict_to(g.alg, basis, tc.tol_struct);
  rep.dev_b = std::max(rep.dev_b, derivation_defect(gp, S0));
  rep.b = rep.dev_b <= tc.tol_curv && rep.lambda > tc.tol_curv;
  if (!rep.b) {
    rep.failed_at = "b";
    return rep;
  }

  // (c): [X, Y] = 2 lambda sum_i <X, J_i Y> Z_i
  for (int i = 0; i < m2; ++i) {
    Mat J(m1, m1);
    for (int a = 0; a < m1; ++a)
      for (int b = 0; b < m1; ++b)
        J(a, b) = bracket(g.alg, a1.col(a), a1.col(b)).dot(a2.basis.col(i)) / (2 * rep.lambda);
    rep.J.push_back(J);
  }
  const Mat I = Mat::Identity(m1, m1);
  for (int i = 0; i < m2; ++i) {
    rep.dev_c = std::max(rep.dev_c, max_abs(Mat(rep.J[i] * rep.J[i] + I)));
    for (int k = 0; k < m2; ++k) {
      if (k == i) continue;
      rep.dev_c = std::max(rep.dev_c, max_abs(Mat(rep.J[i] * rep.J[k] + rep.J[k] * rep.J[i])));
      for (int x = 0; x < m1; ++x) {
        Vec X = Vec::Unit(m1, x);
        Mat span(m1, m2);
        for (int t = 0; t < m2; ++t) span.col(t) = rep.J[t] * X;
        Vec w = rep.J[i] * rep.J[k] * X;
        Vec coef = span.colPivHouseholderQr().solve(w);
        rep.dev_c = std::max(rep.dev_c, max_abs(Vec(span * coef - w)));
      }
    }
  }
  rep.c = rep.dev_c <= tc.tol_curv;
  if (!rep.c) {
    rep.failed_at = "c";
    return rep;
  }
  rep.pass = true;
  return rep;
}

}  // namespace curvlie
