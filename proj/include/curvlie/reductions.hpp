#pragma once

// Explicit automorphisms A with A D A^{-1} = D~ used to bring derivations of
// H3, B4 and C4 to normal form. Entry names follow D = (x_ij), 1-based in the
// comments, 0-based in code. Each closed form is checked by the caller; the
// `solve_*` helpers compute the same reduction from the conjugation identity.

#include <Eigen/QR>

#include "curvlie/linalg.hpp"

namespace curvlie::reduce {

namespace detail {
inline double det2(const Mat& d) { return d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0); }
}  // namespace detail

/// H3: clears x31, x32 in [[X, 0], [r, tr X]].
inline Mat h3_clear_row(const Mat& d) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1), x31 = d(2, 0), x32 = d(2, 1);
  Mat a = Mat::Zero(3, 3);
  a << x11, x12, 0, x21, x22, 0, x11 * x31 + x21 * x32, x22 * x32 + x12 * x31, detail::det2(d);
  return a;
}

/// B4: clears x31, x32 and x43 (row 4 is left in general position).
inline Mat b4_clear_row3(const Mat& d) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1), x31 = d(2, 0), x32 = d(2, 1);
  const double det = detail::det2(d);
  Mat a = Mat::Zero(4, 4);
  a << x11, x12, 0, 0, x21, x22, 0, 0, x11 * x31 + x21 * x32, x22 * x32 + x12 * x31, det, 0, 0, 0, x32 * det,
      x11 * det;
  return a;
}

/// B4: clears x41, x42 once rows 3 and 4 are otherwise diagonal.
inline Mat b4_clear_row4(const Mat& d) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1), y1 = d(3, 0), y2 = d(3, 1);
  const double det = detail::det2(d);
  const double den = x11 * (2 * x11 + x22) + det;
  const double a = (2 * y1 * x11 + y2 * x21) * (2 * x11 + x22) / den;
  const double b = (y1 * x12 + y2 * x11 + y2 * x22) * (2 * x11 + x22) / den;
  Mat m = Mat::Zero(4, 4);
  m << x11, x12, 0, 0, x21, x22, 0, 0, 0, 0, det, 0, a, b, 0, x11 * det;
  return m;
}

/// B4 with x11 = x22: (I + t E21) clears x21.
inline Mat b4_clear_x21(const Mat& d) {
  Mat a = Mat::Identity(4, 4);
  a(1, 0) = -d(1, 0) / (d(0, 0) - d(1, 1));
  return a;
}

/// C4, x33 != tr X or x43 = 0: clears row 4 below the diagonal.
inline Mat c4_clear_row4(const Mat& d, bool x43_zero) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1);
  const double x31 = d(2, 0), x32 = d(2, 1), x33 = d(2, 2), x41 = d(3, 0), x42 = d(3, 1), x43 = d(3, 2);
  const double det = detail::det2(d);
  Mat a = Mat::Zero(4, 4);
  if (x43_zero) {
    a << x11, x12, 0, 0, x21, x22, 0, 0, x31, x32, x33, 0, x11 * x41 + x21 * x42, x12 * x41 + x22 * x42, 0, det;
    return a;
  }
  const double t = x11 + x22 - x33;
  const double u = x41 + x31 * x43 / t, v = x42 + x32 * x43 / t;
  a << x11, x12, 0, 0, x21, x22, 0, 0, x31, x32, x33, 0, x11 * u + x21 * v, x12 * u + x22 * v, x43 * det / t, det;
  return a;
}

/// C4, x33 not an eigenvalue of X: clears r = (x31, x32).
inline Mat c4_clear_r(const Mat& d) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1);
  const double x31 = d(2, 0), x32 = d(2, 1), x33 = d(2, 2);
  const double den = x33 * x33 - (x11 + x22) * x33 + detail::det2(d);
  const double p = x11 * x31 + x21 * x32, q = x12 * x31 + x22 * x32;
  Mat a = Mat::Zero(4, 4);
  a << x11, x12, 0, 0, x21, x22, 0, 0, (p * (x22 - x33) - x21 * q) / den, (q * (x11 - x33) - x12 * p) / den, x33, 0,
      0, 0, 0, detail::det2(d);
  return a;
}

/// C4, X = diag(l1, l2), x33 = l1: clears x32.
inline Mat c4_clear_x32_resonant(const Mat& d) {
  const double l1 = d(0, 0), l2 = d(1, 1);
  Mat a = Mat::Zero(4, 4);
  a.diagonal() << l1, l2, l1, l1 * l2;
  a(2, 1) = l1 * d(2, 1) / (l1 - l2);
  return a;
}

/// C4, X = diag(l1, l2), x33 = l2: clears x31.
inline Mat c4_clear_x31_resonant(const Mat& d) {
  const double l1 = d(0, 0), l2 = d(1, 1);
  Mat a = Mat::Zero(4, 4);
  a.diagonal() << l1, l2, l1, l1 * l2;
  a(2, 0) = l1 * d(2, 0) / (l2 - l1);
  return a;
}

/// C4, X = diag(l1, l2), r = (x31, 0): x31 -> 1.
inline Mat c4_unit_x31_diag(const Mat& d) {
  const double l1 = d(0, 0), l2 = d(1, 1);
  return Vec((Vec(4) << l1, l2, l1 / d(2, 0), l1 * l2).finished()).asDiagonal();
}

/// C4, X = diag(l1, l2), r = (0, x32): x32 -> 1.
inline Mat c4_unit_x32_diag(const Mat& d) {
  const double l1 = d(0, 0), l2 = d(1, 1);
  return Vec((Vec(4) << l1, l2, l2 / d(2, 1), l1 * l2).finished()).asDiagonal();
}

/// C4, X = [[a, -b], [b, a]], r = (x31, 0): x31 -> 1.
inline Mat c4_unit_x31_complex(const Mat& d) {
  Mat a = Mat::Identity(4, 4);
  a(2, 1) = (1 - d(2, 0)) / d(1, 0);
  return a;
}

/// C4, X = [[a, -b], [b, a]], r = (0, x32): x32 -> 1.
inline Mat c4_unit_x32_complex(const Mat& d) {
  Mat a = Mat::Identity(4, 4);
  a(2, 0) = (d(2, 1) - 1) / d(1, 0);
  return a;
}

/// C4, X = [[l, 1], [0, l]], r = (x31, 0): x31 -> 1.
inline Mat c4_unit_x31_jordan(const Mat& d) {
  return Vec((Vec(4) << 1, 1, 1 / d(2, 0), 1).finished()).asDiagonal();
}

/// C4, X = [[l, 1], [0, l]], r = (0, x32): x32 -> 1.
inline Mat c4_unit_x32_jordan(const Mat& d) {
  return Vec((Vec(4) << 1, 1, 1 / d(2, 1), 1).finished()).asDiagonal();
}

/// C4, X = [[l, 1], [0, l]], r = (x31, x32) both nonzero: r -> (1, 1).
inline Mat c4_unit_r_jordan(const Mat& d) {
  Mat a = Mat::Identity(4, 4);
  a(0, 1) = d(2, 1) / d(2, 0) - 1;
  a(2, 2) = 1 / d(2, 0);
  return a;
}

/// C4, x33 = tr X: clears r and row 4 left of x43.
inline Mat c4_type2_clear(const Mat& d) {
  const double x11 = d(0, 0), x12 = d(0, 1), x21 = d(1, 0), x22 = d(1, 1);
  const double x31 = d(2, 0), x32 = d(2, 1), x41 = d(3, 0), x42 = d(3, 1), x43 = d(3, 2);
  const double det = detail::det2(d);
  const double y1 = (x11 * x31 + x21 * x32) / det, y2 = (x12 * x31 + x22 * x32) / det;
  const double u = x41 - x43 * y1, v = x42 - x43 * y2;
  Mat a = Mat::Identity(4, 4);
  a(2, 0) = y1;
  a(2, 1) = y2;
  a(3, 0) = (x11 * u + x21 * v) / det;
  a(3, 1) = (x12 * u + x22 * v) / det;
  return a;
}

/// Least-squares s with s (X - c I) = -r, dropping directions where X - c I is
/// singular (relative threshold 1e-8). The leftover r + s (X - c I) is the
/// part no unipotent row operation can remove.
inline Vec solve_row(const Mat& X, double c, const Vec& r) {
  const int n = static_cast<int>(X.rows());
  Mat m = (X - c * Mat::Identity(n, n)).transpose();
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(m);
  cod.setThreshold(1e-8);
  cod.compute(m);
  return cod.solve(Vec(-r));
}

/// I + e_row s^T over the first s.size() columns.
inline Mat row_shear(int n, int row, const Vec& s) {
  Mat a = Mat::Identity(n, n);
  for (int j = 0; j < s.size(); ++j) a(row, j) = s(j);
  return a;
}

}  // namespace curvlie::reduce
