#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "curvlie/errors.hpp"

namespace curvlie {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline bool all_finite(const Mat& m) { return m.allFinite(); }

/// Singular values in descending order.
inline Vec singular_values(const Mat& m) {
  if (m.size() == 0) return Vec();
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

/// Rank with threshold tol * sigma_max; a matrix whose largest singular value
/// is below `abs_floor` counts as zero.
inline int numeric_rank(const Mat& m, double tol, double abs_floor = 1e-300) {
  if (m.size() == 0) return 0;
  Vec s = singular_values(m);
  if (s.size() == 0 || s(0) <= abs_floor) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

/// Orthonormal basis (columns) of the column space.
inline Mat column_space(const Mat& m, double tol, double abs_floor = 1e-300) {
  if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  int r = 0;
  const Vec& s = svd.singularValues();
  if (s.size() > 0 && s(0) > abs_floor)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis (columns) of the null space.
inline Mat null_space(const Mat& m, double tol, double abs_floor = 1e-300) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > abs_floor)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > tol * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
inline Mat orthogonal_complement(const Mat& basis, int n, double tol) {
  if (basis.cols() == 0) return Mat::Identity(n, n);
  return null_space(basis.transpose(), tol);
}

/// 2-norm condition number.
inline double condition_number(const Mat& m) {
  Vec s = singular_values(m);
  if (s.size() == 0) return 1.0;
  double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : INFINITY;
}

/// Closed-form eigenvalues of a real 2x2 matrix.
inline std::vector<cplx> eigenvalues_2x2(const Mat& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double a = m(0, 0) - m(1, 1);
  const double disc = a * a + 4.0 * m(0, 1) * m(1, 0);
  const double h = tr / 2.0;
  if (disc >= 0) {
    const double r = std::sqrt(disc) / 2.0;
    // avoid cancellation for the smaller-magnitude root
    double l1 = h + (h >= 0 ? r : -r);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double l2 = (l1 != 0.0) ? det / l1 : h - (h >= 0 ? r : -r);
    return {cplx(std::min(l1, l2), 0.0), cplx(std::max(l1, l2), 0.0)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {cplx(h, -im), cplx(h, im)};
}

/// All eigenvalues with multiplicity, sorted by (real, imag).
inline std::vector<cplx> eigenvalues(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues: matrix not square");
  if (!m.allFinite()) throw InputError("eigenvalues: non-finite entries");
  std::vector<cplx> out;
  const auto n = m.rows();
  if (n == 0) return out;
  if (n == 1) {
    out.emplace_back(m(0, 0), 0.0);
  } else if (n == 2) {
    out = eigenvalues_2x2(m);
  } else {
    Eigen::EigenSolver<Mat> es(m, false);
    if (es.info() != Eigen::Success) throw ComputationError("eigenvalue iteration did not converge");
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

/// Least-squares coordinates of v in the column basis B.
inline Vec coords_in(const Mat& basis, const Vec& v) {
  if (basis.cols() == 0) return Vec();
  return basis.colPivHouseholderQr().solve(v);
}

}  // namespace curvlie
