#pragma once

#include "curvlie/lie_algebra.hpp"
#include "curvlie/tolerance.hpp"

namespace curvlie {

/// Lie algebra with an inner product given by its Gram matrix.
struct MetricAlgebra {
  LieAlgebra alg;
  Mat gram;

  MetricAlgebra() = default;
  explicit MetricAlgebra(LieAlgebra a) : alg(std::move(a)), gram(Mat::Identity(alg.dim(), alg.dim())) {}
  MetricAlgebra(LieAlgebra a, Mat g) : alg(std::move(a)), gram(std::move(g)) {}

  int dim() const { return alg.dim(); }

  void validate(const ToleranceConfig& tc = {}) const {
    const int n = alg.dim();
    if (gram.rows() != n || gram.cols() != n) throw InputError("metric: Gram matrix has wrong size");
    if (!gram.allFinite()) throw InputError("metric: non-finite Gram entry");
    if (max_abs(Mat(gram - gram.transpose())) > tc.tol_struct * std::max(1.0, max_abs(gram)))
      throw InputError("metric: Gram matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    if (es.eigenvalues().minCoeff() <= tc.tol_struct) throw InputError("metric: Gram matrix is not positive definite");
  }

  double inner(const Vec& x, const Vec& y) const { return x.dot(gram * y); }
};

/// Gram-Schmidt frame: columns of the returned P are orthonormal for `gram`
/// and P is upper triangular (f_1 is parallel to e_1, ...).
inline Mat orthonormal_frame(const Mat& gram) {
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success) throw InputError("metric: Gram matrix is not positive definite");
  Mat L = llt.matrixL();
  // P = L^{-T} gives P^T G P = I.
  return L.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(gram.rows(), gram.cols()));
}

/// Same metric Lie algebra expressed in an orthonormal basis.
inline MetricAlgebra orthonormalize(const MetricAlgebra& g) {
  Mat P = orthonormal_frame(g.gram);
  return MetricAlgebra(change_basis(g.alg, P));
}

/// Express g in the basis f_a = P e_a; the Gram matrix becomes P^T G P.
inline MetricAlgebra change_basis(const MetricAlgebra& g, const Mat& P) {
  Mat G = P.transpose() * g.gram * P;
  G = 0.5 * (G + G.transpose());
  return MetricAlgebra(change_basis(g.alg, P), G);
}

}  // namespace curvlie
