#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvlie/metric.hpp"
#include "curvlie/structure.hpp"

namespace curvlie {

/// n(D): the basis of n followed by e_n = A_D, with [A_D, x] = D x.
struct ExpandedAlgebra {
  LieAlgebra nil;
  Mat d;
  LieAlgebra total;
};

/// Builds the bracket table of n(D) without checking that D is a derivation.
inline LieAlgebra expand_unchecked(const LieAlgebra& nil, const Mat& d) {
  const int m = nil.dim();
  if (d.rows() != m || d.cols() != m) throw InputError("expand: derivation has wrong size");
  LieAlgebra t(m + 1);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec v = Vec::Zero(m + 1);
      v.head(m) = nil.basis_bracket(i, j);
      t.set_bracket(i, j, v);
    }
  for (int j = 0; j < m; ++j) {
    Vec v = Vec::Zero(m + 1);
    v.head(m) = d.col(j);
    t.set_bracket(m, j, v);
  }
  return t;
}

inline ExpandedAlgebra expand(const LieAlgebra& nil, const Mat& d, const ToleranceConfig& tc = {}) {
  auto chk = is_derivation(nil, d, tc);
  if (!chk.ok) throw PreconditionError("expand: D is not a derivation (defect " + std::to_string(chk.defect) + ")");
  ExpandedAlgebra e{nil, d, expand_unchecked(nil, d)};
  const double jd = jacobi_defect(e.total);
  if (jd > tc.tol_struct * derivation_scale(nil, d))
    throw InternalError("expand: expanded algebra violates Jacobi");
  return e;
}

struct SncVerdict {
  bool is_snc = false;
  bool codim_ok = false;
  std::optional<Vec> witness_A;
  std::vector<double> eigen_real_parts;  ///< ascending, after the sign flip
  std::vector<cplx> spectrum;            ///< of ad A restricted to g'
  Subspace derived;
  bool flipped = false;
  std::string reason;  ///< empty when is_snc
};

/// Matrix of ad(A) restricted to the ideal with orthonormal basis Q.
inline Mat restricted_ad(const LieAlgebra& g, const Vec& A, const Mat& Q) {
  return Q.transpose() * ad(g, A) * Q;
}

/// Heintze's criterion for a chosen A outside g'.
inline SncVerdict snc_test(const LieAlgebra& g, const Vec& A, const ToleranceConfig& tc = {}) {
  if (A.size() != g.dim()) throw InputError("snc_test: A has wrong dimension");
  SncVerdict v;
  v.derived = derived_subalgebra(g, tc);
  if (v.derived.contains(A, tc.tol_struct)) throw InputError("snc_test: A lies in the derived algebra");
  if (!is_solvable(g, tc)) throw PreconditionError("snc_test: algebra is not solvable");
  v.codim_ok = v.derived.dim() == g.dim() - 1;
  Vec a = A;
  if (v.derived.dim() > 0) {
    v.spectrum = eigenvalues(restricted_ad(g, a, v.derived.basis));
    bool all_neg = true;
    for (const auto& z : v.spectrum)
      if (!(z.real() < -tc.tol_eig)) all_neg = false;
    if (all_neg) {
      a = -a;
      v.flipped = true;
      for (auto& z : v.spectrum) z = -z;
      std::sort(v.spectrum.begin(), v.spectrum.end(),
                [](const cplx& x, const cplx& y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    }
    for (const auto& z : v.spectrum) v.eigen_real_parts.push_back(z.real());
  }
  v.witness_A = a;
  if (!v.codim_ok) {
    v.reason = "codimension";
    return v;
  }
  bool all_pos = true;
  for (double r : v.eigen_real_parts) {
    if (r > -tc.tol_eig && r <= tc.tol_eig)
      throw IndeterminateError("snc_test: eigenvalue real part inside guard band", {"SNC", "not SNC"});
    if (r <= tc.tol_eig) all_pos = false;
  }
  v.is_snc = all_pos;
  if (!all_pos) v.reason = "mixed-sign spectrum";
  return v;
}

/// Picks A spanning the metric orthogonal complement of g' and applies snc_test.
inline SncVerdict snc_test_auto(const MetricAlgebra& g, const ToleranceConfig& tc = {}) {
  g.validate(tc);
  Subspace d = derived_subalgebra(g.alg, tc);
  if (d.dim() != g.dim() - 1) {
    SncVerdict v;
    v.derived = d;
    v.codim_ok = false;
    v.reason = "codimension";
    return v;
  }
  Mat ns = null_space(Mat(d.basis.transpose() * g.gram), tc.tol_struct);
  Vec A = ns.col(0);
  A /= std::sqrt(g.inner(A, A));
  // deterministic orientation before the spectral flip
  int piv = 0;
  A.cwiseAbs().maxCoeff(&piv);
  if (A(piv) < 0) A = -A;
  return snc_test(g.alg, A, tc);
}

/// Witness for D1 = g^{-1} ad(X) g + lambda g^{-1} D2 g.
struct OEquivWitness {
  Mat g;
  Vec x;
  double lambda = 1.0;
};

inline double o_equivalence_residual(const LieAlgebra& nil, const Mat& d1, const Mat& d2, const OEquivWitness& w) {
  Eigen::FullPivLU<Mat> lu(w.g);
  if (!lu.isInvertible()) throw PreconditionError("o_equivalence: g is singular");
  Mat gi = lu.inverse();
  return max_abs(Mat(d1 - gi * ad(nil, w.x) * w.g - w.lambda * gi * d2 * w.g));
}

inline bool o_equivalence_check(const LieAlgebra& nil, const Mat& d1, const Mat& d2, const OEquivWitness& w,
                                const ToleranceConfig& tc = {}) {
  const int n = nil.dim();
  if (d1.rows() != n || d2.rows() != n || w.g.rows() != n || w.x.size() != n)
    throw InputError("o_equivalence: dimension mismatch");
  if (w.lambda == 0.0) throw PreconditionError("o_equivalence: lambda must be nonzero");
  if (!is_automorphism(nil, w.g, tc)) throw PreconditionError("o_equivalence: g is not an automorphism");
  const double s = std::max({1.0, max_abs(d1), std::abs(w.lambda) * max_abs(d2)});
  return o_equivalence_residual(nil, d1, d2, w) <= tc.tol_struct * s;
}

/// Witness for the reverse relation: D2 = g ad(Z) g^{-1} + (1/lambda) g D1 g^{-1}
/// with Z = -(1/lambda) g^{-1} X.
inline OEquivWitness inverse_witness(const OEquivWitness& w) {
  Mat gi = w.g.inverse();
  return {gi, Vec(-(1.0 / w.lambda) * (gi * w.x)), 1.0 / w.lambda};
}

/// [x, y] = l(x) y - l(y) x; every sectional curvature equals -|l|^2.
inline std::pair<LieAlgebra, double> milnor_algebra(const Vec& l) {
  const int n = static_cast<int>(l.size());
  if (n < 2) throw InputError("milnor_algebra: dimension must be at least 2");
  LieAlgebra L(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v = Vec::Zero(n);
      v(j) += l(i);
      v(i) -= l(j);
      L.set_bracket(i, j, v);
    }
  return {L, -l.squaredNorm()};
}

}  // namespace curvlie
