#pragma once

#include <vector>

#include "curvlie/lie_algebra.hpp"
#include "curvlie/tolerance.hpp"

namespace curvlie {

/// Linear subspace of R^n; columns of `basis` are orthonormal.
struct Subspace {
  int ambient_dim = 0;
  Mat basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  bool contains(const Vec& v, double tol) const {
    if (dim() == 0) return max_abs(v) <= tol;
    Vec r = v - basis * (basis.transpose() * v);
    return max_abs(r) <= tol * std::max(1.0, max_abs(v));
  }
};

inline Subspace whole_space(int n) { return {n, Mat::Identity(n, n)}; }

/// Absolute floor below which bracket spans count as zero.
inline double bracket_floor(const LieAlgebra& L, double tol) { return tol * std::max(L.scale(), 1e-300); }

/// span{[a, b] : a in A, b in B}, both given by basis columns.
inline Subspace bracket_span(const LieAlgebra& L, const Mat& A, const Mat& B, double tol) {
  const int n = L.dim();
  Mat cols(n, A.cols() * B.cols());
  int c = 0;
  for (int i = 0; i < A.cols(); ++i)
    for (int j = 0; j < B.cols(); ++j) cols.col(c++) = bracket(L, A.col(i), B.col(j));
  return {n, column_space(cols, tol, bracket_floor(L, tol))};
}

inline Subspace derived_subalgebra(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  Mat I = Mat::Identity(L.dim(), L.dim());
  return bracket_span(L, I, I, tc.tol_struct);
}

/// g = C1 > C2 = [g, C1] > ... until the dimension stops dropping.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  std::vector<Subspace> out{whole_space(L.dim())};
  Mat I = Mat::Identity(L.dim(), L.dim());
  while (out.back().dim() > 0) {
    Subspace next = bracket_span(L, I, out.back().basis, tc.tol_struct);
    if (next.dim() == out.back().dim()) break;
    out.push_back(next);
  }
  return out;
}

/// g > [g,g] > [g',g'] > ... until the dimension stops dropping.
inline std::vector<Subspace> derived_series(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  std::vector<Subspace> out{whole_space(L.dim())};
  while (out.back().dim() > 0) {
    Subspace next = bracket_span(L, out.back().basis, out.back().basis, tc.tol_struct);
    if (next.dim() == out.back().dim()) break;
    out.push_back(next);
  }
  return out;
}

inline bool is_nilpotent(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  return lower_central_series(L, tc).back().dim() == 0;
}

inline bool is_solvable(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  return derived_series(L, tc).back().dim() == 0;
}

/// {x : [x, s] = 0 for all s in S}.
inline Subspace centralizer(const LieAlgebra& L, const Mat& S, const ToleranceConfig& tc = {}) {
  const int n = L.dim();
  Mat M(n * S.cols(), n);
  for (int s = 0; s < S.cols(); ++s)
    for (int i = 0; i < n; ++i) M.block(s * n, i, n, 1) = bracket(L, Vec::Unit(n, i), S.col(s));
  if (S.cols() == 0 || max_abs(M) <= bracket_floor(L, tc.tol_struct)) return whole_space(n);
  return {n, null_space(M, tc.tol_struct)};
}

inline Subspace center(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  return centralizer(L, Mat::Identity(L.dim(), L.dim()), tc);
}

struct DerivationCheck {
  bool ok = false;
  double defect = 0;
};

/// max over basis pairs of |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|.
inline double derivation_defect(const LieAlgebra& L, const Mat& D) {
  const int n = L.dim();
  if (D.rows() != n || D.cols() != n) throw InputError("derivation check: dimension mismatch");
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec r = D * L.basis_bracket(i, j) - bracket(L, D.col(i), Vec::Unit(n, j)) -
              bracket(L, Vec::Unit(n, i), D.col(j));
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

/// Defects are compared against tol_struct scaled by the magnitudes involved.
inline double derivation_scale(const LieAlgebra& L, const Mat& D) {
  return std::max(1.0, max_abs(D) * L.scale());
}

inline DerivationCheck is_derivation(const LieAlgebra& L, const Mat& D, const ToleranceConfig& tc = {}) {
  DerivationCheck r;
  r.defect = derivation_defect(L, D);
  r.ok = r.defect <= tc.tol_struct * derivation_scale(L, D);
  return r;
}

/// Basis of the derivation algebra: null space of the linear constraint system
/// in the dim^2 unknowns D(k, j) (column-major).
inline std::vector<Mat> derivation_space(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  const int n = L.dim();
  const int unknowns = n * n;
  const int pairs = n * (n - 1) / 2;
  Mat sys = Mat::Zero(std::max(1, pairs * n), unknowns);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec cij = L.basis_bracket(i, j);
      for (int m = 0; m < n; ++m, ++row) {
        // (D[e_i,e_j])_m = sum_k D(m,k) c_ij^k
        for (int k = 0; k < n; ++k) sys(row, m + n * k) += cij(k);
        // ([D e_i, e_j])_m = sum_p D(p,i) c_pj^m
        for (int p = 0; p < n; ++p) sys(row, p + n * i) -= L.c(p, j, m);
        // ([e_i, D e_j])_m = sum_p D(p,j) c_ip^m
        for (int p = 0; p < n; ++p) sys(row, p + n * j) -= L.c(i, p, m);
      }
    }
  Mat ns = null_space(sys, tc.tol_struct, bracket_floor(L, tc.tol_struct));
  std::vector<Mat> out;
  for (int c = 0; c < ns.cols(); ++c) out.push_back(Eigen::Map<const Mat>(ns.col(c).data(), n, n));
  return out;
}

/// True iff every eigenvalue of D has real part > tol_eig. Real parts inside the
/// guard band (-tol_eig, tol_eig] raise IndeterminateError.
inline bool in_delta_plus(const LieAlgebra& L, const Mat& D, const ToleranceConfig& tc = {}) {
  if (!is_derivation(L, D, tc).ok) throw PreconditionError("in_delta_plus: not a derivation");
  bool all_pos = true;
  for (const auto& z : eigenvalues(D)) {
    if (z.real() > -tc.tol_eig && z.real() <= tc.tol_eig)
      throw IndeterminateError("in_delta_plus: eigenvalue real part inside guard band",
                               {"in delta+", "not in delta+"});
    if (z.real() <= tc.tol_eig) all_pos = false;
  }
  return all_pos;
}

/// max over basis pairs of |A[e_i,e_j] - [Ae_i, Ae_j]|.
inline double automorphism_defect(const LieAlgebra& L, const Mat& A) {
  const int n = L.dim();
  if (A.rows() != n || A.cols() != n) throw InputError("automorphism check: dimension mismatch");
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst, max_abs(Vec(A * L.basis_bracket(i, j) - bracket(L, A.col(i), A.col(j)))));
  return worst;
}

inline bool is_automorphism(const LieAlgebra& L, const Mat& A, const ToleranceConfig& tc = {}) {
  if (std::abs(A.determinant()) <= tc.tol_struct) return false;
  const double s = std::max(1.0, max_abs(A) * max_abs(A) * L.scale());
  return automorphism_defect(L, A) <= tc.tol_struct * s;
}

}  // namespace curvlie
