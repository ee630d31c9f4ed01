#pragma once

#include <string>
#include <vector>

#include "curvlie/errors.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

/// Real Lie algebra given by structure constants over a fixed basis.
///
/// Only brackets [e_i, e_j] with i < j are stored; the remaining constants are
/// synthesized by antisymmetry, so c(i,j,k) = -c(j,i,k) holds exactly.
class LieAlgebra {
 public:
  static constexpr int kMaxDim = 8;

  LieAlgebra() = default;
  explicit LieAlgebra(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw InputError("LieAlgebra: dimension must be in 1..8");
    upper_.assign(static_cast<size_t>(dim * (dim - 1) / 2), Vec::Zero(dim));
  }

  /// Build from a full c[i][j][k] table; the strictly-upper part is kept and the
  /// table must be antisymmetric to `tol`.
  static LieAlgebra from_full(int dim, const std::vector<double>& c, double tol = 1e-12) {
    LieAlgebra L(dim);
    if (c.size() != static_cast<size_t>(dim * dim * dim)) throw InputError("from_full: size mismatch");
    auto at = [&](int i, int j, int k) { return c[static_cast<size_t>((i * dim + j) * dim + k)]; };
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          if (std::abs(at(i, j, k) + at(j, i, k)) > tol)
            throw InputError("from_full: constants are not antisymmetric");
        }
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        Vec v(dim);
        for (int k = 0; k < dim; ++k) v(k) = at(i, j, k);
        L.set_bracket(i, j, v);
      }
    return L;
  }

  int dim() const { return dim_; }

  /// Set [e_i, e_j] (0-based). Setting with i > j stores the negated value.
  void set_bracket(int i, int j, const Vec& v) {
    check_index(i);
    check_index(j);
    if (v.size() != dim_) throw InputError("set_bracket: coefficient vector has wrong length");
    if (!v.allFinite()) throw InputError("set_bracket: non-finite coefficient");
    if (i == j) {
      if (max_abs(v) != 0.0) throw InputError("set_bracket: [e_i, e_i] must vanish");
      return;
    }
    if (i < j)
      upper_[slot(i, j)] = v;
    else
      upper_[slot(j, i)] = -v;
  }

  /// [e_i, e_j] as a coordinate vector.
  Vec basis_bracket(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) return Vec::Zero(dim_);
    return i < j ? upper_[slot(i, j)] : Vec(-upper_[slot(j, i)]);
  }

  double c(int i, int j, int k) const {
    if (i == j) return 0.0;
    return i < j ? upper_[slot(i, j)](k) : -upper_[slot(j, i)](k);
  }

  bool is_abelian() const {
    for (const auto& v : upper_)
      if (max_abs(v) != 0.0) return false;
    return true;
  }

  /// Largest absolute structure constant.
  double scale() const {
    double s = 0;
    for (const auto& v : upper_) s = std::max(s, max_abs(v));
    return s;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= dim_) throw InputError("LieAlgebra: basis index out of range");
  }
  size_t slot(int i, int j) const {
    // row-major index of (i, j), i < j, in the strictly upper triangle
    return static_cast<size_t>(i * (2 * dim_ - i - 1) / 2 + (j - i - 1));
  }

  int dim_ = 0;
  std::vector<Vec> upper_;
};

/// [x, y] = sum x_i y_j c[i][j][.]
inline Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y) {
  if (x.size() != L.dim() || y.size() != L.dim()) throw InputError("bracket: dimension mismatch");
  Vec out = Vec::Zero(L.dim());
  for (int i = 0; i < L.dim(); ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < L.dim(); ++j) {
      if (i == j || y(j) == 0.0) continue;
      out += x(i) * y(j) * L.basis_bracket(i, j);
    }
  }
  return out;
}

/// Matrix of ad(x): column j is [x, e_j].
inline Mat ad(const LieAlgebra& L, const Vec& x) {
  if (x.size() != L.dim()) throw InputError("ad: dimension mismatch");
  Mat m = Mat::Zero(L.dim(), L.dim());
  for (int j = 0; j < L.dim(); ++j) m.col(j) = bracket(L, x, Vec::Unit(L.dim(), j));
  return m;
}

/// Max over basis triples of the Jacobi cyclic sum (max-abs component).
inline double jacobi_defect(const LieAlgebra& L) {
  const int n = L.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), ek = Vec::Unit(n, k);
        Vec s = bracket(L, L.basis_bracket(i, j), ek) + bracket(L, L.basis_bracket(j, k), ei) +
                bracket(L, L.basis_bracket(k, i), ej);
        worst = std::max(worst, max_abs(s));
      }
  return worst;
}

/// Structure constants in the basis f_a = P e_a (columns of P).
inline LieAlgebra change_basis(const LieAlgebra& L, const Mat& P) {
  const int n = L.dim();
  if (P.rows() != n || P.cols() != n) throw InputError("change_basis: dimension mismatch");
  Eigen::FullPivLU<Mat> lu(P);
  if (!lu.isInvertible()) throw InputError("change_basis: singular basis change");
  LieAlgebra out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.set_bracket(a, b, lu.solve(bracket(L, P.col(a), P.col(b))));
  return out;
}

/// Algebra on a subspace closed under the bracket; basis given by columns of B.
/// Coordinates below tol * L.scale() are rounding noise and are set to zero.
inline LieAlgebra restrict_to(const LieAlgebra& L, const Mat& B, double tol) {
  const int m = static_cast<int>(B.cols());
  const double floor = tol * L.scale();
  LieAlgebra out(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Vec v = bracket(L, B.col(a), B.col(b));
      Vec c = coords_in(B, v);
      if (max_abs(Vec(B * c - v)) > tol * std::max(1.0, max_abs(v)))
        throw PreconditionError("restrict_to: subspace is not closed under the bracket");
      for (int k = 0; k < m; ++k)
        if (std::abs(c(k)) <= floor) c(k) = 0.0;
      out.set_bracket(a, b, c);
    }
  return out;
}

inline LieAlgebra abelian(int dim) { return LieAlgebra(dim); }

/// [e1,e2]=e3.
inline LieAlgebra heisenberg3() {
  LieAlgebra L(3);
  L.set_bracket(0, 1, Vec::Unit(3, 2));
  return L;
}

/// [e1,e2]=e3, [e1,e3]=e4.
inline LieAlgebra filiform4() {
  LieAlgebra L(4);
  L.set_bracket(0, 1, Vec::Unit(4, 2));
  L.set_bracket(0, 2, Vec::Unit(4, 3));
  return L;
}

/// [e1,e2]=e4 (Heisenberg plus a line).
inline LieAlgebra heisenberg3_plus_line() {
  LieAlgebra L(4);
  L.set_bracket(0, 1, Vec::Unit(4, 3));
  return L;
}

}  // namespace curvlie
