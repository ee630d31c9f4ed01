#pragma once

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curvlie/catalog.hpp"
#include "curvlie/extension.hpp"
#include "curvlie/jordan.hpp"
#include "curvlie/reductions.hpp"

namespace curvlie {

/// One conjugation of the trail: target = scale * p * source * p^{-1}.
struct TrailStep {
  std::string label;
  std::string method;  ///< "closed form", "solved" or "scaling"
  Mat p;
  double scale = 1.0;
  Mat source;
  Mat target;
  bool automorphism = true;
  double residual = 0;  ///< max |target p - scale p source|
};

struct CanonicalForm {
  Family family = Family::F4A1;
  Params params;
  NilType nil = NilType::A3;
  Mat derivation;  ///< the family derivation reached by the trail
  std::vector<TrailStep> trail;
  std::vector<std::string> notes;
  Mat adapted_basis;  ///< classify only: columns span g' in the adapted order
  Vec witness_A;      ///< classify only

  const std::string& tag() const { return family_info(family).tag; }
};

inline MetricAlgebra catalog_instantiate(const CanonicalForm& f, const ToleranceConfig& tc = {}) {
  return catalog_instantiate(f.family, f.params, tc);
}

/// Three-way comparison against the tie band [tol*s, 1e3*tol*s].
enum class Cmp { Equal, Distinct, Indeterminate };

inline Cmp compare(double a, double b, double s, const ToleranceConfig& tc) {
  const double d = std::abs(a - b);
  if (d <= tc.tol_struct * s) return Cmp::Equal;
  if (d > 1e3 * tc.tol_struct * s) return Cmp::Distinct;
  return Cmp::Indeterminate;
}

namespace detail {

inline Cmp decide(double a, double b, double s, const ToleranceConfig& tc, const std::string& what,
                  std::vector<std::string> candidates) {
  Cmp c = compare(a, b, s, tc);
  if (c == Cmp::Indeterminate) throw IndeterminateError(what + " lies in the tie band", std::move(candidates));
  return c;
}

/// Eigen-structure of a real 2x2 block.
struct Kind2 {
  enum K { Distinct, Scalar, Jordan, Complex } k;
  double lo = 0;  ///< smaller eigenvalue, or the real part
  double hi = 0;  ///< larger eigenvalue, or the imaginary part (> 0)
};

inline Kind2 kind_2x2(const Mat& X, const ToleranceConfig& tc, const std::string& where) {
  const double s = std::max(max_abs(X), 1e-300);
  const double tr = X.trace(), det = X(0, 0) * X(1, 1) - X(0, 1) * X(1, 0);
  const double disc = (X(0, 0) - X(1, 1)) * (X(0, 0) - X(1, 1)) + 4 * X(0, 1) * X(1, 0);
  Cmp c = decide(disc, 0.0, s * s, tc, where + ": discriminant",
                 {"distinct eigenvalues", "repeated eigenvalue", "complex pair"});
  if (c == Cmp::Equal) {
    const double h = 0.5 * tr;
    Cmp sc = decide(max_abs(Mat(X - h * Mat::Identity(2, 2))), 0.0, s, tc, where + ": nilpotent part",
                    {"scalar", "Jordan block"});
    return {sc == Cmp::Equal ? Kind2::Scalar : Kind2::Jordan, h, h};
  }
  if (disc > 0) {
    const double q = 0.5 * (tr + (tr >= 0 ? 1 : -1) * std::sqrt(disc));
    double a = q, b = det / q;
    if (a > b) std::swap(a, b);
    return {Kind2::Distinct, a, b};
  }
  return {Kind2::Complex, 0.5 * tr, 0.5 * std::sqrt(-disc)};
}

/// Entries of g allowed to be nonzero in an intertwiner search.
using Pattern = std::vector<std::pair<int, int>>;

inline Pattern full_pattern(int n) {
  Pattern p;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.emplace_back(i, j);
  return p;
}

/// Invertible g supported on `pat` with lambda D g = g T, or throws.
inline Mat intertwiner(const Mat& D, const Mat& T, double lambda, const Pattern& pat, const std::string& where) {
  const int n = static_cast<int>(D.rows());
  const int k = static_cast<int>(pat.size());
  Mat sys = Mat::Zero(n * n, k);
  for (int c = 0; c < k; ++c) {
    Mat g = Mat::Zero(n, n);
    g(pat[c].first, pat[c].second) = 1;
    Mat r = lambda * D * g - g * T;
    sys.col(c) = Eigen::Map<const Vec>(r.data(), n * n);
  }
  Mat ns = null_space(sys, 1e-7, 1e-7 * std::max(1.0, max_abs(T)));
  if (ns.cols() == 0) throw InternalError(where + ": no conjugating map to the normal form");
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> nd;
  Mat best;
  double best_cond = 0;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Vec coef(ns.cols());
    for (int i = 0; i < coef.size(); ++i) coef(i) = nd(rng);
    Vec flat = ns * coef;
    Mat g = Mat::Zero(n, n);
    for (int c = 0; c < k; ++c) g(pat[c].first, pat[c].second) = flat(c);
    const double cond = condition_number(g);
    if (best.size() == 0 || cond < best_cond) {
      best = g;
      best_cond = cond;
    }
    if (best_cond < 1e4) break;
  }
  if (!(best_cond < 1e10)) throw InternalError(where + ": conjugating map is singular");
  return best;
}

/// Conjugation bookkeeping shared by the canonicalizers.
class Reducer {
 public:
  Reducer(NilType t, Mat d, const ToleranceConfig& tc) : nil_(nil_algebra(t)), d_(std::move(d)), tc_(tc) {}

  const Mat& d() const { return d_; }
  double s() const { return std::max(max_abs(d_), 1e-300); }
  std::vector<TrailStep>& trail() { return trail_; }

  void apply(const std::string& label, const std::string& method, const Mat& p, double scale = 1.0) {
    TrailStep st;
    st.label = label;
    st.method = method;
    st.p = p;
    st.scale = scale;
    st.source = d_;
    Eigen::FullPivLU<Mat> lu(p);
    if (!lu.isInvertible()) throw InternalError(label + ": singular conjugating matrix");
    st.target = scale * p * d_ * lu.inverse();
    st.residual = max_abs(Mat(st.target * p - scale * p * d_));
    st.automorphism = is_automorphism(nil_, p, tc_);
    if (!st.automorphism) throw InternalError(label + ": emitted matrix is not an automorphism");
    d_ = st.target;
    trail_.push_back(std::move(st));
  }

  void rescale(const std::string& label, double scale) {
    apply(label, "scaling", Mat::Identity(d_.rows(), d_.cols()), scale);
  }

  /// Tries the closed-form matrix and keeps it when the entries in `zeros`
  /// vanish afterwards; otherwise uses the solved matrix.
  void apply_checked(const std::string& label, const Mat& closed, const std::function<Mat()>& solved,
                     const Pattern& zeros) {
    if (closed.allFinite() && Eigen::FullPivLU<Mat>(closed).isInvertible() && is_automorphism(nil_, closed, tc_)) {
      Mat t = closed * d_ * closed.inverse();
      double worst = 0;
      for (auto [i, j] : zeros) worst = std::max(worst, std::abs(t(i, j)));
      if (worst <= tc_.tol_struct * s()) {
        apply(label, "closed form", closed);
        return;
      }
    }
    apply(label, "solved", solved());
  }

  void zero_out(const Pattern& zeros) {
    for (auto [i, j] : zeros)
      if (std::abs(d_(i, j)) <= 1e3 * tc_.tol_struct * s()) d_(i, j) = 0.0;
  }

 private:
  LieAlgebra nil_;
  Mat d_;
  ToleranceConfig tc_;
  std::vector<TrailStep> trail_;
};

inline void require_derivation(NilType t, const Mat& d, const ToleranceConfig& tc, const char* who) {
  const int n = t == NilType::A3 || t == NilType::H3 ? 3 : 4;
  if (d.rows() != n || d.cols() != n) throw InputError(std::string(who) + ": derivation has wrong size");
  if (!d.allFinite()) throw InputError(std::string(who) + ": non-finite entry");
  if (!is_derivation(nil_algebra(t), d, tc).ok) throw PreconditionError(std::string(who) + ": not a derivation");
  if (!in_delta_plus(nil_algebra(t), d, tc))
    throw PreconditionError(std::string(who) + ": some eigenvalue has non-positive real part");
}

inline void require_zero(const Mat& d, const Pattern& zeros, const ToleranceConfig& tc, const char* who) {
  const double s = std::max(max_abs(d), 1e-300);
  for (auto [i, j] : zeros)
    if (std::abs(d(i, j)) > tc.tol_struct * s)
      throw PreconditionError(std::string(who) + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") must vanish");
}

/// Final conjugation onto the family derivation and the consistency checks. An
/// empty pattern means the current matrix already is the family derivation up
/// to the factor lambda.
inline CanonicalForm finish(Reducer& R, NilType nil, Family f, Params params, double lambda, const Pattern& pat,
                            const ToleranceConfig& tc, const std::function<void(Mat&)>& fix = {}) {
  const Mat T = catalog_derivation(f, params);
  if (!pat.empty()) {
    Mat g = intertwiner(R.d(), T, lambda, pat, family_info(f).tag);
    if (fix) fix(g);
    R.apply("normalize to " + family_info(f).tag, "solved", g.inverse(), lambda);
  } else if (lambda != 1.0) {
    R.rescale("normalize to " + family_info(f).tag, lambda);
  }
  const double dev = max_abs(Mat(R.d() - T));
  if (dev > 1e-7 * std::max(1.0, max_abs(T)))
    throw InternalError("canonical form mismatch for " + family_info(f).tag + " (deviation " + std::to_string(dev) +
                        ")");
  if (!in_canonical_range(f, params, 1e-9))
    throw InternalError("parameters outside the canonical range of " + family_info(f).tag);
  CanonicalForm out;
  out.family = f;
  out.params = std::move(params);
  out.nil = nil;
  out.derivation = T;
  out.trail = std::move(R.trail());
  return out;
}

/// Rescales a block-diagonal g = diag(h, y33[, y44]) so that the last diagonal
/// entry equals det h, as automorphisms of H3 and C4 require.
inline void fix_det(Mat& g) {
  const int n = static_cast<int>(g.rows());
  const double dh = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  g *= g(n - 1, n - 1) / dh;
}

inline Pattern block_pattern(int n) {
  Pattern p = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int i = 2; i < n; ++i) p.emplace_back(i, i);
  return p;
}

}  // namespace detail

/// Normal form of a derivation of abelian R^3 or R^4 with eigenvalues in the
/// open right half plane.
inline CanonicalForm canonicalize_abelian(const Mat& d, const ToleranceConfig& tc = {}) {
  using namespace detail;
  const int n = static_cast<int>(d.rows());
  if (n != 3 && n != 4) throw InputError("canonicalize_abelian: dimension must be 3 or 4");
  const NilType nil = n == 3 ? NilType::A3 : NilType::A4;
  require_derivation(nil, d, tc, "canonicalize_abelian");
  auto jf = real_jordan_form(d, tc);
  std::vector<double> reals;
  std::vector<JordanBlock> jordans, complexes;
  for (const auto& b : jf.blocks) {
    if (b.im == 0 && b.size == 1)
      reals.push_back(b.re);
    else if (b.im == 0)
      jordans.push_back(b);
    else
      complexes.push_back(b);
  }
  std::sort(reals.begin(), reals.end());
  Family f;
  Params p;
  double ref = 1;
  const double s = std::max(max_abs(d), 1e-300);
  if (n == 3) {
    if (reals.size() == 3) {
      f = Family::F4A1;
      ref = reals[2];
      p = {reals[0] / ref, reals[1] / ref};
    } else if (jordans.size() == 1 && jordans[0].size == 2) {
      f = Family::F4A2;
      ref = jordans[0].re;
      p = {reals.at(0) / ref};
    } else if (jordans.size() == 1) {
      f = Family::F4A3;
      ref = jordans[0].re;
    } else {
      f = Family::F4A4;
      ref = reals.at(0);
      p = {complexes.at(0).re / ref, complexes.at(0).im / ref};
    }
  } else {
    if (reals.size() == 4) {
      f = Family::F5A1;
      ref = reals[3];
      p = {reals[0] / ref, reals[1] / ref, reals[2] / ref};
    } else if (jordans.size() == 1 && jordans[0].size == 2 && reals.size() == 2) {
      f = Family::F5A2;
      ref = jordans[0].re;
      p = {reals[0] / ref, reals[1] / ref};
    } else if (complexes.size() == 1 && complexes[0].size == 1 && reals.size() == 2) {
      f = Family::F5A3;
      ref = complexes[0].re;
      p = {reals[0] / ref, reals[1] / ref, complexes[0].im / ref};
    } else if (jordans.size() == 1 && jordans[0].size == 3) {
      f = Family::F5A4;
      ref = jordans[0].re;
      p = {reals.at(0) / ref};
    } else if (jordans.size() == 2) {
      f = Family::F5A5;
      const double a = std::min(jordans[0].re, jordans[1].re), b = std::max(jordans[0].re, jordans[1].re);
      ref = b;
      p = {a / b};
    } else if (jordans.size() == 1 && complexes.size() == 1) {
      f = Family::F5A6;
      ref = complexes[0].re;
      p = {jordans[0].re / ref, complexes[0].im / ref};
    } else if (complexes.size() == 2) {
      f = Family::F5A7;
      JordanBlock u = complexes[0], v = complexes[1];
      Cmp c = decide(u.re, v.re, s, tc, "canonicalize_abelian: real parts of the two complex pairs",
                     {"5A7 with alpha < 1", "5A7 with alpha = 1"});
      if (c == Cmp::Equal) {
        ref = 0.5 * (u.re + v.re);
        p = {1.0, std::min(u.im, v.im) / ref, std::max(u.im, v.im) / ref};
      } else {
        if (u.re > v.re) std::swap(u, v);
        ref = v.re;
        p = {u.re / ref, u.im / ref, v.im / ref};
      }
    } else if (jordans.size() == 1 && jordans[0].size == 4) {
      f = Family::F5A8;
      ref = jordans[0].re;
    } else if (complexes.size() == 1 && complexes[0].size == 2) {
      f = Family::F5A9;
      ref = complexes[0].re;
      p = {complexes[0].im / ref, complexes[0].im / ref};
    } else {
      throw InternalError("canonicalize_abelian: unexpected Jordan structure");
    }
  }
  Reducer R(nil, d, tc);
  return finish(R, nil, f, p, 1.0 / ref, full_pattern(n), tc);
}

/// Normal form of a derivation [[X, 0], [r, tr X]] of H3.
inline CanonicalForm canonicalize_heisenberg3(const Mat& d, const ToleranceConfig& tc = {}) {
  using namespace detail;
  require_derivation(NilType::H3, d, tc, "canonicalize_heisenberg3");
  require_zero(d, {{0, 2}, {1, 2}}, tc, "canonicalize_heisenberg3");
  const double tr = d(0, 0) + d(1, 1);
  if (!(tr > tc.tol_eig)) throw PreconditionError("canonicalize_heisenberg3: trace of the 2x2 block must be positive");
  Reducer R(NilType::H3, d, tc);
  R.rescale("scale trace of X to 1", 1.0 / tr);
  R.apply_checked(
      "clear row 3", reduce::h3_clear_row(R.d()),
      [&] {
        return reduce::row_shear(3, 2, reduce::solve_row(R.d().topLeftCorner(2, 2), R.d()(2, 2), R.d().block(2, 0, 1, 2).transpose()));
      },
      {{2, 0}, {2, 1}});
  R.zero_out({{2, 0}, {2, 1}});
  Kind2 k = kind_2x2(R.d().topLeftCorner(2, 2), tc, "canonicalize_heisenberg3");
  Family f;
  Params p;
  switch (k.k) {
    case Kind2::Distinct:
      f = Family::F4B1;
      p = {k.lo};
      break;
    case Kind2::Scalar:
      f = Family::F4B1;
      p = {0.5};
      break;
    case Kind2::Jordan: f = Family::F4B2; break;
    case Kind2::Complex:
      f = Family::F4B3;
      p = {k.hi};
      break;
  }
  return finish(R, NilType::H3, f, p, 1.0, block_pattern(3), tc, fix_det);
}

/// Normal form of a derivation of the filiform algebra B4.
inline CanonicalForm canonicalize_dim5_B(const Mat& d, const ToleranceConfig& tc = {}) {
  using namespace detail;
  require_derivation(NilType::B4, d, tc, "canonicalize_dim5_B");
  require_zero(d, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, tc, "canonicalize_dim5_B");
  if (!(d(0, 0) > tc.tol_eig)) throw PreconditionError("canonicalize_dim5_B: x11 must be positive");
  Reducer R(NilType::B4, d, tc);
  R.rescale("scale x11 to 1", 1.0 / d(0, 0));
  R.apply_checked(
      "clear row 3", reduce::b4_clear_row3(R.d()),
      [&] {
        Mat D = R.d();
        Mat a = reduce::row_shear(4, 2, reduce::solve_row(D.topLeftCorner(2, 2), D(2, 2), D.block(2, 0, 1, 2).transpose()));
        return a;
      },
      {{2, 0}, {2, 1}, {3, 2}});
  R.zero_out({{2, 0}, {2, 1}, {3, 2}});
  R.apply_checked(
      "clear row 4", reduce::b4_clear_row4(R.d()),
      [&] {
        Mat D = R.d();
        return reduce::row_shear(4, 3, reduce::solve_row(D.topLeftCorner(2, 2), D(3, 3), D.block(3, 0, 1, 2).transpose()));
      },
      {{3, 0}, {3, 1}});
  R.zero_out({{3, 0}, {3, 1}});
  const double x = R.d()(1, 1);
  Cmp c = decide(x, 1.0, R.s(), tc, "canonicalize_dim5_B: x22 against x11", {"5B1", "5B2"});
  if (c == Cmp::Distinct) {
    R.apply("clear x21", "closed form", reduce::b4_clear_x21(R.d()));
    R.zero_out({{1, 0}});
    return finish(R, NilType::B4, Family::F5B1, {x}, 1.0, {}, tc);
  }
  Cmp z = decide(R.d()(1, 0), 0.0, R.s(), tc, "canonicalize_dim5_B: x21", {"5B1 with x = 1", "5B2"});
  if (z == Cmp::Equal) {
    R.zero_out({{1, 0}});
    return finish(R, NilType::B4, Family::F5B1, {1.0}, 1.0, {}, tc);
  }
  const double t = 1.0 / R.d()(1, 0);
  R.apply("scale x21 to 1", "closed form", Vec((Vec(4) << 1, t, t, t).finished()).asDiagonal());
  return finish(R, NilType::B4, Family::F5B2, {}, 1.0, {}, tc);
}

/// Normal form of a derivation of H3 + R (form [[X,0,0],[r,x33,0],[y,x43,tr X]]).
inline CanonicalForm canonicalize_dim5_C(const Mat& d, const ToleranceConfig& tc = {}) {
  using namespace detail;
  using reduce::solve_row;
  require_derivation(NilType::C4, d, tc, "canonicalize_dim5_C");
  require_zero(d, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, tc, "canonicalize_dim5_C");
  const double tr0 = d(0, 0) + d(1, 1);
  if (!(tr0 > tc.tol_eig)) throw PreconditionError("canonicalize_dim5_C: trace of X must be positive");
  Reducer R(NilType::C4, d, tc);
  R.rescale("scale trace of X to 1", 1.0 / tr0);
  const Pattern pat = block_pattern(4);
  auto X = [&] { return Mat(R.d().topLeftCorner(2, 2)); };
  auto r = [&] { return Vec(R.d().block(2, 0, 1, 2).transpose()); };

  Cmp c33 = decide(R.d()(2, 2), 1.0, R.s(), tc, "canonicalize_dim5_C: x33 against tr X",
                   {"x33 != tr X branch", "x33 = tr X branch"});
  Cmp c43 = decide(R.d()(3, 2), 0.0, R.s(), tc, "canonicalize_dim5_C: x43", {"x43 = 0 branch", "x43 != 0 branch"});

  if (c33 == Cmp::Equal && c43 == Cmp::Distinct) {
    R.apply_checked(
        "clear rows 3 and 4", reduce::c4_type2_clear(R.d()),
        [&] {
          Mat D = R.d();
          Vec s3 = solve_row(X(), D(2, 2), r());
          Mat a = reduce::row_shear(4, 2, s3);
          Mat D1 = a * D * a.inverse();
          Vec y = D1.block(3, 0, 1, 2).transpose();
          Mat b = reduce::row_shear(4, 3, solve_row(X(), D1(3, 3), y));
          return Mat(b * a);
        },
        {{2, 0}, {2, 1}, {3, 0}, {3, 1}});
    R.zero_out({{2, 0}, {2, 1}, {3, 0}, {3, 1}});
    R.apply("scale x43 to 1", "closed form", Vec((Vec(4) << 1, 1, R.d()(3, 2), 1).finished()).asDiagonal());
    Kind2 k = kind_2x2(X(), tc, "canonicalize_dim5_C");
    switch (k.k) {
      case Kind2::Distinct:
        return finish(R, NilType::C4, Family::F5C11, {k.hi / k.lo}, 1.0 / k.lo, pat, tc, fix_det);
      case Kind2::Scalar: return finish(R, NilType::C4, Family::F5C11, {1.0}, 1.0 / k.lo, pat, tc, fix_det);
      case Kind2::Jordan: return finish(R, NilType::C4, Family::F5C12, {}, 1.0, pat, tc, fix_det);
      case Kind2::Complex: return finish(R, NilType::C4, Family::F5C13, {k.hi}, 1.0, pat, tc, fix_det);
    }
  }

  R.apply_checked(
      "clear row 4", reduce::c4_clear_row4(R.d(), c43 == Cmp::Equal),
      [&] {
        Mat D = R.d();
        Mat a = Mat::Identity(4, 4);
        // [y, x43] + s (D_3x3 - tr I) = 0 over the first three columns
        Mat M = D.topLeftCorner(3, 3);
        Vec y = D.block(3, 0, 1, 3).transpose();
        Vec s = solve_row(M, D(3, 3), y);
        for (int j = 0; j < 3; ++j) a(3, j) = s(j);
        return a;
      },
      {{3, 0}, {3, 1}, {3, 2}});
  R.zero_out({{3, 0}, {3, 1}, {3, 2}});

  Kind2 k = kind_2x2(X(), tc, "canonicalize_dim5_C");
  const double x33 = R.d()(2, 2);
  const double s = R.s();
  auto lift = [&](const Mat& target_x, const std::string& label) {
    Mat g = intertwiner(X(), target_x, 1.0, full_pattern(2), label);
    Mat h = g.inverse();
    Mat a = Mat::Identity(4, 4);
    a.topLeftCorner(2, 2) = h;
    a(3, 3) = h.determinant();
    R.apply(label, "solved", a);
  };
  auto clear_r_generic = [&] {
    R.apply_checked(
        "clear row 3", reduce::c4_clear_r(R.d()),
        [&] { return reduce::row_shear(4, 2, solve_row(X(), R.d()(2, 2), r())); }, {{2, 0}, {2, 1}});
    R.zero_out({{2, 0}, {2, 1}});
  };

  switch (k.k) {
    case Kind2::Complex: {
      lift((Mat(2, 2) << k.lo, -k.hi, k.hi, k.lo).finished(), "rotation-scaling form of X");
      clear_r_generic();
      return finish(R, NilType::C4, Family::F5C3, {x33 / k.lo, k.hi / k.lo}, 1.0 / k.lo, pat, tc, fix_det);
    }
    case Kind2::Jordan: {
      const double l = k.lo;
      lift((Mat(2, 2) << l, 1, 0, l).finished(), "Jordan form of X");
      Cmp res = decide(x33, l, s, tc, "canonicalize_dim5_C: x33 against the eigenvalue of X", {"5C2", "5C2 or 5C8"});
      if (res == Cmp::Distinct) {
        clear_r_generic();
        return finish(R, NilType::C4, Family::F5C2, {x33 / l}, 1.0 / l, pat, tc, fix_det);
      }
      R.apply("clear x32", "solved", reduce::row_shear(4, 2, solve_row(X(), R.d()(2, 2), r())));
      R.zero_out({{2, 1}});
      Cmp z = decide(R.d()(2, 0), 0.0, s, tc, "canonicalize_dim5_C: x31", {"5C2 with x = 1", "5C8"});
      if (z == Cmp::Equal) {
        R.zero_out({{2, 0}});
        return finish(R, NilType::C4, Family::F5C2, {1.0}, 1.0 / l, pat, tc, fix_det);
      }
      R.apply("scale x31 to 1", "closed form", reduce::c4_unit_x31_jordan(R.d()));
      return finish(R, NilType::C4, Family::F5C8, {}, 1.0 / l, pat, tc, fix_det);
    }
    case Kind2::Scalar: {
      const double l = k.lo;
      Cmp res = decide(x33, l, s, tc, "canonicalize_dim5_C: x33 against the eigenvalue of X", {"5C1", "5C4"});
      if (res == Cmp::Distinct) {
        clear_r_generic();
        return finish(R, NilType::C4, Family::F5C1, {1.0, x33 / l}, 1.0 / l, pat, tc, fix_det);
      }
      const Vec rv = r();
      Cmp z = decide(rv.norm(), 0.0, s, tc, "canonicalize_dim5_C: row 3", {"5C1 with x1 = x2 = 1", "5C4 with x = 1"});
      if (z == Cmp::Equal) {
        R.zero_out({{2, 0}, {2, 1}});
        return finish(R, NilType::C4, Family::F5C1, {1.0, 1.0}, 1.0 / l, pat, tc, fix_det);
      }
      // rotate r onto the first axis
      const double nr = rv.norm();
      Mat g(2, 2);
      g << rv(0) / nr, -rv(1) / nr, rv(1) / nr, rv(0) / nr;
      Mat a = Mat::Identity(4, 4);
      a.topLeftCorner(2, 2) = g.inverse();
      a(3, 3) = a.topLeftCorner(2, 2).determinant();
      R.apply("rotate row 3", "closed form", a);
      R.zero_out({{0, 1}, {1, 0}, {2, 1}});
      R.apply("scale x31 to 1", "closed form", reduce::c4_unit_x31_diag(R.d()));
      return finish(R, NilType::C4, Family::F5C4, {1.0}, 1.0 / l, pat, tc, fix_det);
    }
    case Kind2::Distinct: {
      const double la = k.lo, lb = k.hi;
      Cmp ra = decide(x33, la, s, tc, "canonicalize_dim5_C: x33 against the smaller eigenvalue", {"5C1", "5C4"});
      Cmp rb = decide(x33, lb, s, tc, "canonicalize_dim5_C: x33 against the larger eigenvalue", {"5C1", "5C6"});
      if (ra == Cmp::Distinct && rb == Cmp::Distinct) {
        clear_r_generic();
        return finish(R, NilType::C4, Family::F5C1, {la / lb, x33 / lb}, 1.0 / lb, pat, tc, fix_det);
      }
      lift((Mat(2, 2) << la, 0, 0, lb).finished(), "diagonalize X");
      R.zero_out({{0, 1}, {1, 0}});
      if (ra == Cmp::Equal) {
        R.apply_checked(
            "clear x32", reduce::c4_clear_x32_resonant(R.d()),
            [&] { return reduce::row_shear(4, 2, solve_row(X(), R.d()(2, 2), r())); }, {{2, 1}});
        R.zero_out({{2, 1}});
        Cmp z = decide(R.d()(2, 0), 0.0, s, tc, "canonicalize_dim5_C: x31", {"5C1", "5C4"});
        if (z == Cmp::Equal) {
          R.zero_out({{2, 0}});
          return finish(R, NilType::C4, Family::F5C1, {la / lb, la / lb}, 1.0 / lb, pat, tc, fix_det);
        }
        R.apply("scale x31 to 1", "closed form", reduce::c4_unit_x31_diag(R.d()));
        return finish(R, NilType::C4, Family::F5C4, {lb / la}, 1.0 / la, pat, tc, fix_det);
      }
      R.apply_checked(
          "clear x31", reduce::c4_clear_x31_resonant(R.d()),
          [&] { return reduce::row_shear(4, 2, solve_row(X(), R.d()(2, 2), r())); }, {{2, 0}});
      R.zero_out({{2, 0}});
      Cmp z = decide(R.d()(2, 1), 0.0, s, tc, "canonicalize_dim5_C: x32", {"5C1", "5C6"});
      if (z == Cmp::Equal) {
        R.zero_out({{2, 1}});
        return finish(R, NilType::C4, Family::F5C1, {la / lb, 1.0}, 1.0 / lb, pat, tc, fix_det);
      }
      R.apply("scale x32 to 1", "closed form", reduce::c4_unit_x32_diag(R.d()));
      return finish(R, NilType::C4, Family::F5C6, {la / lb}, 1.0 / lb, pat, tc, fix_det);
    }
  }
  throw InternalError("canonicalize_dim5_C: unreachable");
}

/// Isomorphism type of a nilpotent algebra of dimension 3 or 4, and a basis
/// (columns of P) in which it has the standard brackets.
inline std::pair<NilType, Mat> identify_nilpotent(const LieAlgebra& L, const ToleranceConfig& tc = {}) {
  const int n = L.dim();
  if (n != 3 && n != 4) throw InputError("identify_nilpotent: dimension must be 3 or 4");
  auto lcs = lower_central_series(L, tc);
  if (lcs.back().dim() != 0) throw InputError("identify_nilpotent: algebra is not nilpotent");
  const int dd = lcs.size() > 1 ? lcs[1].dim() : 0;
  const int len = static_cast<int>(lcs.size()) - 1;
  NilType t;
  if (n == 3 && dd == 0)
    t = NilType::A3;
  else if (n == 3 && dd == 1 && len == 2)
    t = NilType::H3;
  else if (n == 4 && dd == 0)
    t = NilType::A4;
  else if (n == 4 && dd == 2 && len == 3)
    t = NilType::B4;
  else if (n == 4 && dd == 1 && len == 2)
    t = NilType::C4;
  else
    throw InputError("identify_nilpotent: unsupported nilpotent type");

  Mat P = Mat::Identity(n, n);
  // first basis pair whose bracket is within a factor 2 of the largest one
  auto pivot_pair = [&] {
    double best = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::max(best, L.basis_bracket(i, j).norm());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (L.basis_bracket(i, j).norm() >= 0.5 * best) return std::make_pair(i, j);
    throw InternalError("identify_nilpotent: no nonzero bracket");
  };
  if (t == NilType::H3) {
    auto [i, j] = pivot_pair();
    P.col(0) = Vec::Unit(n, i);
    P.col(1) = Vec::Unit(n, j);
    P.col(2) = L.basis_bracket(i, j);
  } else if (t == NilType::C4) {
    auto [i, j] = pivot_pair();
    Vec f4 = L.basis_bracket(i, j);
    Mat Z = center(L, tc).basis;
    Vec u = f4.normalized();
    Vec f3;
    double best = -1;
    for (int c = 0; c < Z.cols(); ++c) {
      Vec w = Z.col(c) - u * u.dot(Z.col(c));
      if (w.norm() > best) {
        best = w.norm();
        f3 = w.normalized();
      }
    }
    P.col(0) = Vec::Unit(n, i);
    P.col(1) = Vec::Unit(n, j);
    P.col(2) = f3;
    P.col(3) = f4;
  } else if (t == NilType::B4) {
    const Subspace& c2 = lcs[1];
    Subspace cent = centralizer(L, c2.basis, tc);
    if (cent.dim() != 3) throw InternalError("identify_nilpotent: centralizer of C2 must have dimension 3");
    double far = 0;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Unit(n, i);
      far = std::max(far, (e - cent.basis * (cent.basis.transpose() * e)).norm());
    }
    Vec f1;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Unit(n, i);
      if ((e - cent.basis * (cent.basis.transpose() * e)).norm() >= 0.5 * far) {
        f1 = e;
        break;
      }
    }
    Mat comp = cent.basis - c2.basis * (c2.basis.transpose() * cent.basis);
    Eigen::JacobiSVD<Mat> svd(comp, Eigen::ComputeThinU);
    Vec f2 = svd.matrixU().col(0);
    Vec f3 = bracket(L, f1, f2);
    Vec f4 = bracket(L, f1, f3);
    P.col(0) = f1;
    P.col(1) = f2;
    P.col(2) = f3;
    P.col(3) = f4;
  }
  LieAlgebra check = change_basis(L, P);
  LieAlgebra std_alg = nil_algebra(t);
  double dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dev = std::max(dev, max_abs(Vec(check.basis_bracket(i, j) - std_alg.basis_bracket(i, j))));
  if (dev > 1e-8) throw InternalError("identify_nilpotent: adapted basis does not realize the standard brackets");
  return {t, P};
}

/// Full classification of an SNC metric Lie algebra of dimension 4 or 5.
inline CanonicalForm classify(const MetricAlgebra& g, const ToleranceConfig& tc = {}) {
  g.validate(tc);
  if (g.dim() != 4 && g.dim() != 5) throw InputError("classify: dimension must be 4 or 5");
  SncVerdict v = snc_test_auto(g, tc);
  if (!v.is_snc) throw PreconditionError("classify: not an SNC algebra (" + v.reason + ")");
  const Mat& Q = v.derived.basis;
  LieAlgebra nil = restrict_to(g.alg, Q, tc.tol_struct);
  std::pair<NilType, Mat> id;
  try {
    id = identify_nilpotent(nil, tc);
  } catch (const Error& e) {
    throw InternalError(std::string("classify: identify_nilpotent: ") + e.what());
  }
  const Mat B = Q * id.second;
  const Vec A = *v.witness_A;
  Mat D = B.colPivHouseholderQr().solve(Mat(ad(g.alg, A) * B));
  CanonicalForm out;
  try {
    switch (id.first) {
      case NilType::A3:
      case NilType::A4: out = canonicalize_abelian(D, tc); break;
      case NilType::H3: out = canonicalize_heisenberg3(D, tc); break;
      case NilType::B4: out = canonicalize_dim5_B(D, tc); break;
      case NilType::C4: out = canonicalize_dim5_C(D, tc); break;
    }
  } catch (const IndeterminateError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw InternalError(std::string("classify: derivation form: ") + e.what());
  }
  out.adapted_basis = B;
  out.witness_A = A;
  for (const auto& a : printed_aliases(out.family)) out.notes.push_back(a);
  return out;
}

}  // namespace curvlie
