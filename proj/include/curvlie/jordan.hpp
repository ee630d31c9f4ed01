#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "curvlie/linalg.hpp"
#include "curvlie/tolerance.hpp"

namespace curvlie {

/// One real Jordan block: a real eigenvalue (im == 0) with a size x size block,
/// or a complex pair re +- i*im (im > 0) occupying 2*size rows.
struct JordanBlock {
  double re = 0;
  double im = 0;
  int size = 1;
  int rows() const { return im > 0 ? 2 * size : size; }
};

struct RealJordanResult {
  Mat J;
  Mat P;  ///< P^{-1} M P = J
  std::vector<JordanBlock> blocks;
  double residual = 0;  ///< max |M P - P J|
  double cond = 1;
  bool ill_conditioned = false;
  std::string warning;
};

namespace detail {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Relative threshold separating nilpotent couplings from rounding noise.
constexpr double kJordanRankTol = 1e-6;

/// Null space basis with an absolute singular-value threshold.
template <class MS>
MS null_abs(const MS& m, double thr) {
  const int n = static_cast<int>(m.cols());
  Eigen::JacobiSVD<MS> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return svd.matrixV().rightCols(n - r);
}

template <class MS>
int rank_of(const MS& m, double tol, double floor) {
  Eigen::JacobiSVD<MS> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * floor) ++r;
  return r;
}

template <class M>
M mat_pow(const M& a, int k) {
  M r = M::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

struct Cluster {
  double re = 0;
  double im = 0;  // >= 0
  int mult = 0;   // algebraic multiplicity of re + i im
};

/// Single-linkage clustering of the spectrum at threshold t (absolute).
inline std::vector<Cluster> cluster_spectrum(const std::vector<cplx>& ev, double t) {
  std::vector<cplx> upper;
  for (const auto& z : ev) {
    if (std::abs(z.imag()) <= t)
      upper.emplace_back(z.real(), 0.0);
    else if (z.imag() > 0)
      upper.push_back(z);
  }
  const int m = static_cast<int>(upper.size());
  std::vector<int> label(m);
  for (int i = 0; i < m; ++i) label[i] = i;
  auto find = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool ri = upper[i].imag() == 0, rj = upper[j].imag() == 0;
      if (ri != rj) continue;
      if (std::abs(upper[i] - upper[j]) <= t) label[find(i)] = find(j);
    }
  std::vector<Cluster> out;
  std::vector<int> root_index(m, -1);
  std::vector<cplx> sum;
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (root_index[r] < 0) {
      root_index[r] = static_cast<int>(out.size());
      out.push_back({});
      sum.emplace_back(0.0, 0.0);
    }
    int c = root_index[r];
    out[c].mult += 1;
    sum[c] += upper[i];
  }
  for (size_t c = 0; c < out.size(); ++c) {
    out[c].re = sum[c].real() / out[c].mult;
    out[c].im = sum[c].imag() / out[c].mult;
  }
  return out;
}

/// The generalized eigenspace of a cluster must have exactly the clustered dimension.
inline bool cluster_valid(const Mat& M, const Cluster& c, double s, double tol) {
  const int n = static_cast<int>(M.rows());
  if (c.im == 0) {
    Mat N = M - c.re * Mat::Identity(n, n);
    Mat Nm = mat_pow(N, c.mult);
    Vec sv = singular_values(Nm);
    double scale = std::pow(s, c.mult);
    for (int i = n - c.mult; i < n; ++i)
      if (sv(i) > tol * scale) return false;
    return true;
  }
  Mat N = M - c.re * Mat::Identity(n, n);
  Mat Q = N * N + c.im * c.im * Mat::Identity(n, n);
  Mat Qm = mat_pow(Q, c.mult);
  Vec sv = singular_values(Qm);
  double scale = std::pow(s * s, c.mult);
  for (int i = n - 2 * c.mult; i < n; ++i)
    if (sv(i) > tol * scale) return false;
  return true;
}

/// Jordan chains of the eigenvalue with nilpotent part N = M - mu I on its
/// generalized eigenspace (dimension mult); each chain is returned as the
/// column block [N^{k-1} v, ..., N v, v].
template <class MS>
std::vector<MS> jordan_chains(const MS& N, int mult, double s) {
  using VS = Eigen::Matrix<typename MS::Scalar, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(N.rows());
  Eigen::JacobiSVD<MS> wsvd(mat_pow(N, mult), Eigen::ComputeFullV);
  MS W = wsvd.matrixV().rightCols(mult);
  MS Nw = W.adjoint() * N * W;
  auto thr = [&](int k) { return kJordanRankTol * std::pow(s, k); };
  std::vector<int> r(mult + 2, 0);
  r[0] = mult;
  for (int k = 1; k <= mult + 1; ++k) r[k] = rank_of(mat_pow(Nw, k), 1.0, thr(k));
  std::vector<int> at_least(mult + 2, 0);
  for (int k = 1; k <= mult + 1; ++k) at_least[k] = std::max(0, r[k - 1] - r[k]);
  std::vector<MS> chains;
  std::vector<std::pair<VS, int>> tops;
  for (int k = mult; k >= 1; --k) {
    const int need = at_least[k] - at_least[k + 1];
    if (need <= 0) continue;
    MS ker = (k >= mult) ? MS(MS::Identity(mult, mult)) : null_abs(MS(mat_pow(Nw, k)), thr(k));
    std::vector<VS> avoid;
    if (k > 1) {
      MS kp = null_abs(MS(mat_pow(Nw, k - 1)), thr(k - 1));
      for (int c = 0; c < kp.cols(); ++c) avoid.push_back(kp.col(c));
    }
    for (const auto& [v, K] : tops) {
      VS w = v;
      for (int j = 0; j < K - k; ++j) w = Nw * w;
      avoid.push_back(w);
    }
    MS cand = ker;
    if (!avoid.empty()) {
      MS A(mult, static_cast<int>(avoid.size()));
      for (size_t c = 0; c < avoid.size(); ++c) A.col(static_cast<int>(c)) = avoid[c];
      Eigen::JacobiSVD<MS> asvd(A, Eigen::ComputeFullU);
      const auto& sv = asvd.singularValues();
      int ra = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > kJordanRankTol * std::max<double>(sv(0), 1e-300)) ++ra;
      MS Ua = asvd.matrixU().leftCols(ra);
      cand = ker - Ua * (Ua.adjoint() * ker);
    }
    Eigen::JacobiSVD<MS> csvd(cand, Eigen::ComputeFullU);
    for (int c = 0; c < need && c < csvd.matrixU().cols(); ++c) {
      VS v = csvd.matrixU().col(c);
      tops.emplace_back(v, k);
      MS chain(n, k);
      VS w = v;
      for (int j = k - 1; j >= 0; --j) {
        chain.col(j) = W * w;
        w = Nw * w;
      }
      chains.push_back(chain);
    }
  }
  return chains;
}

}  // namespace detail

/// Real Jordan form P^{-1} M P = J. Blocks are ordered by real part, then
/// |imaginary part|, then block size; real blocks are upper triangular with 1 on
/// the superdiagonal, complex blocks are [[a,-b],[b,a]] (b > 0) with identity
/// superdiagonal blocks.
inline RealJordanResult real_jordan_form(const Mat& M, const ToleranceConfig& tc = {}) {
  using namespace detail;
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw InputError("real_jordan_form: matrix not square");
  if (n > 8) throw InputError("real_jordan_form: dimension above 8");
  RealJordanResult res;
  if (n == 0) return res;
  auto ev = eigenvalues(M);
  const double s = std::max(singular_values(M)(0), 1e-300);
  // Cluster radii follow the spectral radius: for strongly non-normal M the
  // norm can exceed every eigenvalue by orders of magnitude.
  double rho = 0;
  for (const auto& z : ev) rho = std::max(rho, std::abs(z));
  const double radius = rho > 1e-8 * s ? rho : s;

  static const double ladder[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11};
  std::vector<Cluster> clusters;
  bool found = false;
  for (double t : ladder) {
    auto cl = cluster_spectrum(ev, t * radius);
    bool ok = true;
    for (const auto& c : cl)
      if (!cluster_valid(M, c, s, tc.tol_struct)) {
        ok = false;
        break;
      }
    if (ok) {
      clusters = cl;
      found = true;
      break;
    }
  }
  if (!found) clusters = cluster_spectrum(ev, 0.0);

  struct Built {
    JordanBlock b;
    Mat cols;
  };
  std::vector<Built> built;
  for (const auto& c : clusters) {
    if (c.im == 0) {
      Mat N = M - c.re * Mat::Identity(n, n);
      for (const auto& ch : jordan_chains(N, c.mult, s)) built.push_back({{c.re, 0.0, static_cast<int>(ch.cols())}, ch});
      continue;
    }
    CMat N = M.cast<cplx>() - cplx(c.re, c.im) * CMat::Identity(n, n);
    for (const auto& ch : jordan_chains(N, c.mult, s)) {
      const int k = static_cast<int>(ch.cols());
      Built b;
      b.b = {c.re, c.im, k};
      b.cols.resize(n, 2 * k);
      for (int j = 0; j < k; ++j) {
        b.cols.col(2 * j) = ch.col(j).real();
        b.cols.col(2 * j + 1) = -ch.col(j).imag();
      }
      built.push_back(b);
    }
  }
  std::stable_sort(built.begin(), built.end(), [](const Built& a, const Built& b) {
    if (a.b.re != b.b.re) return a.b.re < b.b.re;
    if (a.b.im != b.b.im) return a.b.im < b.b.im;
    return a.b.size < b.b.size;
  });
  res.P = Mat::Zero(n, n);
  res.J = Mat::Zero(n, n);
  int at = 0;
  for (const auto& b : built) {
    const int r = b.b.rows();
    if (at + r > n) break;
    res.P.block(0, at, n, r) = b.cols;
    if (b.b.im == 0) {
      for (int j = 0; j < r; ++j) {
        res.J(at + j, at + j) = b.b.re;
        if (j > 0) res.J(at + j - 1, at + j) = 1.0;
      }
    } else {
      for (int j = 0; j < b.b.size; ++j) {
        int o = at + 2 * j;
        res.J(o, o) = b.b.re;
        res.J(o + 1, o + 1) = b.b.re;
        res.J(o, o + 1) = -b.b.im;
        res.J(o + 1, o) = b.b.im;
        if (j > 0) {
          res.J(o - 2, o) = 1.0;
          res.J(o - 1, o + 1) = 1.0;
        }
      }
    }
    res.blocks.push_back(b.b);
    at += r;
  }
  if (at != n) throw ComputationError("real_jordan_form: chain construction did not span the space");
  res.residual = max_abs(Mat(M * res.P - res.P * res.J));
  res.cond = condition_number(res.P);
  if (res.cond > 1e12) {
    res.ill_conditioned = true;
    res.warning = "ill-conditioned Jordan basis (condition number above 1e12)";
  }
  return res;
}

}  // namespace curvlie
