#include <gtest/gtest.h>

#include <random>

#include "curvlie/catalog.hpp"
#include "curvlie/geometry.hpp"
#include "curvlie/heintze.hpp"
#include "curvlie/negativity.hpp"

using namespace curvlie;

namespace {

MetricAlgebra inst(const char* tag, Params p) { return catalog_instantiate(*family_from_tag(tag), p); }

Vec e(int n, int i) { return Vec::Unit(n, i); }

// n(D) on H3 with the D_m block and its trace on e3
MetricAlgebra h3_with(const Mat& dm) {
  Mat d = Mat::Zero(3, 3);
  d.topLeftCorner(2, 2) = dm;
  d(2, 2) = dm.trace();
  return MetricAlgebra(expand(heisenberg3(), d).total);
}

// 4-dim rotation algebra with [e4,e1] = e1/2 + b e2, [e4,e2] = -b e1 + e2/2, [e4,e3] = e3
MetricAlgebra rotated_half(double b, bool with_heisenberg) {
  LieAlgebra L(4);
  L.set_bracket(3, 0, (Vec(4) << 0.5, b, 0, 0).finished());
  L.set_bracket(3, 1, (Vec(4) << -b, 0.5, 0, 0).finished());
  L.set_bracket(3, 2, e(4, 2));
  if (with_heisenberg) L.set_bracket(0, 1, e(4, 2));
  return MetricAlgebra(L);
}

}  // namespace

TEST(UMap, PrintedValues) {
  const double x = 0.3, y = 0.7;
  MetricAlgebra a = inst("4A1", {x, y});
  Vec u = u_map(a, e(4, 0), e(4, 0));
  EXPECT_LT(max_abs(Vec(u - x * e(4, 3))), 1e-15);
  MetricAlgebra b = inst("4B1", {0.25});
  EXPECT_LT(max_abs(Vec(u_map(b, e(4, 0), e(4, 2)) + 0.5 * e(4, 1))), 1e-15);
  MetricAlgebra flat(abelian(3));
  EXPECT_EQ(max_abs(u_map(flat, e(3, 0), e(3, 1))), 0.0);
}

TEST(Connection, TorsionFreeAndMetric) {
  for (const auto& g : {inst("4A2", {2.0}), inst("4B2", {}), inst("5C8", {}), inst("5B1", {0.5})}) {
    Tensor gam = levi_civita(g);
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec br = g.alg.basis_bracket(i, j);
        for (int k = 0; k < n; ++k) {
          EXPECT_NEAR(gam(i, j, k) - gam(j, i, k), br(k), 1e-14);
          EXPECT_NEAR(gam(i, j, k) + gam(i, k, j), 0.0, 1e-14);
        }
      }
  }
}

TEST(Connection, ExamplesByHand) {
  const double x = 0.4;
  Tensor gam = levi_civita(inst("4A1", {x, 0.8}));
  EXPECT_NEAR(gam(0, 0, 3), x, 1e-15);   // nabla_e1 e1 = x e4
  EXPECT_NEAR(gam(0, 3, 0), -x, 1e-15);  // nabla_e1 e4 = -x e1
  auto [L, K] = milnor_algebra(e(3, 2));
  Tensor m = levi_civita(MetricAlgebra(L));
  EXPECT_NEAR(m(0, 0, 2), 1.0, 1e-15);
  EXPECT_NEAR(m(0, 2, 0), -1.0, 1e-15);
  Tensor z = levi_civita(MetricAlgebra(abelian(3)));
  EXPECT_EQ(z.max_abs(), 0.0);
}

TEST(Riemann, PrintedHeisenbergTable) {
  MetricAlgebra g = h3_with(0.5 * Mat::Identity(2, 2));
  Tensor R = riemann(g);
  EXPECT_NEAR(R(0, 1, 0, 1), 1.0, 1e-15);   // R(e1,e2)e1 = e2
  EXPECT_NEAR(R(0, 1, 2, 3), -0.5, 1e-15);  // R(e1,e2)e3 = -e4/2
  EXPECT_NEAR(R(0, 2, 0, 2), 0.25, 1e-15);  // R(e1,e3)e1 = e3/4
  EXPECT_NEAR(R(3, 2, 3, 2), 1.0, 1e-15);   // R(e4,e3)e4 = e3 (printed as e4)
  EXPECT_NEAR(R(3, 2, 3, 3), 0.0, 1e-15);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) EXPECT_EQ(R(i, i, k, l), 0.0);
}

TEST(Riemann, Symmetries) {
  for (const auto& g : {inst("4A3", {}), inst("4B3", {0.7}), inst("5C11", {2.0}), inst("5A9", {1.0, 1.0})}) {
    Tensor R = riemann(g);
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            EXPECT_NEAR(R(i, j, k, l), -R(j, i, k, l), 1e-13);
            EXPECT_NEAR(R(i, j, k, l), -R(i, j, l, k), 1e-13);
            EXPECT_NEAR(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l), 0.0, 1e-13);
          }
  }
}

TEST(Ricci, PrintedTables) {
  const double x = 0.3, y = 0.6;
  Mat r = ricci(inst("4A1", {x, y}));
  EXPECT_NEAR(r(0, 0), -x * (x + y + 1), 1e-14);
  EXPECT_NEAR(r(3, 3), -(x * x + y * y + 1), 1e-14);
  const double z = 1.7;
  EXPECT_NEAR(ricci(inst("4A2", {z}))(1, 2), -z / 2 - 1, 1e-14);
  EXPECT_LT(max_abs(Mat(ricci(inst("4B3", {0.8})) + 1.5 * Mat::Identity(4, 4))), 1e-14);
}

TEST(Ricci, TwoPathsAgreeWithNonTrivialMetric) {
  MetricAlgebra g = inst("5C4", {2.0});
  Mat S = Mat::Identity(5, 5);
  S(0, 1) = 0.3;
  S(2, 4) = -0.2;
  S(3, 3) = 1.5;
  g.gram = S.transpose() * S;
  EXPECT_NO_THROW(ricci(g));
  // Ricci is natural: the orthonormal frame gives the pulled-back tensor
  Mat P = orthonormal_frame(g.gram);
  MetricAlgebra o(change_basis(g.alg, P));
  EXPECT_LT(max_abs(Mat(P.transpose() * ricci(g) * P - ricci(o))), 1e-12);
}

TEST(Sectional, MilnorAndHeisenberg) {
  auto [L, K] = milnor_algebra(e(4, 3));
  MetricAlgebra m(L);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) EXPECT_NEAR(sectional(m, e(4, i), e(4, j)), -1.0, 1e-14);
  auto [L2, K2] = milnor_algebra((Vec(3) << 0, 0, 2).finished());
  EXPECT_DOUBLE_EQ(K2, -4.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) x(i) = nd(rng), y(i) = nd(rng);
    EXPECT_NEAR(sectional(MetricAlgebra(L2), x, y), -4.0, 1e-12);
  }
  MetricAlgebra h = h3_with(0.5 * Mat::Identity(2, 2));
  EXPECT_NEAR(sectional(h, e(4, 0), e(4, 1)), -1.0, 1e-15);
  EXPECT_NEAR(sectional(h, e(4, 0), e(4, 2)), -0.25, 1e-15);
  EXPECT_THROW(sectional(h, e(4, 0), 2.0 * e(4, 0)), InputError);
}

TEST(Einstein, Detection) {
  auto l1 = is_einstein(inst("4A1", {1.0, 1.0}));
  ASSERT_TRUE(l1.has_value());
  EXPECT_NEAR(*l1, -3.0, 1e-14);
  EXPECT_FALSE(is_einstein(inst("4A2", {1.0})).has_value());
  auto l2 = is_einstein(inst("4B1", {0.5}));
  ASSERT_TRUE(l2.has_value());
  EXPECT_NEAR(*l2, -1.5, 1e-14);
}

TEST(NablaR, SymmetricCases) {
  EXPECT_LT(curvature_report(inst("4A1", {1.0, 1.0})).nabla_r_norm, 1e-12);
  EXPECT_LT(curvature_report(inst("5A3", {1.0, 1.0, 2.0})).nabla_r_norm, 1e-12);
  EXPECT_GT(curvature_report(inst("4A1", {0.5, 1.0})).nabla_r_norm, 1e-3);
  // the rotated Heisenberg case is symmetric; without [e1,e2] = e3 it is not
  EXPECT_LT(curvature_report(rotated_half(0.8, true)).nabla_r_norm, 1e-12);
  EXPECT_GT(curvature_report(rotated_half(0.8, false)).nabla_r_norm, 1e-3);
}

TEST(NablaR, CurvatureCoincidence) {
  Tensor a = riemann(inst("4B1", {0.5}));
  Tensor b = riemann(rotated_half(1.3, true));
  double dev = 0;
  for (size_t i = 0; i < a.data().size(); ++i) dev = std::max(dev, std::abs(a.data()[i] - b.data()[i]));
  EXPECT_LT(dev, 1e-13);
}

TEST(Heintze, Examples) {
  auto h = heintze_check(inst("4B1", {0.5}));
  EXPECT_TRUE(h.pass);
  EXPECT_NEAR(h.lambda, 0.5, 1e-14);
  auto a = heintze_check(inst("4A1", {1.0, 1.0}));
  EXPECT_TRUE(a.pass);
  EXPECT_NEAR(a.lambda, 1.0, 1e-14);
  EXPECT_EQ(a.dim_a2, 0);
  auto b = heintze_check(inst("5B1", {1.0}));
  EXPECT_FALSE(b.pass);
  EXPECT_EQ(b.failed_at, "a");
  auto c = heintze_check(inst("5C1", {1.0, 1.0}));
  EXPECT_FALSE(c.pass);
  auto n = heintze_check(inst("4A1", {0.5, 1.0}));
  EXPECT_FALSE(n.pass);
  EXPECT_EQ(n.failed_at, "b");
}

TEST(Negativity, Scan) {
  auto [L, K] = milnor_algebra(e(4, 3));
  ScanOptions opt;
  opt.samples = 2000;
  EXPECT_NEAR(negativity_scan(MetricAlgebra(L), opt).max_K, -1.0, 1e-6);
  EXPECT_NEAR(negativity_scan(inst("4B1", {0.5}), opt).max_K, -0.25, 1e-4);
  MetricAlgebra flat(abelian(3));
  EXPECT_NEAR(negativity_scan(flat, opt).max_K, 0.0, 1e-15);
}
