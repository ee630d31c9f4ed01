#include <gtest/gtest.h>

#include "curvlie/catalog.hpp"
#include "curvlie/extension.hpp"
#include "curvlie/geometry.hpp"

using namespace curvlie;

namespace {

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

double alg_dev(const LieAlgebra& a, const LieAlgebra& b) {
  double m = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) m = std::max(m, std::abs(a.c(i, j, k) - b.c(i, j, k)));
  return m;
}

void expect_real_parts(const SncVerdict& v, std::vector<double> want) {
  ASSERT_EQ(v.eigen_real_parts.size(), want.size());
  std::sort(want.begin(), want.end());
  for (size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(v.eigen_real_parts[i], want[i], 1e-12);
}

}  // namespace

TEST(Expand, MilnorIsIdentityExpansion) {
  ExpandedAlgebra e = expand(abelian(3), Mat::Identity(3, 3));
  auto [L, K] = milnor_algebra(Vec::Unit(4, 3));
  EXPECT_EQ(alg_dev(e.total, L), 0.0);
  EXPECT_EQ(K, -1.0);
}

TEST(Expand, Layout) {
  Mat d = diag({1, 0.5, 1.5, 2.5});
  ExpandedAlgebra e = expand(filiform4(), d);
  EXPECT_EQ(e.total.dim(), 5);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) EXPECT_EQ(e.total.c(4, j, k), d(k, j));
  EXPECT_EQ(e.total.c(0, 1, 2), 1.0);
  EXPECT_EQ(e.total.c(0, 2, 3), 1.0);
  EXPECT_EQ(jacobi_defect(e.total), 0.0);
  EXPECT_EQ(derived_subalgebra(e.total).dim(), 4);
  EXPECT_THROW(expand(heisenberg3(), Mat::Identity(3, 3)), PreconditionError);
  EXPECT_THROW(expand(heisenberg3(), Mat::Identity(2, 2)), InputError);
}

TEST(Snc, ExplicitWitness) {
  const double x = 0.3, y = 0.8;
  LieAlgebra g = expand(abelian(3), diag({x, y, 1})).total;
  SncVerdict v = snc_test(g, Vec::Unit(4, 3));
  EXPECT_TRUE(v.is_snc);
  expect_real_parts(v, {x, y, 1});
  SncVerdict f = snc_test(g, -Vec::Unit(4, 3));
  EXPECT_TRUE(f.is_snc);
  EXPECT_TRUE(f.flipped);
  EXPECT_FALSE(snc_test(abelian(4), Vec::Unit(4, 3)).is_snc);
  SncVerdict m = snc_test(expand(abelian(3), diag({1, -1, 1})).total, Vec::Unit(4, 3));
  EXPECT_TRUE(m.codim_ok);
  EXPECT_FALSE(m.is_snc);
  EXPECT_THROW(snc_test(g, Vec::Unit(4, 0)), InputError);
  LieAlgebra t = expand(abelian(3), diag({5e-8, 1, 1})).total;
  EXPECT_THROW(snc_test(t, Vec::Unit(4, 3)), IndeterminateError);
}

TEST(Snc, AutomaticWitness) {
  EXPECT_TRUE(snc_test_auto(catalog_instantiate(Family::F4B2, {})).is_snc);
  SncVerdict h = snc_test_auto(MetricAlgebra(heisenberg3()));
  EXPECT_FALSE(h.is_snc);
  EXPECT_FALSE(h.codim_ok);
  EXPECT_FALSE(h.witness_A.has_value());
  SncVerdict c = snc_test_auto(catalog_instantiate(Family::F5C13, {1.0}));
  EXPECT_TRUE(c.is_snc);
  expect_real_parts(c, {0.5, 0.5, 1, 1});
  // the witness is orthogonal to g' for a non-identity metric
  MetricAlgebra g = catalog_instantiate(Family::F4A2, {2.0});
  g.gram(0, 3) = g.gram(3, 0) = 0.4;
  SncVerdict w = snc_test_auto(g);
  ASSERT_TRUE(w.is_snc);
  for (int i = 0; i < w.derived.dim(); ++i) EXPECT_NEAR(g.inner(*w.witness_A, w.derived.basis.col(i)), 0.0, 1e-14);
}

TEST(Snc, CatalogRoundTrip) {
  for (const auto& info : all_families()) {
    if (!printed_is_realizable(info.family)) continue;
    for (const Params& p : canonical_grid(info.family)) {
      if (!in_printed_range(info.family, p)) continue;
      MetricAlgebra g = catalog_instantiate(info.family, p);
      SncVerdict v = snc_test(g.alg, Vec::Unit(g.dim(), g.dim() - 1));
      EXPECT_TRUE(v.is_snc) << info.tag;
      EXPECT_TRUE(snc_test_auto(g).is_snc) << info.tag;
    }
  }
}

TEST(OEquivalence, Basics) {
  const LieAlgebra h = heisenberg3();
  Mat d(3, 3);
  d << 1, 2, 0, 0, 3, 0, 0.5, -1, 4;
  const int n = 3;
  OEquivWitness id{Mat::Identity(n, n), Vec::Zero(n), 1.0};
  EXPECT_TRUE(o_equivalence_check(h, d, d, id));
  EXPECT_TRUE(o_equivalence_check(h, d, Mat(2 * d), {Mat::Identity(n, n), Vec::Zero(n), 0.5}));
  EXPECT_FALSE(o_equivalence_check(abelian(3), diag({1, 2, 3}), Mat::Identity(3, 3), {diag({1, 2, 3}), Vec::Ones(3), 2.0}));
  EXPECT_THROW(o_equivalence_check(h, d, d, {diag({1, 1, 5}), Vec::Zero(n), 1.0}), PreconditionError);
  EXPECT_THROW(o_equivalence_check(h, d, d, {Mat::Identity(n, n), Vec::Zero(n), 0.0}), PreconditionError);
}

TEST(OEquivalence, InverseWitness) {
  const LieAlgebra h = heisenberg3();
  Mat d2(3, 3);
  d2 << 1, 0.5, 0, -0.25, 2, 0, 0.3, 0.7, 3;
  Mat g(3, 3);
  g << 2, 1, 0, 0.5, 1, 0, 1, -2, 1.5;  // y33 = det of the upper block
  Vec x = (Vec(3) << 0.4, -1.1, 2.0).finished();
  const double lambda = 0.7;
  ASSERT_TRUE(is_automorphism(h, g));
  Mat gi = g.inverse();
  Mat d1 = gi * ad(h, x) * g + lambda * gi * d2 * g;
  OEquivWitness w{g, x, lambda};
  ASSERT_TRUE(o_equivalence_check(h, d1, d2, w));
  EXPECT_TRUE(o_equivalence_check(h, d2, d1, inverse_witness(w)));
  // the expansions are isomorphic: both are SNC with proportional spectra
  SncVerdict v1 = snc_test(expand(h, d1).total, Vec::Unit(4, 3));
  SncVerdict v2 = snc_test(expand(h, d2).total, Vec::Unit(4, 3));
  for (size_t i = 0; i < 3; ++i) EXPECT_NEAR(v1.eigen_real_parts[i], lambda * v2.eigen_real_parts[i], 1e-12);
}

TEST(Milnor, ExpectedCurvature) {
  auto [z, k0] = milnor_algebra(Vec::Zero(3));
  EXPECT_EQ(k0, 0.0);
  EXPECT_TRUE(z.is_abelian());
  auto [L, K] = milnor_algebra((Vec(3) << 0, 0, 2).finished());
  EXPECT_EQ(K, -4.0);
  EXPECT_LT(max_abs(Vec(bracket(L, Vec::Unit(3, 2), Vec::Unit(3, 0)) - 2 * Vec::Unit(3, 0))), 1e-15);
  MetricAlgebra m(L);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_NEAR(sectional(m, Vec::Unit(3, i), Vec::Unit(3, j)), -4.0, 1e-12);
  EXPECT_THROW(milnor_algebra(Vec::Ones(1)), InputError);
}
