#include <gtest/gtest.h>

#include <random>

#include "curvlie/canonical.hpp"

using namespace curvlie;

namespace {

Mat cols(int n, std::vector<std::vector<double>> c) {
  Mat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = c[j][i];
  return m;
}

void expect_form(const CanonicalForm& f, const char* tag, Params p, double tol = 1e-9) {
  EXPECT_EQ(f.tag(), tag);
  ASSERT_EQ(f.params.size(), p.size()) << tag;
  for (size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(f.params[i], p[i], tol) << tag << " param " << i;
}

void expect_trail_valid(const CanonicalForm& f) {
  for (const auto& st : f.trail) {
    EXPECT_TRUE(st.automorphism) << st.label;
    EXPECT_LT(st.residual, 1e-9 * std::max(1.0, max_abs(st.source))) << st.label;
  }
}

// orthogonal * diag(exp(u)) * orthogonal with u in [-1, 1]
Mat scramble(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(-1, 1);
  auto orth = [&] {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    return Mat(Eigen::HouseholderQR<Mat>(m).householderQ());
  };
  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(ud(rng));
  return orth() * s.asDiagonal() * orth();
}

}  // namespace

TEST(Abelian, SpecExamples) {
  Mat d = Vec((Vec(3) << 2, 4, 2).finished()).asDiagonal();
  CanonicalForm f = canonicalize_abelian(d);
  expect_form(f, "4A1", {0.5, 0.5});
  expect_trail_valid(f);
  expect_form(canonicalize_abelian(Mat::Identity(3, 3)), "4A1", {1, 1});
  Mat j = Mat::Identity(4, 4);
  j(0, 1) = j(1, 2) = j(2, 3) = 1;
  EXPECT_EQ(canonicalize_abelian(j).tag(), "5A8");
  EXPECT_THROW(canonicalize_abelian(Mat(-Mat::Identity(3, 3))), PreconditionError);
  Mat t = Vec((Vec(3) << 5e-8, 1, 1).finished()).asDiagonal();
  EXPECT_THROW(canonicalize_abelian(t), IndeterminateError);
}

TEST(Abelian, ConjugatedInput) {
  Mat d(3, 3);
  d << 2, -3, 0, 3, 2, 0, 0, 0, 1;  // eigenvalues 2 +- 3i, 1
  Mat p(3, 3);
  p << 1, 2, 0, 0, 1, 1, 1, 0, 1;
  CanonicalForm f = canonicalize_abelian(Mat(p * d * p.inverse()));
  EXPECT_EQ(f.family, Family::F4A4);
  expect_trail_valid(f);
  EXPECT_LT(max_abs(Mat(f.trail.back().target - f.derivation)), 1e-9);
}

TEST(Heisenberg, SpecExamples) {
  Mat d = cols(3, {{2, 0, 0.7}, {0, 6, -1.3}, {0, 0, 8}});
  CanonicalForm a = canonicalize_heisenberg3(d);
  expect_form(a, "4B1", {0.25});
  expect_trail_valid(a);
  Mat b = cols(3, {{0.5, 0, 0}, {5, 0.5, 0}, {0, 0, 1}});
  expect_form(canonicalize_heisenberg3(b), "4B2", {});
  Mat c = cols(3, {{1, 2, 0}, {-2, 1, 0}, {0, 0, 2}});
  expect_form(canonicalize_heisenberg3(c), "4B3", {1});
  EXPECT_THROW(canonicalize_heisenberg3(Mat::Identity(3, 3)), PreconditionError);
}

TEST(Heisenberg, PrintedReductionClearsRow) {
  Mat d = cols(3, {{1, 0.5, 2}, {-0.25, 2, -1}, {0, 0, 3}});
  Mat a = reduce::h3_clear_row(d);
  ASSERT_TRUE(is_automorphism(heisenberg3(), a));
  Mat t = a * d * a.inverse();
  EXPECT_NEAR(t(2, 0), 0.0, 1e-12);
  EXPECT_NEAR(t(2, 1), 0.0, 1e-12);
}

TEST(TypeB, SpecExamples) {
  const double x = 0.7;
  Mat d = Vec((Vec(4) << 1, x, 1 + x, 2 + x).finished()).asDiagonal();
  CanonicalForm a = canonicalize_dim5_B(d);
  expect_form(a, "5B1", {x});
  // D_m = [[1, 0], [1, 1]] (a derivation of B4) with nonzero lower rows
  Mat b = cols(4, {{1, 1, 0.4, -0.6}, {0, 1, 0, 0.3}, {0, 0, 2, 0}, {0, 0, 0, 3}});
  ASSERT_TRUE(is_derivation(filiform4(), b).ok);
  CanonicalForm f = canonicalize_dim5_B(b);
  expect_form(f, "5B2", {});
  expect_trail_valid(f);
  // the printed rotation block is not a derivation of B4
  const double beta = 0.8;
  Mat r = cols(4, {{1, beta, 0, 0}, {-beta, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}});
  EXPECT_THROW(canonicalize_dim5_B(r), PreconditionError);
}

TEST(TypeB, PrintedRowFourFormulaFails) {
  Mat d = cols(4, {{1, 0.3, 0, 0.9}, {0, 0.5, 0, -0.4}, {0, 0, 1.5, 0}, {0, 0, 0, 2.5}});
  ASSERT_TRUE(is_derivation(filiform4(), d).ok);
  Mat a = reduce::b4_clear_row4(d);
  Mat t = a * d * a.inverse();
  EXPECT_GT(std::max(std::abs(t(3, 0)), std::abs(t(3, 1))), 1e-3);
  // the solved replacement clears both entries
  CanonicalForm f = canonicalize_dim5_B(d);
  expect_form(f, "5B1", {0.5});
  bool solved = false;
  for (const auto& st : f.trail) solved = solved || st.method == "solved";
  EXPECT_TRUE(solved);
}

TEST(TypeC, SpecExamples) {
  Mat a = Vec((Vec(4) << 1, 0.4, 0.8, 1.4).finished()).asDiagonal();
  expect_form(canonicalize_dim5_C(a), "5C1", {0.4, 0.8});
  // X = diag(l1, l2), x33 = l1 <= l2, x31 != 0
  Mat b = cols(4, {{1, 0, 0.6, 0}, {0, 2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 3}});
  CanonicalForm fb = canonicalize_dim5_C(b);
  expect_form(fb, "5C4", {2});
  expect_trail_valid(fb);
  Mat c = cols(4, {{0.5, 0, 0.2, -0.1}, {1, 0.5, 0.3, 0.4}, {0, 0, 1, 1}, {0, 0, 0, 1}});
  ASSERT_TRUE(is_derivation(heisenberg3_plus_line(), c).ok);
  CanonicalForm fc = canonicalize_dim5_C(c);
  expect_form(fc, "5C12", {});
  expect_trail_valid(fc);
}

TEST(TypeC, TieBandIsIndeterminate) {
  // x33 within the band around x11 + x22 with x43 != 0
  Mat d = cols(4, {{0.5, 0, 0, 0}, {0, 0.25, 0, 0}, {0, 0, 0.75 + 1e-7, 1}, {0, 0, 0, 0.75}});
  try {
    canonicalize_dim5_C(d);
    FAIL() << "expected IndeterminateError";
  } catch (const IndeterminateError& e) {
    EXPECT_GE(e.candidates().size(), 2u);
  }
}

TEST(TypeC, PrintedGenericRowFormulaFails) {
  Mat d = cols(4, {{1, 0, 0.7, 0}, {0, 2, -0.4, 0}, {0, 0, 3.5, 0}, {0, 0, 0, 3}});
  Mat a = reduce::c4_clear_r(d);
  Mat t = a * d * a.inverse();
  EXPECT_GT(std::max(std::abs(t(2, 0)), std::abs(t(2, 1))), 1e-3);
  expect_form(canonicalize_dim5_C(d), "5C1", {0.5, 1.75});
}

TEST(TypeC, PrintedReductionsVerified) {
  Mat d = cols(4, {{1, 0.2, 0.7, 0.3}, {-0.4, 2, -0.4, 0.8}, {0, 0, 2.5, 0.6}, {0, 0, 0, 3}});
  const LieAlgebra c4 = heisenberg3_plus_line();
  ASSERT_TRUE(is_derivation(c4, d).ok);
  Mat a = reduce::c4_clear_row4(d, false);
  ASSERT_TRUE(is_automorphism(c4, a));
  Mat t = a * d * a.inverse();
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(t(3, j), 0.0, 1e-12);
  Mat e = cols(4, {{1, 0.2, 0.7, 0.3}, {-0.4, 2, -0.4, 0.8}, {0, 0, 3, 0.6}, {0, 0, 0, 3}});
  Mat b = reduce::c4_type2_clear(e);
  ASSERT_TRUE(is_automorphism(c4, b));
  Mat u = b * e * b.inverse();
  for (auto [i, j] : {std::pair{2, 0}, {2, 1}, {3, 0}, {3, 1}}) EXPECT_NEAR(u(i, j), 0.0, 1e-12);
}

TEST(Identify, StandardAndPermuted) {
  auto [t, P] = identify_nilpotent(heisenberg3_plus_line());
  EXPECT_EQ(t, NilType::C4);
  EXPECT_LT(max_abs(Mat(P - Mat::Identity(4, 4))), 1e-15);
  Mat swap = Mat::Identity(4, 4);
  swap.col(0).swap(swap.col(1));
  LieAlgebra b = change_basis(filiform4(), swap);
  auto [tb, Pb] = identify_nilpotent(b);
  EXPECT_EQ(tb, NilType::B4);
  LieAlgebra back = change_basis(b, Pb);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(back.c(i, j, k), filiform4().c(i, j, k), 1e-12);
  auto [ta, Pa] = identify_nilpotent(abelian(4));
  EXPECT_EQ(ta, NilType::A4);
  EXPECT_EQ(Pa, Mat::Identity(4, 4));
  EXPECT_THROW(identify_nilpotent(expand(abelian(2), Mat::Identity(2, 2)).total), InputError);
}

TEST(Classify, SpecExamples) {
  auto [m, K] = milnor_algebra(Vec::Unit(4, 3));
  expect_form(classify(MetricAlgebra(m)), "4A1", {1, 1});

  Mat d = cols(3, {{0.5, 3, 0}, {-3, 0.5, 0}, {0, 0, 1}});
  LieAlgebra g = expand(heisenberg3(), d).total;
  std::mt19937_64 rng(11);
  Mat S = scramble(4, rng);
  CanonicalForm f = classify(MetricAlgebra(change_basis(g, S)));
  expect_form(f, "4B3", {3});

  Mat c = Vec((Vec(4) << 1, 2, 3, 3).finished()).asDiagonal();
  CanonicalForm fc = classify(MetricAlgebra(expand(heisenberg3_plus_line(), c).total));
  expect_form(fc, "5C1", {0.5, 1.5});
  EXPECT_THROW(classify(MetricAlgebra(abelian(4))), PreconditionError);
}

TEST(Classify, RoundTripGrid) {
  std::mt19937_64 rng(7);
  for (const auto& info : all_families()) {
    if (!printed_is_realizable(info.family)) continue;
    for (const Params& p : canonical_grid(info.family)) {
      if (!in_canonical_range(info.family, p, 1e-12)) continue;
      MetricAlgebra g = catalog_instantiate(info.family, p);
      CanonicalForm f = classify(g);
      expect_form(f, info.tag.c_str(), p);
      expect_trail_valid(f);
      Mat S = scramble(g.dim(), rng);
      LieAlgebra s = change_basis(g.alg, S);
      expect_form(classify(MetricAlgebra(s)), info.tag.c_str(), p, 1e-8);
    }
  }
}

TEST(Classify, EquivalentPairs) {
  for (const auto& c : equivalence_cases()) {
    CanonicalForm f = classify(catalog_instantiate(c.family, c.params));
    EXPECT_EQ(f.family, c.expect_family) << family_info(c.family).tag;
    for (size_t i = 0; i < c.expect_params.size(); ++i) EXPECT_NEAR(f.params[i], c.expect_params[i], 1e-9);
  }
}

TEST(Classify, Uniqueness) {
  std::vector<std::pair<Family, Params>> seen;
  for (const auto& info : all_families()) {
    if (!printed_is_realizable(info.family)) continue;
    for (const Params& p : canonical_grid(info.family))
      if (in_canonical_range(info.family, p, 1e-12)) seen.emplace_back(info.family, p);
  }
  std::vector<std::pair<Family, Params>> out;
  for (auto& [f, p] : seen) {
    CanonicalForm c = classify(catalog_instantiate(f, p));
    out.emplace_back(c.family, c.params);
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) {
      if (out[i].first != out[j].first) continue;
      double dev = 0;
      for (size_t k = 0; k < out[i].second.size(); ++k)
        dev = std::max(dev, std::abs(out[i].second[k] - out[j].second[k]));
      EXPECT_TRUE(out[i].second.empty() ? false : dev > 1e-9) << family_info(out[i].first).tag;
    }
}
