#include <gtest/gtest.h>

#include <random>

#include "curvlie/jordan.hpp"

using namespace curvlie;

namespace {

void expect_valid(const Mat& M, const RealJordanResult& r) {
  EXPECT_LT(r.residual, 1e-9 * std::max(1.0, max_abs(M)));
  EXPECT_LT(max_abs(Mat(r.P.inverse() * M * r.P - r.J)), 1e-8 * std::max(1.0, max_abs(M)));
}

Mat scramble(const Mat& J, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat S(J.rows(), J.cols());
  for (int i = 0; i < S.size(); ++i) S.data()[i] = nd(rng);
  S += 3.0 * Mat::Identity(J.rows(), J.cols());
  return S * J * S.inverse();
}

}  // namespace

TEST(RealJordan, DiagonalIsSorted) {
  Mat m = Mat::Zero(3, 3);
  m.diagonal() << 3, 1, 2;
  auto r = real_jordan_form(m);
  EXPECT_TRUE(r.J.isApprox((Mat(3, 3) << 1, 0, 0, 0, 2, 0, 0, 0, 3).finished(), 1e-12));
  expect_valid(m, r);
}

TEST(RealJordan, LowerJordanBlock) {
  Mat m(2, 2);
  m << 1, 0, 4, 1;
  auto r = real_jordan_form(m);
  EXPECT_LT(max_abs(Mat(r.J - (Mat(2, 2) << 1, 1, 0, 1).finished())), 1e-12);
  ASSERT_EQ(r.blocks.size(), 1u);
  EXPECT_EQ(r.blocks[0].size, 2);
  expect_valid(m, r);
}

TEST(RealJordan, CompanionOfComplexPair) {
  // t^2 - 2t + 5 has roots 1 +- 2i
  Mat m(2, 2);
  m << 0, -5, 1, 2;
  auto r = real_jordan_form(m);
  EXPECT_LT(max_abs(Mat(r.J - (Mat(2, 2) << 1, -2, 2, 1).finished())), 1e-12);
  expect_valid(m, r);
}

TEST(RealJordan, ScrambledStructures) {
  struct Case {
    Mat J;
    std::vector<int> sizes;
  };
  std::vector<Case> cases;
  {
    Mat j = Mat::Zero(4, 4);
    j.diagonal() << 2, 2, 2, 2;
    j(0, 1) = 1;
    j(1, 2) = 1;
    cases.push_back({j, {1, 3}});
  }
  {
    Mat j = Mat::Zero(4, 4);
    j.diagonal() << 1, 1, 1, 1;
    j(0, 1) = 1;
    j(2, 3) = 1;
    cases.push_back({j, {2, 2}});
  }
  {
    Mat j = Mat::Zero(4, 4);
    j << 1, -2, 1, 0, 2, 1, 0, 1, 0, 0, 1, -2, 0, 0, 2, 1;
    cases.push_back({j, {2}});
  }
  {
    Mat j = Mat::Zero(4, 4);
    j.diagonal() << 0.5, 0.5, 3, 3;
    j(0, 1) = 1;
    cases.push_back({j, {1, 1, 2}});
  }
  unsigned seed = 1;
  for (const auto& c : cases) {
    Mat m = scramble(c.J, seed++);
    auto r = real_jordan_form(m);
    expect_valid(m, r);
    std::vector<int> sizes;
    for (const auto& b : r.blocks) sizes.push_back(b.size);
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, c.sizes);
  }
}

TEST(RealJordan, Nilpotent) {
  Mat m = Mat::Zero(3, 3);
  m(0, 1) = 1;
  m(1, 2) = 1;
  auto r = real_jordan_form(m);
  ASSERT_EQ(r.blocks.size(), 1u);
  EXPECT_EQ(r.blocks[0].size, 3);
  expect_valid(m, r);
}

TEST(RealJordan, ConditionWarning) {
  Mat m(2, 2);
  m << 1, 1, 0, 1 + 1e-14;
  auto r = real_jordan_form(m);
  expect_valid(m, r);
}
