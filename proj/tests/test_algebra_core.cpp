#include <gtest/gtest.h>

#include "curvlie/metric.hpp"
#include "curvlie/structure.hpp"

using namespace curvlie;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

}  // namespace

TEST(LieAlgebra, HeisenbergBracket) {
  LieAlgebra h = heisenberg3();
  EXPECT_EQ(bracket(h, Vec::Unit(3, 0), Vec::Unit(3, 1)), Vec::Unit(3, 2));
  EXPECT_EQ(bracket(h, Vec::Unit(3, 1), Vec::Unit(3, 0)), -Vec::Unit(3, 2));
  EXPECT_DOUBLE_EQ(jacobi_defect(h), 0.0);
}

TEST(LieAlgebra, RejectsBadInput) {
  EXPECT_THROW(LieAlgebra(0), InputError);
  EXPECT_THROW(LieAlgebra(9), InputError);
  LieAlgebra h(3);
  EXPECT_THROW(h.set_bracket(0, 1, Vec::Zero(2)), InputError);
  EXPECT_THROW(h.set_bracket(0, 3, Vec::Zero(3)), InputError);
  EXPECT_THROW(h.set_bracket(1, 1, Vec::Unit(3, 0)), InputError);
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;
  EXPECT_THROW(LieAlgebra::from_full(3, c), InputError);
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  EXPECT_NO_THROW(LieAlgebra::from_full(3, c));
}

TEST(LieAlgebra, JacobiDefect) {
  // [e2,e3] = e1 on top of [e1,e2] = e3 still satisfies Jacobi
  LieAlgebra h = heisenberg3();
  h.set_bracket(1, 2, Vec::Unit(3, 0));
  EXPECT_DOUBLE_EQ(jacobi_defect(h), 0.0);
  // [e1,e3] = e1 instead breaks it: [[e3,e1],e2] = -e3
  LieAlgebra b = heisenberg3();
  b.set_bracket(0, 2, Vec::Unit(3, 0));
  EXPECT_NEAR(jacobi_defect(b), 1.0, 1e-15);
  // rescaled filiform constants remain a Lie algebra
  LieAlgebra f = filiform4();
  f.set_bracket(0, 1, 1.5 * Vec::Unit(4, 2));
  EXPECT_DOUBLE_EQ(jacobi_defect(f), 0.0);
}

TEST(LieAlgebra, ChangeBasisPreservesStructure) {
  LieAlgebra b4 = filiform4();
  Mat P(4, 4);
  P << 1, 2, 0, 1, 0, 1, 3, 0, 1, 0, 1, 2, 0, 1, 0, 1;
  LieAlgebra t = change_basis(b4, P);
  EXPECT_LT(jacobi_defect(t), 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec lhs = P * t.basis_bracket(i, j);
      Vec rhs = bracket(b4, P.col(i), P.col(j));
      EXPECT_LT(max_abs(Vec(lhs - rhs)), 1e-12);
    }
}

TEST(Structure, Series) {
  auto lcs = lower_central_series(filiform4());
  ASSERT_EQ(lcs.size(), 4u);
  EXPECT_EQ(lcs[1].dim(), 2);
  EXPECT_EQ(lcs[2].dim(), 1);
  EXPECT_EQ(lcs[3].dim(), 0);
  EXPECT_TRUE(is_nilpotent(heisenberg3_plus_line()));
  EXPECT_EQ(center(heisenberg3_plus_line()).dim(), 2);
  EXPECT_EQ(derived_subalgebra(heisenberg3()).dim(), 1);

  // aff(R) is solvable but not nilpotent
  LieAlgebra aff(2);
  aff.set_bracket(0, 1, Vec::Unit(2, 1));
  EXPECT_TRUE(is_solvable(aff));
  EXPECT_FALSE(is_nilpotent(aff));

  // so(3) is neither
  LieAlgebra so3(3);
  so3.set_bracket(0, 1, Vec::Unit(3, 2));
  so3.set_bracket(1, 2, Vec::Unit(3, 0));
  so3.set_bracket(2, 0, Vec::Unit(3, 1));
  EXPECT_FALSE(is_solvable(so3));
  EXPECT_EQ(derived_subalgebra(so3).dim(), 3);
}

TEST(Structure, DerivationNullities) {
  // Independent count: the standard descriptions give 9, 6, 16, 7 and 10 free parameters.
  EXPECT_EQ(derivation_space(abelian(3)).size(), 9u);
  EXPECT_EQ(derivation_space(heisenberg3()).size(), 6u);
  EXPECT_EQ(derivation_space(abelian(4)).size(), 16u);
  EXPECT_EQ(derivation_space(filiform4()).size(), 7u);
  EXPECT_EQ(derivation_space(heisenberg3_plus_line()).size(), 10u);
  for (const auto& d : derivation_space(filiform4())) EXPECT_TRUE(is_derivation(filiform4(), d).ok);
}

TEST(Structure, DerivationCheck) {
  Mat d = Mat::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  EXPECT_TRUE(is_derivation(heisenberg3(), d).ok);
  d(2, 2) = 4;
  auto r = is_derivation(heisenberg3(), d);
  EXPECT_FALSE(r.ok);
  EXPECT_NEAR(r.defect, 1.0, 1e-15);
  EXPECT_TRUE(in_delta_plus(heisenberg3(), (Mat(3, 3) << 1, 0, 0, 0, 2, 0, 0, 0, 3).finished()));
  EXPECT_FALSE(in_delta_plus(heisenberg3(), (Mat(3, 3) << 1, 0, 0, 0, -2, 0, 0, 0, -1).finished()));
  EXPECT_THROW(in_delta_plus(heisenberg3(), (Mat(3, 3) << 1e-9, 0, 0, 0, 1, 0, 0, 0, 1 + 1e-9).finished()),
               IndeterminateError);
}

TEST(Structure, Automorphisms) {
  Mat a = Mat::Zero(3, 3);
  a.diagonal() << 2, 3, 6;
  EXPECT_TRUE(is_automorphism(heisenberg3(), a));
  a(2, 2) = 5;
  EXPECT_FALSE(is_automorphism(heisenberg3(), a));
  EXPECT_FALSE(is_automorphism(heisenberg3(), Mat::Zero(3, 3)));
  Mat shear = Mat::Identity(3, 3);
  shear(2, 0) = 7;  // e1 -> e1 + 7 e3
  EXPECT_TRUE(is_automorphism(heisenberg3(), shear));
}

TEST(Metric, OrthonormalizeDiagonal) {
  MetricAlgebra g(heisenberg3(), Mat::Identity(3, 3));
  g.gram.diagonal() << 4, 1, 1;
  MetricAlgebra o = orthonormalize(g);
  EXPECT_TRUE(o.gram.isIdentity(1e-15));
  // f1 = e1/2, f2 = e2, f3 = e3: [f1, f2] = f3 / 2
  EXPECT_NEAR(o.alg.c(0, 1, 2), 0.5, 1e-15);
  MetricAlgebra s(heisenberg3(), 2.0 * Mat::Identity(3, 3));
  EXPECT_NEAR(orthonormalize(s).alg.c(0, 1, 2), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Metric, RejectsIndefiniteGram) {
  MetricAlgebra g(heisenberg3(), Mat::Identity(3, 3));
  g.gram(2, 2) = -1;
  EXPECT_THROW(g.validate(), InputError);
  g.gram = Mat::Identity(3, 3);
  g.gram(0, 1) = 0.5;
  EXPECT_THROW(g.validate(), InputError);
}

TEST(Linalg, Basics) {
  Mat m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 0, 1;
  EXPECT_EQ(numeric_rank(m, 1e-12), 2);
  EXPECT_EQ(null_space(m, 1e-12).cols(), 1);
  auto ev = eigenvalues((Mat(2, 2) << 0, -1, 1, 0).finished());
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(std::abs(ev[0].imag()), 1.0, 1e-15);
  Vec c = coords_in((Mat(3, 2) << 1, 0, 0, 1, 1, 1).finished(), v3(2, 3, 5));
  EXPECT_NEAR(c(0), 2, 1e-14);
  EXPECT_NEAR(c(1), 3, 1e-14);
}
