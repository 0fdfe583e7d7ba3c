#include <gtest/gtest.h>

#include "nullitylab/algebra.hpp"
#include "support.hpp"

namespace nullitylab {
namespace {

TEST(Validate, HeisenbergIsValid) { EXPECT_TRUE(validate(testing::heisenberg3()).valid()); }

TEST(Validate, OneSidedBracketBreaksAntisymmetry) {
  std::vector<VectorXd> table(9, VectorXd::Zero(3));
  table[0 * 3 + 1] = VectorXd::Unit(3, 2);  // [X1, X2] = X3, [X2, X1] left at 0
  const MetricLieAlgebra alg({"X1", "X2", "X3"}, table, MatrixXd::Identity(3, 3));
  const ValidationReport r = validate(alg);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].invariant, "antisymmetry");
  EXPECT_DOUBLE_EQ(r.violations[0].residual, 1.0);
}

TEST(Validate, JacobiViolation) {
  // [a,b] = b, [a,c] = a, [b,c] = a: the Jacobi sum on (a, b, c) is a - b.
  const VectorXd e1 = VectorXd::Unit(3, 0), e2 = VectorXd::Unit(3, 1);
  const MetricLieAlgebra alg = MetricLieAlgebra::from_upper({"a", "b", "c"}, {{0, 1, e2}, {0, 2, e1}, {1, 2, e1}});
  const ValidationReport r = validate(alg);
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(r.violations[0].invariant, "jacobi");
  EXPECT_GT(r.violations[0].residual, 0.5);
}

TEST(Validate, MetricProblems) {
  MatrixXd g(2, 2);
  g << 1.0, 0.5,
       0.0, -1.0;
  const MetricLieAlgebra alg = MetricLieAlgebra::from_upper({"a", "b"}, {}, g);
  std::vector<std::string> names;
  for (const auto& v : validate(alg).violations) names.push_back(v.invariant);
  EXPECT_NE(std::find(names.begin(), names.end(), "metric_symmetry"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "metric_positive_definite"), names.end());
}

TEST(Validate, ExampleFamilyD3) {
  EXPECT_TRUE(validate(build_example(ExampleSpec::paper_default(3))).valid());
}

TEST(Structure, Abelian) {
  const StructureReport s = structure_predicates(testing::abelian(4));
  EXPECT_TRUE(s.solvable);
  ASSERT_TRUE(s.nilpotent_step.has_value());
  EXPECT_EQ(*s.nilpotent_step, 1);
  EXPECT_TRUE(s.reductive);
  for (double t : s.unimodular_defects) EXPECT_EQ(t, 0.0);
  EXPECT_EQ(s.killing_form.norm(), 0.0);
  EXPECT_EQ(s.center_dim, 4);
}

TEST(Structure, So3IsReductiveNotSolvable) {
  const MetricLieAlgebra alg = testing::so3();
  const StructureReport s = structure_predicates(alg);
  // Brute force: [g, g] already contains every basis vector.
  MatrixXd brackets(3, 3);
  brackets << alg.bracket(1, 2), alg.bracket(2, 0), alg.bracket(0, 1);
  EXPECT_EQ(Eigen::FullPivLU<MatrixXd>(brackets).rank(), 3);
  EXPECT_FALSE(s.solvable);
  EXPECT_TRUE(s.reductive);
  EXPECT_FALSE(s.nilpotent_step.has_value());
  EXPECT_EQ(s.radical_dim, 0);
  EXPECT_EQ(s.center_dim, 0);
  // B = -2 I in this basis.
  EXPECT_LT((s.killing_form + 2.0 * MatrixXd::Identity(3, 3)).norm(), 1e-12);
}

TEST(Structure, HeisenbergIsTwoStep) {
  const StructureReport s = structure_predicates(testing::heisenberg3());
  ASSERT_TRUE(s.nilpotent_step.has_value());
  EXPECT_EQ(*s.nilpotent_step, 2);
  EXPECT_TRUE(s.solvable);
  EXPECT_FALSE(s.reductive);
  EXPECT_EQ(s.center_dim, 1);
  EXPECT_EQ(s.radical_dim, 3);
}

TEST(Structure, ExampleFamilyIsSolvableNonUnimodular) {
  for (int d = 3; d <= 12; ++d) {
    const ExampleSpec spec = ExampleSpec::paper_default(d);
    const StructureReport s = structure_predicates(build_example(spec));
    EXPECT_TRUE(s.solvable) << d;
    EXPECT_FALSE(s.nilpotent_step.has_value()) << d;
    EXPECT_EQ(s.center_dim, 0) << d;
    // [A, E_i] = A e_i, so trace(ad A) = trace(A) = a.
    EXPECT_NEAR(s.unimodular_defects.back(), spec.action.trace(), 1e-12) << d;
    EXPECT_NEAR(std::abs(s.unimodular_defects.back()), spec.a, 1e-12) << d;
    EXPECT_FALSE(s.unimodular(1e-8));
  }
}

TEST(Structure, InvariantsOverCorpus) {
  for (const auto& [name, alg] : testing::corpus()) {
    const StructureReport s = structure_predicates(alg);
    for (size_t k = 1; k < s.derived_series_dims.size(); ++k)
      EXPECT_LE(s.derived_series_dims[k], s.derived_series_dims[k - 1]) << name;
    EXPECT_LT((s.killing_form - s.killing_form.transpose()).cwiseAbs().maxCoeff(), 1e-12) << name;
    if (s.nilpotent_step) EXPECT_TRUE(s.solvable) << name;
  }
}

TEST(Algebra, ChangeBasisKeepsBrackets) {
  std::mt19937_64 rng(11);
  const MetricLieAlgebra alg = build_example(ExampleSpec::paper_default(4));
  const MatrixXd p = testing::random_matrix(5, 5, rng);
  const MetricLieAlgebra moved = alg.change_basis(p);
  EXPECT_TRUE(validate(moved).valid());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const VectorXd direct = alg.bracket(VectorXd(p.col(i)), VectorXd(p.col(j)));
      EXPECT_LT((p * moved.bracket(i, j) - direct).norm(), 1e-10);
    }
  EXPECT_LT((moved.metric() - p.transpose() * p).norm(), 1e-12);
}

}  // namespace
}  // namespace nullitylab
