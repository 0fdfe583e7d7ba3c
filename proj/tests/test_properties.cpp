#include <gtest/gtest.h>

#include "nullitylab/nullity.hpp"
#include "support.hpp"

namespace nullitylab {
namespace {

class CorpusProperty : public ::testing::TestWithParam<int> {
protected:
  static const std::vector<testing::CorpusEntry>& entries() {
    static const std::vector<testing::CorpusEntry> all = testing::corpus();
    return all;
  }
  const testing::CorpusEntry& entry() const { return entries()[static_cast<size_t>(GetParam())]; }
};

TEST_P(CorpusProperty, StructuralResiduals) {
  const testing::PropertyResiduals r = testing::property_residuals(entry().alg);
  EXPECT_LT(r.koszul, 1e-10);
  EXPECT_LT(r.torsion, 1e-8);
  EXPECT_LT(r.nomizu_skew, 1e-8);
  EXPECT_EQ(r.curvature_antisymmetry, 0.0);
  EXPECT_LT(r.curvature_skew, 1e-8);
  EXPECT_LT(r.pair_symmetry, 1e-8);
  EXPECT_LT(r.bianchi, 1e-8);
  EXPECT_LT(r.ambrose_singer, 1e-8);
  EXPECT_LT(r.bounded_closure, 1e-8);
  EXPECT_LT(r.osc2_in_bounded, 1e-8);
  EXPECT_LT(r.osc1_planes, 1e-8);
}

TEST_P(CorpusProperty, SameResidualsInSkewedBasis) {
  std::mt19937_64 rng(100 + static_cast<std::uint64_t>(GetParam()));
  const int n = entry().alg.dim();
  const MatrixXd p = MatrixXd::Identity(n, n) + 0.2 * testing::random_matrix(n, n, rng);
  EXPECT_LT(testing::property_residuals(entry().alg.change_basis(p)).worst(), 1e-8);
}

// Strongly skewed bases may be refused, but never answered wrongly.
TEST_P(CorpusProperty, HarshBasisIsCorrectOrFlagged) {
  std::mt19937_64 rng(200 + static_cast<std::uint64_t>(GetParam()));
  const int n = entry().alg.dim();
  const MatrixXd p = testing::random_matrix(n, n, rng) + 3.0 * MatrixXd::Identity(n, n);
  try {
    EXPECT_LT(testing::property_residuals(entry().alg.change_basis(p)).worst(), 1e-8);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditioned) << e.what();
  }
}

TEST_P(CorpusProperty, OracleAgreement) { EXPECT_LT(testing::curvature_oracle_gap(entry().alg), 1e-9); }

TEST_P(CorpusProperty, NullityKillsJacobiOperators) {
  const MetricLieAlgebra& alg = entry().alg;
  const CurvatureTensor ct = curvature_table(alg, nomizu_table(alg));
  const Subspace nu = nullity_space(ct);
  for (Eigen::Index k = 0; k < nu.dim(); ++k) {
    const MatrixXd j = jacobi_operator(ct, nu.basis().col(k));
    EXPECT_LT(j.cwiseAbs().maxCoeff(), 1e-8);
    for (int i = 0; i < alg.dim(); ++i)
      EXPECT_LT((jacobi_operator(ct, VectorXd::Unit(alg.dim(), i)) * nu.basis().col(k)).norm(), 1e-8);
  }
}

TEST_P(CorpusProperty, CurvatureIgnoresBracketSign) {
  // c -> -c is the anti-isomorphism g -> g^op; the geometry is the same.
  const MetricLieAlgebra& alg = entry().alg;
  const int n = alg.dim();
  std::vector<MetricLieAlgebra::UpperBracket> flipped;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (alg.bracket(i, j).norm() > 0.0) flipped.push_back({i, j, -alg.bracket(i, j)});
  const MetricLieAlgebra op = MetricLieAlgebra::from_upper(alg.labels(), flipped, alg.metric());
  const CurvatureTensor a = curvature_table(alg, nomizu_table(alg));
  const CurvatureTensor b = curvature_table(op, nomizu_table(op));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) EXPECT_LT((a.op(i, j) - b.op(i, j)).cwiseAbs().maxCoeff(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(All, CorpusProperty, ::testing::Range(0, 14), [](const auto& info) {
  return testing::corpus()[static_cast<size_t>(info.param)].name;
});

TEST(ExampleProperty, BuildExampleValidatesExactly) {
  for (int d = 3; d <= 12; ++d) {
    const ValidationReport v = validate(build_example(ExampleSpec::paper_default(d)));
    EXPECT_TRUE(v.valid()) << d;
  }
}

TEST(ExampleProperty, CorpusHasFourteenEntries) { EXPECT_EQ(testing::corpus().size(), 14u); }

}  // namespace
}  // namespace nullitylab
