#include <gtest/gtest.h>

#include "nullitylab/symmetry.hpp"
#include "support.hpp"

namespace nullitylab {
namespace {

struct Pipeline {
  MetricLieAlgebra alg;
  ConnectionTable table;
  CurvatureTensor ct;
  DistributionChain chain;
};

Pipeline setup(const MetricLieAlgebra& alg) {
  Pipeline s{alg, nomizu_table(alg), {}, {}};
  s.ct = curvature_table(s.alg, s.table);
  s.chain = distribution_chain(s.alg, s.table, s.ct);
  return s;
}

Subspace first_coordinates(int n, int count) { return Subspace::span(MatrixXd::Identity(n, n).leftCols(count)); }

TEST(Transvections, ExampleFamilyIndex) {
  for (int d = 3; d <= 12; ++d) {
    const int n = d + 1;
    const Pipeline s = setup(build_example(ExampleSpec::paper_default(d)));
    const TransvectionSet t = transvection_set(s.alg, s.table, s.ct);
    EXPECT_EQ(t.index_of_symmetry, n - 2) << d;
    EXPECT_EQ(t.co_index, 2) << d;
    EXPECT_TRUE(t.relative);
    EXPECT_TRUE(Subspace::span(t.cartan_basis).equals(first_coordinates(n, d - 1))) << d;
    for (Eigen::Index k = 0; k < t.cartan_basis.cols(); ++k)
      EXPECT_LE(s.table.op(VectorXd(t.cartan_basis.col(k))).norm(), 1e-8);
    // Translations commute.
    for (Eigen::Index a = 0; a < t.cartan_basis.cols(); ++a)
      for (Eigen::Index b = 0; b < t.cartan_basis.cols(); ++b)
        EXPECT_LT(s.alg.bracket(VectorXd(t.cartan_basis.col(a)), VectorXd(t.cartan_basis.col(b))).norm(), 1e-12);
    // a_0 within p_0 within p, and the adapted distribution inside s^0.
    const Subspace p = Subspace::span(t.cartan_basis);
    const Subspace p0 = Subspace::span(t.abelian_part_basis);
    EXPECT_TRUE(p.contains(p0));
    EXPECT_TRUE(p0.contains(Subspace::span(t.null_jacobi_basis)));
    EXPECT_TRUE(t.flat_symmetry.contains(s.chain.adapted)) << d;
  }
}

TEST(Transvections, ExampleD4AllPartsAgree) {
  const Pipeline s = setup(build_example(ExampleSpec::paper_default(4)));
  const TransvectionSet t = transvection_set(s.alg, s.table, s.ct);
  const Subspace e123 = first_coordinates(5, 3);
  EXPECT_TRUE(Subspace::span(t.cartan_basis).equals(e123));
  EXPECT_TRUE(Subspace::span(t.abelian_part_basis).equals(e123));
  EXPECT_TRUE(Subspace::span(t.null_jacobi_basis).equals(e123));
  // Oracle: every E_i (i < d) has a vanishing Jacobi operator.
  for (int i = 0; i < 3; ++i) EXPECT_LT(jacobi_operator(s.ct, VectorXd::Unit(5, i)).norm(), 1e-12);
}

TEST(Transvections, AbelianIndexIsFull) {
  const Pipeline s = setup(testing::abelian(4));
  const TransvectionSet t = transvection_set(s.alg, s.table, s.ct);
  EXPECT_EQ(t.index_of_symmetry, 4);
  EXPECT_EQ(t.co_index, 0);
  EXPECT_EQ(t.abelian_part_basis.cols(), 4);
}

TEST(Transvections, NullJacobiLiesInAbelianPartOverCorpus) {
  for (const auto& [name, alg] : testing::corpus()) {
    const Pipeline s = setup(alg);
    const TransvectionSet t = transvection_set(s.alg, s.table, s.ct);
    EXPECT_EQ(t.index_of_symmetry + t.co_index, alg.dim());
    if (t.null_jacobi_basis.cols() == 0) continue;
    EXPECT_TRUE(Subspace::span(t.abelian_part_basis).contains(Subspace::span(t.null_jacobi_basis))) << name;
  }
}

TEST(Witness, ExampleD5Direction) {
  const int d = 5, n = d + 1;
  const ExampleSpec spec = ExampleSpec::paper_default(d);
  const Pipeline s = setup(build_example(spec));
  const AdaptedWitness w = adapted_transvection_witness(s.alg, s.table, s.ct, s.chain);
  VectorXd direction = VectorXd::Zero(n);
  direction << 1, 0, -1, -1, 0, 0;
  EXPECT_LT(Subspace::span(w.y).max_principal_angle(Subspace::span(direction)), 1e-10);
  EXPECT_TRUE(w.certificate.passed());
  EXPECT_TRUE(s.chain.adapted.contains(w.y));
  EXPECT_FALSE(s.chain.nullity.contains(w.y));
}

TEST(Witness, ScaleMatchesActionDerivative) {
  for (int d = 4; d <= 12; ++d) {
    const int n = d + 1;
    const ExampleSpec spec = ExampleSpec::paper_default(d);
    const Pipeline s = setup(build_example(spec));
    const AdaptedWitness w = adapted_transvection_witness(s.alg, s.table, s.ct, s.chain);
    const VectorXd expected = -(1.0 / spec.a) * covariant_derivative(s.table, VectorXd::Unit(n, 1), d);
    EXPECT_LT((w.y - expected).norm(), 1e-10) << d;
  }
}

TEST(Witness, D3IsAlongE1) {
  const Pipeline s = setup(build_example(ExampleSpec::paper_default(3)));
  const AdaptedWitness w = adapted_transvection_witness(s.alg, s.table, s.ct, s.chain);
  EXPECT_LT(Subspace::span(w.y).max_principal_angle(Subspace::span(VectorXd::Unit(4, 0))), 1e-10);
  EXPECT_TRUE(w.certificate.passed());
}

TEST(Witness, CertificateClausesOverFamily) {
  for (int d = 3; d <= 12; ++d) {
    const Pipeline s = setup(build_example(ExampleSpec::paper_default(d)));
    const WitnessCertificate c = adapted_transvection_witness(s.alg, s.table, s.ct, s.chain).certificate;
    EXPECT_TRUE(c.is_transvection()) << d;
    EXPECT_TRUE(c.null_jacobi()) << d;
    EXPECT_TRUE(c.ad_squared_zero()) << d;
    EXPECT_TRUE(c.ad_nonzero()) << d;
    EXPECT_GT(c.ad_norm, 10.0 * 1e-8);
  }
}

TEST(Witness, PreconditionGate) {
  const Pipeline s = setup(testing::abelian(3));
  try {
    adapted_transvection_witness(s.alg, s.table, s.ct, s.chain);
    FAIL() << "expected PreconditionFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
  }
}

TEST(Witness, NoWitnessForFlatFactor) {
  // R + so(3): the nullity is the R line and nothing leaves it.
  const Pipeline s = setup(testing::r_plus_so3());
  try {
    adapted_transvection_witness(s.alg, s.table, s.ct, s.chain);
    FAIL() << "expected NoWitness";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoWitness);
  }
}

}  // namespace
}  // namespace nullitylab
