#include "nullitylab/nullity.hpp"

#include <algorithm>

namespace nullitylab {

Subspace nullity_space(const CurvatureTensor& ct, const Tolerances& tol) {
  const int n = ct.dim();
  // column i: (R_{e_i, e_j})_j stacked
  MatrixXd stacked(static_cast<Eigen::Index>(n) * n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      stacked.block(static_cast<Eigen::Index>(j) * n * n, i, n * n, 1) = vec(ct.op(i, j));
  return Subspace::from_orthonormal(null_space(stacked, tol.alg, ct.reference_scale()), tol.sub);
}

namespace {

// span { nabla_v Z : v in basis of `from`, Z a basis field }
MatrixXd derivatives_along(const ConnectionTable& table, const Subspace& from) {
  const int n = table.dim();
  MatrixXd cols(n, n * from.dim());
  Eigen::Index c = 0;
  for (Eigen::Index k = 0; k < from.dim(); ++k)
    for (int z = 0; z < n; ++z) cols.col(c++) = table.op(z) * from.basis().col(k);
  return cols;
}

Subspace add_derivatives(const ConnectionTable& table, const Subspace& base, const Subspace& along,
                         const Tolerances& tol) {
  const MatrixXd d = derivatives_along(table, along);
  MatrixXd cols(base.ambient_dim(), base.dim() + d.cols());
  cols << base.basis(), d;
  return Subspace::span(cols, tol.sub, std::max(1.0, table.scale()));
}

}  // namespace

OsculatingSpaces adapted_and_osculating(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                        const Subspace& nullity, const Tolerances& tol) {
  const int n = alg.dim();
  if (nullity.ambient_dim() != n) throw Error(ErrorCode::DimensionMismatch, "nullity lives in another space");
  OsculatingSpaces out;
  out.adapted = nullity.is_zero() ? Subspace::zero(n, tol.sub)
                                  : Subspace::span(derivatives_along(table, nullity), tol.sub, table.scale());
  out.osc1 = nullity + out.adapted;
  out.osc2 = add_derivatives(table, out.osc1, out.adapted, tol);
  return out;
}

BoundedAlgebra bounded_algebra(const MetricLieAlgebra& alg, const ConnectionTable& table,
                               const Subspace& nullity, const Tolerances& tol) {
  const int n = alg.dim();
  BoundedAlgebra out;
  if (nullity.is_zero() || nullity.is_full()) {
    out.algebra_basis = MatrixXd::Identity(n, n);
  } else {
    // (I - P_nu) Gamma_U w = 0 for every basis vector w of nu, linear in U.
    const MatrixXd perp = MatrixXd::Identity(n, n) - nullity.projector();
    const Eigen::Index m = nullity.dim();
    MatrixXd system(n * m, n);
    for (int i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < m; ++k)
        system.block(k * n, i, n, 1) = perp * table.op(i) * nullity.basis().col(k);
    out.algebra_basis = null_space(system, tol.alg, table.scale());
  }

  // Closure under the bracket.
  const MatrixXd& b = out.algebra_basis;
  const MatrixXd proj = b * b.transpose();
  for (Eigen::Index p = 0; p < b.cols(); ++p)
    for (Eigen::Index q = p + 1; q < b.cols(); ++q) {
      const VectorXd br = alg.bracket(VectorXd(b.col(p)), VectorXd(b.col(q)));
      out.closure_residual = std::max(out.closure_residual, (br - proj * br).norm());
    }
  if (out.closure_residual > 10.0 * tol.alg * std::max(1.0, alg.bracket_scale()))
    throw Error(ErrorCode::SubalgebraClosureViolation,
                "bounded algebra not closed under the bracket (residual " +
                    std::to_string(out.closure_residual) + ")");

  out.distribution = b.cols() ? Subspace::span(b, tol.sub, 1.0) : Subspace::zero(n, tol.sub);
  return out;
}

std::vector<Subspace> osculating_tower(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                       const Subspace& seed, int max_steps, const Tolerances& tol) {
  if (seed.ambient_dim() != alg.dim()) throw Error(ErrorCode::DimensionMismatch, "seed lives in another space");
  std::vector<Subspace> tower{seed};
  for (int step = 0; step < max_steps; ++step) {
    Subspace next = add_derivatives(table, tower.back(), tower.back(), tol);
    if (next.dim() <= tower.back().dim()) break;
    tower.push_back(std::move(next));
  }
  return tower;
}

DistributionChain distribution_chain(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                     const CurvatureTensor& ct, const Tolerances& tol) {
  DistributionChain c;
  c.nullity = nullity_space(ct, tol);
  OsculatingSpaces o = adapted_and_osculating(alg, table, c.nullity, tol);
  c.adapted = std::move(o.adapted);
  c.osc1 = std::move(o.osc1);
  c.osc2 = std::move(o.osc2);
  BoundedAlgebra b = bounded_algebra(alg, table, c.nullity, tol);
  c.bounded = std::move(b.distribution);
  c.bounded_algebra_basis = std::move(b.algebra_basis);
  c.conullity = alg.dim() - static_cast<int>(c.nullity.dim());
  return c;
}

ChainVerdict chain_report(const DistributionChain& chain, bool flat_factor_detected) {
  ChainVerdict v;
  v.n = static_cast<int>(chain.nullity.ambient_dim());
  v.dim_nullity = static_cast<int>(chain.nullity.dim());
  v.dim_adapted = static_cast<int>(chain.adapted.dim());
  v.dim_osc1 = static_cast<int>(chain.osc1.dim());
  v.dim_osc2 = static_cast<int>(chain.osc2.dim());
  v.dim_bounded = static_cast<int>(chain.bounded.dim());
  v.conullity = chain.conullity;

  v.nullity_in_osc1 = chain.osc1.contains(chain.nullity);
  v.osc1_in_osc2 = chain.osc2.contains(chain.osc1);
  v.osc2_in_bounded = chain.bounded.contains(chain.osc2);
  v.nullity_nonzero = v.dim_nullity > 0;
  v.nullity_strict_in_osc1 = v.nullity_in_osc1 && v.dim_osc1 > v.dim_nullity;
  v.osc1_strict_in_osc2 = v.osc1_in_osc2 && v.dim_osc2 > v.dim_osc1;
  v.bounded_strict_in_tm = v.dim_bounded < v.n;
  v.osc2_equals_bounded = v.osc2_in_bounded && v.dim_osc2 == v.dim_bounded;

  v.flat = v.dim_nullity == v.n;
  v.trivial_nullity = !v.nullity_nonzero || v.flat || flat_factor_detected;
  v.chain_holds = v.nullity_nonzero && v.nullity_strict_in_osc1 && v.osc1_strict_in_osc2 &&
                  v.osc2_in_bounded && v.bounded_strict_in_tm;

  v.conullity_three = v.conullity == 3;
  v.codim_osc1_is_two = v.n - v.dim_osc1 == 2;
  v.codim_bounded_is_one = v.n - v.dim_bounded == 1;

  if (v.flat)
    v.status = "trivial nullity / flat";
  else if (v.trivial_nullity)
    v.status = "trivial nullity";
  else
    v.status = "non-trivial nullity";
  return v;
}

}  // namespace nullitylab
