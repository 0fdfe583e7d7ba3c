#include "support.hpp"

#include <algorithm>
#include <cmath>

#include "nullitylab/holonomy.hpp"
#include "nullitylab/nullity.hpp"

namespace nullitylab::testing {

namespace {

VectorXd unit3(int k) { return VectorXd::Unit(3, k); }

}  // namespace

MetricLieAlgebra abelian(int n) {
  std::vector<std::string> labels;
  for (int k = 1; k <= n; ++k) labels.push_back("X" + std::to_string(k));
  return MetricLieAlgebra::from_upper(labels, {});
}

MetricLieAlgebra heisenberg3() { return MetricLieAlgebra::from_upper({"X1", "X2", "X3"}, {{0, 1, unit3(2)}}); }

MetricLieAlgebra so3() {
  return MetricLieAlgebra::from_upper({"X1", "X2", "X3"}, {{0, 1, unit3(2)}, {1, 2, unit3(0)}, {0, 2, -unit3(1)}});
}

MetricLieAlgebra r_plus_so3() {
  auto e = [](int k) { return VectorXd::Unit(4, k); };
  MatrixXd g = MatrixXd::Identity(4, 4);
  g(0, 0) = 2.0;
  g.bottomRightCorner(3, 3) *= 0.5;
  return MetricLieAlgebra::from_upper({"T", "X1", "X2", "X3"}, {{1, 2, e(3)}, {2, 3, e(1)}, {1, 3, -e(2)}}, g);
}

MetricLieAlgebra milnor(double l1, double l2, double l3) {
  return MetricLieAlgebra::from_upper({"e1", "e2", "e3"},
                                      {{1, 2, l1 * unit3(0)}, {0, 2, -l2 * unit3(1)}, {0, 1, l3 * unit3(2)}});
}

MetricLieAlgebra custom_sample() {
  MatrixXd a(3, 3);
  a << 0.0, 1.0, 0.0,
      -1.0, 0.0, 0.0,
       0.0, 0.0, 0.5;
  return build_example(ExampleSpec::custom(a));
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (int d = 3; d <= 12; ++d)
    out.push_back({"example_d" + std::to_string(d), build_example(ExampleSpec::paper_default(d))});
  out.push_back({"abelian4", abelian(4)});
  out.push_back({"heisenberg3", heisenberg3()});
  out.push_back({"so3", so3()});
  out.push_back({"custom4", custom_sample()});
  return out;
}

std::vector<MatrixXd> left_invariant_curvature(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  const MatrixXd& g = alg.metric();
  const MatrixXd ginv = g.inverse();
  auto br = [&](int i, int j) -> VectorXd { return alg.bracket(i, j); };

  // nabla[i] : e_j -> nabla_{e_i} e_j
  std::vector<MatrixXd> nabla(static_cast<size_t>(n), MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      VectorXd low(n);
      for (int k = 0; k < n; ++k) {
        const VectorXd ek = VectorXd::Unit(n, k);
        const VectorXd ei = VectorXd::Unit(n, i);
        const VectorXd ej = VectorXd::Unit(n, j);
        low(k) = 0.5 * (br(i, j).dot(g * ek) - alg.bracket(ej, ek).dot(g * ei) + alg.bracket(ek, ei).dot(g * ej));
      }
      nabla[static_cast<size_t>(i)].col(j) = ginv * low;
    }
  auto nabla_of = [&](const VectorXd& x) {
    MatrixXd m = MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) m += x(k) * nabla[static_cast<size_t>(k)];
    return m;
  };

  std::vector<MatrixXd> r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const MatrixXd& a = nabla[static_cast<size_t>(i)];
      const MatrixXd& b = nabla[static_cast<size_t>(j)];
      r.push_back(a * b - b * a - nabla_of(br(i, j)));
    }
  return r;
}

double curvature_oracle_gap(const MetricLieAlgebra& alg) {
  const CurvatureTensor ct = curvature_table(alg, nomizu_table(alg));
  const std::vector<MatrixXd> ref = left_invariant_curvature(alg);
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, (ct.op(i, j) - ref[static_cast<size_t>(i * n + j)]).cwiseAbs().maxCoeff());
  return worst;
}

double PropertyResiduals::worst() const {
  return std::max({koszul, torsion, nomizu_skew, curvature_antisymmetry, curvature_skew, pair_symmetry, bianchi,
                   ambrose_singer, bounded_closure, osc2_in_bounded, osc1_planes});
}

PropertyResiduals property_residuals(const MetricLieAlgebra& alg, std::uint64_t seed) {
  PropertyResiduals r;
  const int n = alg.dim();
  const MatrixXd& g = alg.metric();
  const ConnectionTable t = nomizu_table(alg);
  const CurvatureTensor ct = curvature_table(alg, t);
  auto bump = [](double& slot, double v) { slot = std::max(slot, v); };
  auto e = [n](int k) { return VectorXd::Unit(n, k); };

  for (int i = 0; i < n; ++i) {
    bump(r.nomizu_skew, (t.op(i).transpose() * g + g * t.op(i)).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j) {
      // nabla_{X_j} X_i - nabla_{X_i} X_j = [X_j, X_i]
      bump(r.torsion, (t.op(i).col(j) - t.op(j).col(i) - alg.bracket(j, i)).cwiseAbs().maxCoeff());
      bump(r.curvature_antisymmetry, (ct.op(i, j) + ct.op(j, i)).cwiseAbs().maxCoeff());
      bump(r.curvature_skew, (ct.op(i, j).transpose() * g + g * ct.op(i, j)).cwiseAbs().maxCoeff());
      for (int k = 0; k < n; ++k) {
        // 2 <nabla_{X_i} X_j, X_k> = <[X_i,X_j],X_k> + <[X_i,X_k],X_j> + <[X_j,X_k],X_i>
        const double lhs = 2.0 * (t.op(j) * e(i)).dot(g * e(k));
        const double rhs =
            alg.bracket(i, j).dot(g * e(k)) + alg.bracket(i, k).dot(g * e(j)) + alg.bracket(j, k).dot(g * e(i));
        bump(r.koszul, std::abs(lhs - rhs));
        bump(r.bianchi, (ct.op(i, j).col(k) + ct.op(j, k).col(i) + ct.op(k, i).col(j)).cwiseAbs().maxCoeff());
        for (int l = 0; l < n; ++l)
          bump(r.pair_symmetry, std::abs(ct.value(e(i), e(j), e(k), e(l)) - ct.value(e(k), e(l), e(i), e(j))));
      }
    }
  }

  const HolonomyAlgebra hol = kostant_span(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bump(r.ambrose_singer, hol.projection_residual(ct.op(i, j)));

  const DistributionChain chain = distribution_chain(alg, t, ct);
  const BoundedAlgebra b = bounded_algebra(alg, t, chain.nullity);
  r.bounded_closure = b.closure_residual;
  const MatrixXd& q = chain.osc2.basis();
  if (q.cols() > 0) r.osc2_in_bounded = (q - b.distribution.projector() * q).cwiseAbs().maxCoeff();

  const MatrixXd& o = chain.osc1.basis();
  std::mt19937_64 rng(seed);
  auto plane = [&](const VectorXd& x, const VectorXd& y) {
    // Skip planes that degenerate at rounding level.
    const double area = x.dot(g * x) * y.dot(g * y) - std::pow(x.dot(g * y), 2);
    if (area > 1e-6) bump(r.osc1_planes, std::abs(sectional(ct, x, y)));
  };
  for (Eigen::Index i = 0; i < o.cols(); ++i)
    for (Eigen::Index j = i + 1; j < o.cols(); ++j) plane(o.col(i), o.col(j));
  if (o.cols() >= 2)
    for (int k = 0; k < 5; ++k) {
      const MatrixXd c = o * random_matrix(static_cast<int>(o.cols()), 2, rng);
      plane(c.col(0), c.col(1));
    }
  return r;
}

MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

MatrixXd random_isometry(const MatrixXd& g, std::mt19937_64& rng) {
  const auto n = static_cast<int>(g.rows());
  const Eigen::HouseholderQR<MatrixXd> qr(random_matrix(n, n, rng));
  const MatrixXd q = qr.householderQ();
  const MatrixXd f = orthonormal_frame(g);
  return f * q * f.inverse();
}

}  // namespace nullitylab::testing
