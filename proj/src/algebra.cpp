#include "nullitylab/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace nullitylab {

MetricLieAlgebra::MetricLieAlgebra(std::vector<std::string> labels, std::vector<VectorXd> table,
                                   MatrixXd metric)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      table_(std::move(table)),
      metric_(std::move(metric)) {
  const auto n = static_cast<size_t>(n_);
  if (n_ == 0) throw Error(ErrorCode::DimensionMismatch, "algebra must have positive dimension");
  if (table_.size() != n * n)
    throw Error(ErrorCode::DimensionMismatch, "bracket table must have n*n entries");
  for (const auto& v : table_)
    if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "bracket coefficient vector has wrong length");
  if (metric_.rows() != n_ || metric_.cols() != n_)
    throw Error(ErrorCode::DimensionMismatch, "metric must be n x n");

  ad_.assign(n, MatrixXd::Zero(n_, n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      ad_[static_cast<size_t>(i)].col(j) = bracket(i, j);
      scale_ = std::max(scale_, bracket(i, j).cwiseAbs().maxCoeff());
    }
}

MetricLieAlgebra MetricLieAlgebra::from_upper(std::vector<std::string> labels,
                                              const std::vector<UpperBracket>& brackets,
                                              std::optional<MatrixXd> metric) {
  const int n = static_cast<int>(labels.size());
  std::vector<VectorXd> table(static_cast<size_t>(n * n), VectorXd::Zero(n));
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= n || b.j >= n || b.i >= b.j)
      throw Error(ErrorCode::DimensionMismatch, "bracket indices must satisfy 0 <= i < j < n");
    if (b.coeffs.size() != n) throw Error(ErrorCode::DimensionMismatch, "bracket coefficient vector has wrong length");
    table[static_cast<size_t>(b.i * n + b.j)] = b.coeffs;
    table[static_cast<size_t>(b.j * n + b.i)] = -b.coeffs;
  }
  return MetricLieAlgebra(std::move(labels), std::move(table),
                          metric.value_or(MatrixXd::Identity(n, n)));
}

VectorXd MetricLieAlgebra::bracket(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != n_ || y.size() != n_) throw Error(ErrorCode::DimensionMismatch, "bracket operands have wrong length");
  return ad(x) * y;
}

MatrixXd MetricLieAlgebra::ad(const VectorXd& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector has wrong length");
  MatrixXd m = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    if (x(i) != 0.0) m += x(i) * ad_[static_cast<size_t>(i)];
  return m;
}

MetricLieAlgebra MetricLieAlgebra::change_basis(const MatrixXd& p) const {
  if (p.rows() != n_ || p.cols() != n_) throw Error(ErrorCode::DimensionMismatch, "basis change must be n x n");
  Eigen::PartialPivLU<MatrixXd> lu(p);
  std::vector<VectorXd> table(static_cast<size_t>(n_ * n_), VectorXd::Zero(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      table[static_cast<size_t>(a * n_ + b)] = lu.solve(bracket(VectorXd(p.col(a)), VectorXd(p.col(b))));
      table[static_cast<size_t>(b * n_ + a)] = -table[static_cast<size_t>(a * n_ + b)];
    }
  const MatrixXd g = p.transpose() * metric_ * p;
  return MetricLieAlgebra(labels_, std::move(table), 0.5 * (g + g.transpose()));
}

// ---------------------------------------------------------------------------

ValidationReport validate(const MetricLieAlgebra& alg, const Tolerances& tol) {
  ValidationReport report;
  const int n = alg.dim();

  double antisym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      antisym = std::max(antisym, (alg.bracket(i, j) + alg.bracket(j, i)).cwiseAbs().maxCoeff());
  if (antisym > 0.0) report.violations.push_back({"antisymmetry", antisym});

  double jacobi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj]
        const VectorXd sum = alg.ad(alg.bracket(i, j)).col(k) + alg.ad(alg.bracket(j, k)).col(i) +
                             alg.ad(alg.bracket(k, i)).col(j);
        jacobi = std::max(jacobi, sum.cwiseAbs().maxCoeff());
      }
  const double s = alg.bracket_scale();
  if (jacobi > tol.alg * std::max(1.0, s * s)) report.violations.push_back({"jacobi", jacobi});

  const MatrixXd& g = alg.metric();
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.alg * std::max(1.0, g.cwiseAbs().maxCoeff()))
    report.violations.push_back({"metric_symmetry", asym});

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > tol.pd * std::max(1.0, lmax)))
    report.violations.push_back({"metric_positive_definite", lmin});
  return report;
}

// ---------------------------------------------------------------------------

namespace {

MatrixXd bracket_span(const MetricLieAlgebra& alg, const MatrixXd& left, const MatrixXd& right,
                      const Tolerances& tol, const char* what) {
  const int n = alg.dim();
  MatrixXd cols(n, left.cols() * right.cols());
  Eigen::Index c = 0;
  for (Eigen::Index a = 0; a < left.cols(); ++a) {
    const MatrixXd ad = alg.ad(VectorXd(left.col(a)));
    for (Eigen::Index b = 0; b < right.cols(); ++b) cols.col(c++) = ad * right.col(b);
  }
  if (cols.cols() == 0) return MatrixXd(n, 0);
  const RankDecision d = decide_rank(cols, tol.alg, alg.bracket_scale());
  require_well_conditioned(d, what);
  return orth(cols, tol.alg, alg.bracket_scale(), false);
}

}  // namespace

Subspace center(const MetricLieAlgebra& alg, const Tolerances& tol) {
  const int n = alg.dim();
  MatrixXd stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.col(i) = vec(alg.ad(i));
  return Subspace::from_orthonormal(null_space(stacked, tol.alg, alg.bracket_scale()), tol.sub);
}

bool StructureReport::unimodular(double tol) const {
  return std::all_of(unimodular_defects.begin(), unimodular_defects.end(),
                     [tol](double t) { return std::abs(t) <= tol; });
}

StructureReport structure_predicates(const MetricLieAlgebra& alg, const Tolerances& tol) {
  const int n = alg.dim();
  StructureReport r;
  const MatrixXd id = MatrixXd::Identity(n, n);

  // Derived series g, [g,g], [[g,g],[g,g]], ...
  MatrixXd d = id;
  MatrixXd first_derived;
  r.derived_series_dims.push_back(n);
  for (int step = 0; step <= n; ++step) {
    MatrixXd next = bracket_span(alg, d, d, tol, "derived series");
    if (step == 0) first_derived = next;
    r.derived_series_dims.push_back(static_cast<int>(next.cols()));
    const bool stable = next.cols() == d.cols();
    d = next;
    if (stable || d.cols() == 0) break;
  }
  r.solvable = r.derived_series_dims.back() == 0;

  // Lower central series g, [g,g], [g,[g,g]], ...
  MatrixXd l = id;
  r.lower_central_dims.push_back(n);
  for (int step = 0; step <= n; ++step) {
    MatrixXd next = bracket_span(alg, id, l, tol, "lower central series");
    r.lower_central_dims.push_back(static_cast<int>(next.cols()));
    const bool stable = next.cols() == l.cols();
    l = next;
    if (l.cols() == 0) {
      r.nilpotent_step = static_cast<int>(r.lower_central_dims.size()) - 1;
      break;
    }
    if (stable) break;
  }

  r.killing_form = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.killing_form(i, j) = (alg.ad(i) * alg.ad(j)).trace();

  for (int i = 0; i < n; ++i) r.unimodular_defects.push_back(alg.ad(i).trace());

  const Subspace z = center(alg, tol);
  r.center_dim = static_cast<int>(z.dim());

  // Cartan's criterion: the radical is the Killing-orthogonal complement of [g,g].
  const double bscale = alg.bracket_scale() * alg.bracket_scale() * n;
  if (first_derived.cols() == 0) {
    r.radical_dim = n;
  } else {
    const MatrixXd constraint = first_derived.transpose() * r.killing_form;
    const RankDecision rd = decide_rank(constraint, tol.alg, bscale);
    require_well_conditioned(rd, "radical");
    r.radical_dim = n - rd.rank;
  }
  r.reductive = r.radical_dim == r.center_dim;
  return r;
}

}  // namespace nullitylab
