#include "nullitylab/connection.hpp"

#include <algorithm>

namespace nullitylab {

ConnectionTable::ConnectionTable(std::vector<MatrixXd> ops, MatrixXd metric)
    : ops_(std::move(ops)), metric_(std::move(metric)) {
  for (const auto& m : ops_) {
    if (m.rows() != metric_.rows() || m.cols() != metric_.rows())
      throw Error(ErrorCode::DimensionMismatch, "Nomizu operator has wrong shape");
    scale_ = std::max(scale_, m.norm());
  }
}

MatrixXd ConnectionTable::op(const VectorXd& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "coefficient vector has wrong length");
  MatrixXd m = MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (x(i) != 0.0) m += x(i) * ops_[static_cast<size_t>(i)];
  return m;
}

ConnectionTable nomizu_table(const MetricLieAlgebra& alg, const Tolerances& tol) {
  const int n = alg.dim();
  const MatrixXd& g = alg.metric();
  cholesky_lower(g, tol.pd);  // SingularMetric unless positive definite
  const Eigen::LLT<MatrixXd> llt(0.5 * (g + g.transpose()));

  // Lowered brackets: gc[j*n+k] = g [X_j, X_k], so <[X_j,X_k], X_i> = gc(i).
  std::vector<VectorXd> gc(static_cast<size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) gc[static_cast<size_t>(j * n + k)] = g * alg.bracket(j, k);
  auto low = [&](int a, int b) -> const VectorXd& { return gc[static_cast<size_t>(a * n + b)]; };

  std::vector<MatrixXd> ops;
  ops.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // w(k, j) = <nabla_{X_j} X_i, X_k>
    MatrixXd w(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) w(k, j) = 0.5 * (low(j, i)(k) + low(j, k)(i) + low(i, k)(j));
    ops.push_back(llt.solve(w));
  }
  return ConnectionTable(std::move(ops), g);
}

VectorXd covariant_derivative(const ConnectionTable& table, const VectorXd& v, int i) {
  if (v.size() != table.dim()) throw Error(ErrorCode::DimensionMismatch, "direction has wrong length");
  if (i < 0 || i >= table.dim()) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  return table.op(i) * v;
}

}  // namespace nullitylab
