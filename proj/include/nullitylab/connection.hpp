#pragma once

#include <vector>

#include "nullitylab/algebra.hpp"

namespace nullitylab {

/// Nomizu operators (v -> nabla_v X_i) of the basis Killing fields at the base
/// point. Column j of op(i) is nabla_{e_j} X_i.
class ConnectionTable {
public:
  ConnectionTable() = default;
  ConnectionTable(std::vector<MatrixXd> ops, MatrixXd metric);

  int dim() const { return static_cast<int>(ops_.size()); }
  const MatrixXd& op(int i) const { return ops_[static_cast<size_t>(i)]; }
  const std::vector<MatrixXd>& ops() const { return ops_; }
  const MatrixXd& metric() const { return metric_; }

  /// Nomizu operator of the Killing field with coefficients `x`.
  MatrixXd op(const VectorXd& x) const;

  /// Largest Frobenius norm among the basis operators.
  double scale() const { return scale_; }

private:
  std::vector<MatrixXd> ops_;
  MatrixXd metric_;
  double scale_ = 0.0;
};

/// Koszul formula for Killing fields:
///   2<nabla_X Y, Z> = <[X,Y],Z> + <[X,Z],Y> + <[Y,Z],X>.
ConnectionTable nomizu_table(const MetricLieAlgebra& alg, const Tolerances& tol = {});

/// nabla_v X_i at the base point.
VectorXd covariant_derivative(const ConnectionTable& table, const VectorXd& v, int i);

}  // namespace nullitylab
