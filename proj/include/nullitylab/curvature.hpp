#pragma once

#include <vector>

#include "nullitylab/connection.hpp"

namespace nullitylab {

/// Curvature operators R_{e_i, e_j} at the base point.
class CurvatureTensor {
public:
  CurvatureTensor() = default;
  /// `reference_scale` is the size curvature would have for this input if it
  /// were not cancelled; rank decisions use it as a floor.
  CurvatureTensor(std::vector<MatrixXd> ops, MatrixXd metric, double reference_scale = 0.0);

  int dim() const { return static_cast<int>(metric_.rows()); }
  const MatrixXd& metric() const { return metric_; }
  const MatrixXd& op(int i, int j) const { return ops_[static_cast<size_t>(i * dim() + j)]; }
  /// R_{x,y} for arbitrary tangent vectors.
  MatrixXd op(const VectorXd& x, const VectorXd& y) const;
  /// <R_{x,y} z, w>.
  double value(const VectorXd& x, const VectorXd& y, const VectorXd& z, const VectorXd& w) const;

  /// Largest Frobenius norm among the basis operators.
  double scale() const { return scale_; }
  double reference_scale() const { return reference_scale_; }

  /// Ricci form Ric(x, y) = trace(v -> R_{v,x} y), computed once.
  const MatrixXd& ricci_form() const { return ricci_; }

private:
  std::vector<MatrixXd> ops_;
  MatrixXd metric_;
  MatrixXd ricci_;
  double scale_ = 0.0;
  double reference_scale_ = 0.0;
};

/// R_{X_p, Y_p} = (nabla [X, Y])_p + [(nabla X)_p, (nabla Y)_p] on basis fields.
CurvatureTensor curvature_table(const MetricLieAlgebra& alg, const ConnectionTable& table);

struct RicciData {
  MatrixXd matrix;        ///< Ric(e_i, e_j) in the input basis
  VectorXd eigenvalues;   ///< of the g-self-adjoint Ricci operator, ascending
  double scalar = 0.0;
};

/// Ric(x, x) = sum_k <R_{e_k, x} x, e_k> over a g-orthonormal frame.
RicciData ricci(const CurvatureTensor& ct);

/// K(x, y) = <R_{x,y} y, x> / (|x|^2 |y|^2 - <x,y>^2). Throws DegeneratePlane
/// when the Gram determinant is at most tol * |x|^2 |y|^2.
double sectional(const CurvatureTensor& ct, const VectorXd& x, const VectorXd& y, double tol = 1e-8);

/// Matrix of x -> R_{x, v} v.
MatrixXd jacobi_operator(const CurvatureTensor& ct, const VectorXd& v);

}  // namespace nullitylab
